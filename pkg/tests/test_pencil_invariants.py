"""Smith form, elementary divisors, minimal indices and congruence."""

import numpy as np
import pytest

from algebra.canonical_forms import (
    BlockSpec,
    CanonicalSpec,
    build_block,
    build_spec,
    direct_sum,
    invariants_of_spec,
    random_spec,
)
from algebra.errors import InvalidPencil, IrreducibleFactorTooLarge, PairingViolation, SizeIdentityViolation
from algebra.exact_arith import LAM, QQ_LAM, kernel_basis, poly_from_coeffs, rank, rat, rat_matrix
from algebra.pencil_invariants import (
    ElementaryDivisor,
    Pencil,
    PencilInvariants,
    _divisors_at,
    congruence_transform,
    divisor_display,
    finite_divisors,
    generic_rank,
    infinite_divisors,
    invariant_polynomials,
    invariants,
    is_regular,
    local_block_sizes,
    minimal_kernel_basis,
    mix_pencil,
    random_congruence,
    random_mix,
    smith_normal_form,
    strictly_congruent,
)


class TestPencil:
    def test_rejects_non_skew(self):
        with pytest.raises(InvalidPencil):
            Pencil.from_rows([[0, 1], [1, 0]], [[0, 0], [0, 0]])

    def test_rejects_shape_mismatch(self):
        with pytest.raises(InvalidPencil):
            Pencil.from_rows([[0, 1], [-1, 0]], [[0]])

    def test_rejects_empty(self):
        with pytest.raises(InvalidPencil):
            Pencil(rat_matrix([], 0), rat_matrix([], 0))

    def test_reversed_swaps_roles(self, ex34):
        assert ex34.reversed().A == ex34.B
        assert ex34.reversed().reversed() == ex34


class TestSmithForm:
    def test_ex34_diagonal(self, ex34):
        assert invariant_polynomials(ex34) == [QQ_LAM.one, QQ_LAM.one, LAM**2 + 1, LAM**2 + 1]

    def test_ex36_diagonal(self, ex36):
        diagonal = invariant_polynomials(ex36)
        assert diagonal[:4] == [QQ_LAM.one] * 4
        assert not diagonal[4]

    def test_transforms_reproduce_diagonal(self, ex34):
        m = ex34.poly_matrix()
        smith = smith_normal_form(m)
        product = (smith.U * m * smith.V).to_list()
        for i, row in enumerate(product):
            for j, x in enumerate(row):
                assert x == (smith.diagonal[i] if i == j else 0)

    def test_divisibility_chain(self):
        p = direct_sum([build_block(BlockSpec.finite(0, 2)), build_block(BlockSpec.finite(0, 1))])
        diagonal = [d for d in invariant_polynomials(p) if d.degree() > 0]
        for lower, upper in zip(diagonal, diagonal[1:]):
            assert not upper % lower

    def test_scrambled_pencil_matches_invariant_polynomials(self, ex34):
        q = random_congruence(ex34, 2)
        m = q.poly_matrix()
        smith = smith_normal_form(m)
        assert smith.diagonal == invariant_polynomials(q) == invariant_polynomials(ex34)
        product = (smith.U * m * smith.V).to_list()
        assert all(x == (smith.diagonal[i] if i == j else 0) for i, row in enumerate(product) for j, x in enumerate(row))

    def test_singular_diagonal(self):
        p = direct_sum([build_block(BlockSpec.minidx(1)), build_block(BlockSpec.finite("0", 2))])
        assert invariant_polynomials(p) == [QQ_LAM.one] * 4 + [LAM**2, LAM**2, QQ_LAM.zero]
        assert smith_normal_form(p.poly_matrix(), track=False).diagonal == invariant_polynomials(p)


class TestDivisors:
    def test_ex34_single_quadratic_pair(self, ex34):
        inv = invariants(ex34)
        assert inv.divisor_pairs == (ElementaryDivisor.quadratic([1, 0, 1], 1),)
        assert inv.divisor_pairs[0].pair_count == 2
        assert inv.minimal_indices == ()

    def test_ex36_minimal_index(self, ex36):
        inv = invariants(ex36)
        assert inv.divisor_pairs == ()
        assert inv.minimal_indices == (2,)

    @pytest.mark.parametrize("e", [1, 2, 3])
    def test_infinite_block(self, e):
        p = build_block(BlockSpec.inf(e))
        assert infinite_divisors(p) == [ElementaryDivisor.infinite(e)]
        assert finite_divisors(p) == []

    @pytest.mark.parametrize("alpha, f", [("0", 1), ("3/2", 2), ("-2", 3)])
    def test_finite_block(self, alpha, f):
        p = build_block(BlockSpec.finite(alpha, f))
        assert finite_divisors(p) == [ElementaryDivisor.finite(alpha, f)]
        assert infinite_divisors(p) == []

    def test_complex_block_modulus(self):
        p = build_block(BlockSpec.complex("1", "1", 2))
        # (lam - 1)^2 + 1 = lam^2 - 2 lam + 2
        assert finite_divisors(p) == [ElementaryDivisor.quadratic([2, -2, 1], 2)]

    def test_odd_multiplicity_is_rejected(self):
        with pytest.raises(PairingViolation):
            _divisors_at(LAM - 1, [1])

    def test_real_split(self, real_split):
        (d,) = invariants(real_split).divisor_pairs
        assert d.kind == "quad" and d.is_real_split
        assert d.modulus_poly == LAM**2 - 2


class TestMinimalIndices:
    def test_ex36_kernel_column(self, ex36):
        basis = minimal_kernel_basis(ex36)
        assert basis.degrees == [2]
        expected = [0, 0, LAM**2, -LAM, 1]
        assert basis.columns[0] == [poly_from_coeffs([]) + x for x in expected]

    def test_regular_pencil_has_empty_basis(self, ex34):
        assert is_regular(ex34)
        assert minimal_kernel_basis(ex34).columns == []

    def test_m0_summand(self):
        p = direct_sum([build_block(BlockSpec.minidx(1)), build_block(BlockSpec.minidx(0))])
        assert generic_rank(p) == 2
        assert invariants(p).minimal_indices == (0, 1)

    @pytest.mark.parametrize("eps", [1, 2, 3, 4])
    def test_minidx_block(self, eps):
        assert invariants(build_block(BlockSpec.minidx(eps))).minimal_indices == (eps,)


class TestSizeIdentity:
    def test_mismatch(self):
        inv = PencilInvariants.build(5, [ElementaryDivisor.infinite(1)], [])
        with pytest.raises(SizeIdentityViolation):
            inv.check_size()

    def test_quadratic_counts_twice(self):
        inv = PencilInvariants.build(4, [ElementaryDivisor.quadratic([1, 0, 1], 1)], [])
        assert inv.declared_size == 4


class TestCongruence:
    def test_seed_zero_is_identity(self, ex36):
        assert random_congruence(ex36, 0) == ex36

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_invariants_unchanged(self, ex34, ex36, seed):
        for p in (ex34, ex36):
            assert invariants(random_congruence(p, seed)) == invariants(p)
            assert strictly_congruent(random_congruence(p, seed), p)

    def test_seeds_are_reproducible(self, ex36):
        assert random_congruence(ex36, 7) == random_congruence(ex36, 7)

    def test_explicit_transform(self, ex34):
        S = rat_matrix([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
        assert strictly_congruent(congruence_transform(ex34, S), ex34)

    def test_different_invariants(self, ex34, real_split):
        assert not strictly_congruent(ex34, real_split)


class TestMixing:
    def test_singular_mix_rejected(self, ex34):
        with pytest.raises(InvalidPencil):
            mix_pencil(ex34, 1, 2, 2, 4)

    @pytest.mark.parametrize("seed", [1, 2])
    def test_mix_keeps_structure(self, ex36, seed):
        assert invariants(random_mix(ex36, seed)).minimal_indices == (2,)

    def test_swap_moves_finite_to_infinite(self):
        p = build_block(BlockSpec.finite(0, 2))
        swapped = mix_pencil(p, 0, 1, 1, 0)
        assert infinite_divisors(swapped) == [ElementaryDivisor.infinite(2)]


class TestDisplay:
    @pytest.mark.parametrize("divisor, text", [
        (ElementaryDivisor.infinite(2), "(inf, 2)"),
        (ElementaryDivisor.finite(rat("3/2"), 1), "(3/2, 1)"),
        (ElementaryDivisor.quadratic([1, 0, 1], 1), "(±i, 1)"),
        (ElementaryDivisor.quadratic([2, -2, 1], 3), "(1±i, 3)"),
    ])
    def test_display(self, divisor, text):
        assert divisor_display(divisor) == text


def _cubic_pencil():
    """( 0, lam*I - C ; -(lam*I - C)^t, 0 ) with C the companion matrix of lam^3 - 2."""
    C = [[0, 0, 2], [1, 0, 0], [0, 1, 0]]
    A = [[0] * 6 for _ in range(6)]
    B = [[0] * 6 for _ in range(6)]
    for i in range(3):
        for j in range(3):
            A[i][3 + j] = -C[i][j]
            A[3 + j][i] = C[i][j]
        B[i][3 + i] = 1
        B[3 + i][i] = -1
    return Pencil.from_rows(A, B)


class TestLocalStructure:
    def test_finite_block_sizes(self):
        p = build_block(BlockSpec.finite("3/2", 2))
        assert local_block_sizes(p, LAM - rat("3/2"), generic_rank(p)) == [2, 2]
        assert local_block_sizes(p, LAM - 1, generic_rank(p)) == []

    def test_quadratic_block_sizes(self):
        p = build_block(BlockSpec.complex("0", "1", 2))
        assert local_block_sizes(p, LAM**2 + 1, generic_rank(p)) == [2, 2]

    def test_singular_part_is_subtracted(self):
        p = direct_sum([build_block(BlockSpec.minidx(1)), build_block(BlockSpec.finite("0", 1))])
        assert local_block_sizes(p, LAM, generic_rank(p)) == [1, 1]
        assert invariants(p).divisor_pairs == (ElementaryDivisor.finite("0", 1),)

    def test_cubic_eigenvalues_rejected(self):
        with pytest.raises(IrreducibleFactorTooLarge):
            invariants(_cubic_pencil())

    def test_structure_is_computed_once(self, ex36):
        assert ex36.structure is ex36.structure
        assert invariants(ex36) is invariants(ex36)

    def test_reversal_duality(self):
        p = direct_sum([
            build_block(BlockSpec.finite("2", 1)),
            build_block(BlockSpec.finite("-1/3", 2)),
            build_block(BlockSpec.finite("0", 1)),
            build_block(BlockSpec.inf(2)),
        ])
        expected = [
            ElementaryDivisor.finite("1/2", 1),
            ElementaryDivisor.finite("-3", 2),
            ElementaryDivisor.finite("0", 2),
        ]
        assert finite_divisors(p.reversed()) == sorted(expected, key=lambda d: d.sort_key)
        assert infinite_divisors(p.reversed()) == [ElementaryDivisor.infinite(1)]

    def test_scrambled_singular_composite(self):
        spec = CanonicalSpec((BlockSpec.complex("-1/2", "2", 1), BlockSpec.inf(1), BlockSpec.minidx(2)))
        p = build_spec(spec)
        q = random_congruence(p, 1)
        assert invariants(q) == invariants_of_spec(spec)
        assert invariant_polynomials(q) == invariant_polynomials(p)


class TestKernelSpecialization:
    def test_ex36_kernel_at_two(self, ex36):
        (v,) = kernel_basis(ex36.at(rat(2)))
        assert [x / v[4] for x in v] == [0, 0, 4, -2, 1]

    def test_basis_stays_independent_at_random_points(self, ex36):
        p = random_congruence(direct_sum([ex36, build_block(BlockSpec.minidx(1))]), 1)
        basis = minimal_kernel_basis(p)
        assert basis.degrees == [1, 2]
        rng = np.random.default_rng(5)
        for num, den in zip(rng.integers(-50, 51, size=20), rng.integers(1, 51, size=20)):
            b = rat(f"{int(num)}/{int(den)}")
            vectors = rat_matrix(basis.evaluate(b))
            assert rank(vectors) == 2
            assert not any(any(row) for row in (p.at(b) * vectors.transpose()).to_list())

    def test_different_sizes_are_not_congruent(self):
        assert not strictly_congruent(build_block(BlockSpec.inf(1)), build_block(BlockSpec.minidx(1)))


@pytest.mark.slow
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_scrambled_random_spec(seed):
    spec = random_spec(seed)
    assert invariants(random_congruence(build_spec(spec), 1)) == invariants_of_spec(spec)
