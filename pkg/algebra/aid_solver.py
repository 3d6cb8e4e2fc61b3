"""
SKEWAID - Almost Inner Derivations
Exact AID(g) for genus-2 algebras from the kernel condition
(mu*A + lam*B) a = 0  =>  mu*d1(a) + lam*d2(a) = 0,
the closed-form dimension formulas, and their cross-check.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from algebra.canonical_forms import direct_sum
from algebra.exact_arith import (
    ZERO,
    QuadExt,
    QuadField,
    dot,
    ext_matrix,
    kernel_basis,
    kernel_basis_ext,
    mul,
    poly_coeffs,
    poly_degree,
    rank,
    rat,
    rat_matrix,
)
from algebra.genus2_lie import (
    CentralDerivation,
    DerivationSpace,
    Genus2Algebra,
    algebra_from_pencil,
    center,
    central_derivations,
    centrality_rows,
    inner_basis,
    inner_dimension,
)
from algebra.pencil_invariants import (
    Pencil,
    PencilInvariants,
    eigen_primes,
    invariants,
    minimal_kernel_basis,
)
from config import DEFAULT_SEED, WITNESS_SAMPLES
from diagnostics import debug


class FieldMode(str, Enum):
    REAL = "real"
    CLOSED = "closed"


def field_mode(value) -> FieldMode:
    try:
        return FieldMode(value)
    except ValueError:
        raise ValueError(f"unknown field mode {value!r} (use 'real' or 'closed')")


# ===========================================
# Types
# ===========================================


@dataclass
class ConstraintSystem:
    """Rational rows on (d1 | d2), 2n columns, each tagged with its source."""

    n: int
    rows: list = field(default_factory=list)
    tags: list = field(default_factory=list)

    def add(self, row: list, tag: str):
        if any(row):
            self.rows.append(row)
            self.tags.append(tag)

    @property
    def matrix(self):
        return rat_matrix(self.rows, 2 * self.n)


@dataclass
class AidResult:
    mode: FieldMode
    dim_inn: int
    dim_c: int
    dim_aid: int
    aid_basis: DerivationSpace
    system: Optional[ConstraintSystem] = None


@dataclass
class CrossCheck:
    mode: FieldMode
    n: int
    formula: tuple
    solver: tuple
    invariants: PencilInvariants

    @property
    def agree(self) -> bool:
        return self.formula == self.solver


# ===========================================
# Constraint assembly
# ===========================================


def _admitted(prime, mode: FieldMode) -> bool:
    if prime.degree() == 1:
        return True
    return mode == FieldMode.CLOSED or QuadField(prime).is_real


def _extension_rows(w: list, theta: QuadExt) -> tuple:
    """d1(w) + theta*d2(w) = 0 split into its 1- and theta-components."""
    s_part = [theta * x for x in w]
    row_c0 = [x.c0 for x in w] + [x.c0 for x in s_part]
    row_c1 = [x.c1 for x in w] + [x.c1 for x in s_part]
    return row_c0, row_c1


def assemble_constraints(g: Genus2Algebra, mode) -> ConstraintSystem:
    mode = field_mode(mode)
    p, n = g.pencil, g.n
    system = ConstraintSystem(n)
    basis = minimal_kernel_basis(p)

    # polynomial kernel: r.v(lam) + lam*s.v(lam) vanishes identically
    for col in basis.columns:
        coeffs = [poly_coeffs(x) for x in col]
        deg = max(poly_degree(x) for x in col)
        for k in range(deg + 2):
            r_part = [c[k] if k < len(c) else ZERO for c in coeffs]
            s_part = [c[k - 1] if 0 <= k - 1 < len(c) else ZERO for c in coeffs]
            system.add(r_part + s_part, "kernel")

    for prime in eigen_primes(p):
        if not _admitted(prime, mode):
            continue
        if prime.degree() == 1:
            alpha = -poly_coeffs(prime)[0]
            for w in kernel_basis(p.at(alpha)):
                system.add(list(w) + [alpha * x for x in w], "finite")
        else:
            theta = QuadField(prime).theta
            for w in kernel_basis_ext(p.at_ext(theta).to_list(), theta.field):
                for row in _extension_rows(w, theta):
                    system.add(row, "quadratic")

    for w in kernel_basis(p.B):
        system.add([ZERO] * n + list(w), "infinity")

    for row in centrality_rows(g):
        system.add(row, "centrality")

    debug(f"{len(system.rows)} constraint rows for n={n} ({mode.value})", "AID")
    return system


# ===========================================
# Solver and formulas
# ===========================================


def solve_aid(g: Genus2Algebra, mode) -> AidResult:
    """AID(g) as the kernel of the constraint rows inside the (d1 | d2) coordinates."""
    mode = field_mode(mode)
    system = assemble_constraints(g, mode)
    basis = [CentralDerivation.from_coefficients(v) for v in kernel_basis(system.matrix)]
    dim_inn = inner_dimension(g)
    return AidResult(mode, dim_inn, 2 * dim_inn, len(basis), DerivationSpace(basis), system)


def formula_dimension(inv: PencilInvariants, mode) -> tuple:
    """(dim Inn, dim AID) from divisor pairs and minimal indices."""
    mode = field_mode(mode)
    inv.check_size()
    dim_inn = inv.n - sum(1 for e in inv.minimal_indices if e == 0)
    dim_aid = dim_inn + sum(e - 1 for e in inv.minimal_indices if e >= 1)
    for d in inv.divisor_pairs:
        if d.kind in ("inf", "finite"):
            dim_aid += 2 * (d.exponent - 1)
        elif mode == FieldMode.REAL and not d.is_real_split:
            dim_aid += 4 * d.exponent
        else:
            # two conjugate (or two real) finite pairs
            dim_aid += 4 * (d.exponent - 1)
    return dim_inn, dim_aid


def cross_check(p: Pencil, mode, allow_degenerate: bool = False) -> CrossCheck:
    """Formula path and solver path side by side; disagreement is reported, never patched."""
    mode = field_mode(mode)
    inv = invariants(p)
    formula = formula_dimension(inv, mode)
    result = solve_aid(algebra_from_pencil(p, allow_degenerate), mode)
    return CrossCheck(mode, p.n, formula, (result.dim_inn, result.dim_aid), inv)


def _aid_dim(p: Pencil, mode: FieldMode) -> int:
    return solve_aid(algebra_from_pencil(p, allow_degenerate=True), mode).dim_aid


def direct_sum_additivity_check(p: Pencil, q: Pencil, mode) -> bool:
    """dim AID(p + q) = dim AID(p) + dim AID(q), all three by the solver.

    Raises GenusTooLow when a summand is abelian.
    """
    mode = field_mode(mode)
    left, right = _aid_dim(p, mode), _aid_dim(q, mode)
    total = _aid_dim(direct_sum([p, q]), mode)
    debug(f"additivity: {total} vs {left} + {right}", "AID")
    return total == left + right


def mode_monotonicity(g: Genus2Algebra) -> tuple:
    """(dim AID over R, dim AID over the closure)."""
    return solve_aid(g, FieldMode.REAL).dim_aid, solve_aid(g, FieldMode.CLOSED).dim_aid


# ===========================================
# Point-wise certification
# ===========================================


@dataclass
class WitnessReport:
    points: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _solvable(g: Genus2Algebra, D: CentralDerivation, x: list) -> bool:
    """rank L(x) = rank (L(x) | d(x)) with L(x) = (x^t A ; x^t B)."""
    A, B = g.A.to_list(), g.B.to_list()
    n = g.n
    row_a = [dot(x, [A[i][j] for i in range(n)]) for j in range(n)]
    row_b = [dot(x, [B[i][j] for i in range(n)]) for j in range(n)]
    d = [dot(D.d1, x), dot(D.d2, x)]
    L = [row_a, row_b]
    extended = [row_a + [d[0]], row_b + [d[1]]]
    ext = next((v for v in x if isinstance(v, QuadExt)), None)
    if ext is None:
        return rank(rat_matrix(L, n)) == rank(rat_matrix(extended, n + 1))
    return rank(ext_matrix(L, ext.field)) == rank(ext_matrix(extended, ext.field))


def _combinations(vectors: list, rng, count: int) -> list:
    if len(vectors) < 2:
        return []
    out = []
    for _ in range(count):
        coeffs = [rat(int(c)) for c in rng.integers(-3, 4, size=len(vectors))]
        combo = [ZERO] * len(vectors[0])
        for c, v in zip(coeffs, vectors):
            combo = [mul(x, c) + a if isinstance(x, QuadExt) else a + c * x for a, x in zip(combo, v)]
        out.append(combo)
    return out


def structured_points(g: Genus2Algebra, mode, seed: int = DEFAULT_SEED) -> list:
    """Kernel vectors at every point of P^1 where condition (1) can bind, admitted by mode."""
    mode = field_mode(mode)
    p, n = g.pencil, g.n
    rng = np.random.default_rng(seed)
    points = []
    basis = minimal_kernel_basis(p)
    # r.v(lam) + lam*s.v(lam) has degree <= deg + 1, so deg + 2 points detect it
    for b in range(max(basis.degrees, default=0) + 3):
        points += basis.evaluate(rat(b))
    for prime in eigen_primes(p):
        if not _admitted(prime, mode):
            continue
        if prime.degree() == 1:
            kernel = kernel_basis(p.at(-poly_coeffs(prime)[0]))
        else:
            theta = QuadField(prime).theta
            kernel = kernel_basis_ext(p.at_ext(theta).to_list(), theta.field)
        points += kernel + _combinations(kernel, rng, 3)
    kernel_b = kernel_basis(p.B)
    points += kernel_b + _combinations(kernel_b, rng, 3)
    points += center(g).x_basis
    return [pt for pt in points if any(pt)]


def random_points(n: int, samples: int, seed: int) -> list:
    rng = np.random.default_rng(seed)
    return [[rat(int(c)) for c in rng.integers(-5, 6, size=n)] for _ in range(samples)]


def witness_check(g: Genus2Algebra, result: AidResult, samples: int = WITNESS_SAMPLES,
                  seed: int = DEFAULT_SEED) -> WitnessReport:
    """Every AID basis element passes the point-wise rank test at random and structured points."""
    points = random_points(g.n, samples, seed) + structured_points(g, result.mode, seed)
    report = WitnessReport(points=len(points))
    for index, D in enumerate(result.aid_basis.basis):
        for x in points:
            if not _solvable(g, D, x):
                report.failures.append((index, x))
                break
    return report


def aid_complement(g: Genus2Algebra, result: AidResult) -> list:
    """Basis elements of C(g) that extend the AID basis to a basis of C(g)."""
    chosen = list(result.aid_basis.basis)
    current = rank(DerivationSpace(chosen).matrix(g.n)) if chosen else 0
    complement = []
    for D in central_derivations(g).basis:
        trial = rank(DerivationSpace(chosen + [D]).matrix(g.n))
        if trial > current:
            chosen.append(D)
            complement.append(D)
            current = trial
    return complement


def negative_control(g: Genus2Algebra, result: AidResult, samples: int = WITNESS_SAMPLES,
                     seed: int = DEFAULT_SEED) -> bool:
    """Every C(g) element outside AID fails the rank test somewhere."""
    points = structured_points(g, result.mode, seed) + random_points(g.n, samples, seed)
    return all(
        any(not _solvable(g, D, x) for x in points)
        for D in aid_complement(g, result)
    )


def soundness(g: Genus2Algebra, result: AidResult) -> bool:
    """Inn <= AID <= C(g) as spans."""
    n = g.n
    return (
        result.aid_basis.contains(inner_basis(g), n)
        and central_derivations(g).contains(result.aid_basis, n)
    )
