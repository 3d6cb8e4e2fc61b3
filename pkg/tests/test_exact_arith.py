"""Rationals, polynomials, Q(theta) and exact linear algebra."""

import numpy as np
import pytest

from algebra.errors import IrreducibleFactorTooLarge, ModulusMismatch
from algebra.exact_arith import (
    LAM,
    ONE,
    ZERO,
    QQ_LAM,
    QuadField,
    companion_matrix,
    determinant,
    dot,
    factor_low_degree,
    kernel_basis,
    kernel_basis_ext,
    poly_coeffs,
    poly_degree,
    poly_eval,
    poly_from_coeffs,
    poly_gcd,
    prime_factors,
    rank,
    rref,
    rat,
    rat_matrix,
    rat_str,
    rational_content,
    rational_sqrt,
)


class TestRationals:
    @pytest.mark.parametrize("text, expected", [("3/4", "3/4"), ("-6/8", "-3/4"), ("5", "5"), (" 2/1 ", "2")])
    def test_parse_and_serialize(self, text, expected):
        assert rat_str(rat(text)) == expected

    @pytest.mark.parametrize("bad", ["abc", 0.5, True, None, "1.5.2"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ValueError):
            rat(bad)

    def test_sqrt(self):
        assert rational_sqrt(rat("9/4")) == rat("3/2")
        assert rational_sqrt(rat(2)) is None
        assert rational_sqrt(rat(-4)) is None


class TestPolynomials:
    def test_coefficients_lowest_first(self):
        p = poly_from_coeffs([1, 0, 1])
        assert p == LAM**2 + 1
        assert poly_coeffs(p) == [ONE, ZERO, ONE]
        assert poly_degree(p) == 2
        assert poly_degree(poly_from_coeffs([])) == -1

    def test_eval_and_gcd(self):
        p = (LAM - 1) * (LAM + 2)
        assert poly_eval(p, rat(1)) == 0
        assert poly_eval(p, rat(0)) == -2
        assert poly_gcd(p, 3 * (LAM - 1) ** 2) == LAM - 1
        assert not poly_gcd(poly_from_coeffs([]), poly_from_coeffs([]))

    def test_factor_order(self):
        p = LAM * (LAM + 1) * (LAM - 1) ** 2 * (LAM**2 + 1)
        factors = factor_low_degree(p)
        assert [f for f, _ in factors] == [LAM, LAM - 1, LAM + 1, LAM**2 + 1]
        assert [e for _, e in factors] == [1, 2, 1, 1]

    def test_cubic_factor_rejected(self):
        with pytest.raises(IrreducibleFactorTooLarge):
            factor_low_degree(LAM**3 - 2)

    def test_prime_factors_keep_high_degree(self):
        assert prime_factors(2 * (LAM**3 - 2) * (LAM - 1) ** 2) == [LAM - 1, LAM**3 - 2]

    @pytest.mark.parametrize("prime", [LAM - 3, LAM**2 + 1, LAM**2 - LAM + 5, LAM**3 - 2])
    def test_companion_characteristic_polynomial(self, prime):
        C = rat_matrix(companion_matrix(prime))
        assert C.charpoly() == list(reversed(poly_coeffs(prime)))

    def test_rational_content(self):
        assert rational_content([rat("2/3") * LAM, rat("4/9") + 0 * LAM]) == rat("2/9")
        assert rational_content([QQ_LAM.zero]) == 0


class TestQuadField:
    def test_theta_satisfies_modulus(self):
        K = QuadField(LAM**2 + 1)
        t = K.theta
        assert t * t + 1 == 0
        assert not K.is_real

    def test_arithmetic(self):
        K = QuadField(LAM**2 - 2)
        x = K(1, 1)
        assert (x * x).coeffs == (rat(3), rat(2))
        assert (x / x) == 1
        assert K.is_real

    def test_division(self):
        K = QuadField(LAM**2 - 2)
        # 1 / (1 + sqrt2) = sqrt2 - 1
        assert (K(1) / K(1, 1)).coeffs == (rat(-1), rat(1))
        assert (K(3, 6) / 3).coeffs == (rat(1), rat(2))
        with pytest.raises(ZeroDivisionError):
            K(1) / K(0)

    @pytest.mark.parametrize("modulus", [LAM**2 + 1, LAM**2 - 2, LAM**2 + LAM + 1])
    def test_products_match_polynomials_mod_modulus(self, modulus):
        K = QuadField(modulus)
        rng = np.random.default_rng(11)
        for _ in range(20):
            c0, c1, d0, d1 = (rat(int(v)) for v in rng.integers(-9, 10, size=4))
            product = ((c0 + c1 * LAM) * (d0 + d1 * LAM)) % modulus
            expected = (poly_coeffs(product) + [ZERO, ZERO])[:2]
            assert list((K(c0, c1) * K(d0, d1)).coeffs) == expected
            if d0 or d1:
                assert K(c0, c1) * K(d0, d1) / K(d0, d1) == K(c0, c1)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ValueError):
            QuadField(LAM**2 - 4)

    def test_mixed_moduli(self):
        with pytest.raises(ModulusMismatch):
            QuadField(LAM**2 + 1).theta + QuadField(LAM**2 + 2).theta

    def test_kernel_over_extension(self):
        K = QuadField(LAM**2 + 1)
        t = K.theta
        # [[t, 1], [-1, t]] has kernel spanned by (1, -t)
        kernel = kernel_basis_ext([[t, K(1)], [K(-1), t]], K)
        assert len(kernel) == 1
        u = kernel[0]
        assert t * u[0] + u[1] == 0


class TestLinearAlgebra:
    def test_rank_and_kernel(self):
        m = rat_matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        assert rank(m) == 2
        kernel = kernel_basis(m)
        assert len(kernel) == 1
        assert all(dot(row, kernel[0]) == 0 for row in m.to_list())

    def test_empty_rows_give_full_kernel(self):
        assert len(kernel_basis(rat_matrix([], 3))) == 3

    def test_determinant(self):
        assert determinant(rat_matrix([[0, 1], [-1, 0]])) == 1
        assert determinant(rat_matrix([["1/2", 0], [0, 4]])) == 2

    def test_rref_pivots(self):
        reduced, pivots = rref(rat_matrix([[0, 2, 4], [0, 1, 3]]))
        assert pivots == [1, 2]
        assert reduced.to_list() == [[0, 1, 0], [0, 0, 1]]

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_rref_is_idempotent(self, seed):
        rng = np.random.default_rng(seed)
        m = rat_matrix(rng.integers(-3, 4, size=(4, 6)).tolist())
        reduced, pivots = rref(m)
        again, pivots_again = rref(reduced)
        assert again.to_list() == reduced.to_list()
        assert pivots_again == pivots
        assert rank(m) == len(pivots)
