"""
SKEWAID - Pencil Invariants
Strict-congruence invariants of skew pencils mu*A + lam*B over Q:
Smith normal form, finite and infinite elementary divisors, minimal indices.
"""

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
from sympy.polys.matrices import DomainMatrix

from algebra.errors import InvalidPencil, IrreducibleFactorTooLarge, PairingViolation, SizeIdentityViolation
from algebra.exact_arith import (
    LAM,
    ONE,
    POLY_DOMAIN,
    QQ_LAM,
    Poly,
    QuadExt,
    QuadField,
    RatMatrix,
    ZERO,
    companion_matrix,
    determinant,
    discriminant,
    ext_matrix,
    kernel_basis,
    lin_comb,
    matrices_equal,
    poly_coeffs,
    poly_degree,
    poly_eval,
    poly_from_coeffs,
    poly_gcd,
    poly_str,
    prime_factors,
    rank,
    rat,
    rat_matrix,
    rat_str,
    rational_content,
    rational_sqrt,
    rref,
)
from config import PROJECTION_SEED, PROJECTION_TRIES, SCRAMBLE_BOUND
from diagnostics import debug

# ===========================================
# Types
# ===========================================


@dataclass(frozen=True, eq=False)
class Pencil:
    """Skew pencil mu*A + lam*B; A and B are n x n skew-symmetric over Q."""

    A: RatMatrix
    B: RatMatrix

    def __post_init__(self):
        if self.A.shape != self.B.shape:
            raise InvalidPencil(f"A is {self.A.shape} but B is {self.B.shape}")
        nrows, ncols = self.A.shape
        if nrows != ncols or nrows == 0:
            raise InvalidPencil(f"coefficient matrices must be square and nonempty, got {self.A.shape}")
        for name, m in (("A", self.A), ("B", self.B)):
            if not matrices_equal(m, -m.transpose()):
                raise InvalidPencil(f"{name} is not skew-symmetric")

    @classmethod
    def from_rows(cls, a_rows, b_rows) -> "Pencil":
        if len(a_rows) != len(b_rows):
            raise InvalidPencil("A and B have different sizes")
        n = len(a_rows)
        try:
            return cls(rat_matrix(a_rows, n), rat_matrix(b_rows, n))
        except InvalidPencil:
            raise
        except ValueError as e:
            raise InvalidPencil(str(e))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    def __eq__(self, other):
        return (
            isinstance(other, Pencil)
            and matrices_equal(self.A, other.A)
            and matrices_equal(self.B, other.B)
        )

    def __hash__(self):
        return hash((str(self.A.to_list()), str(self.B.to_list())))

    def at(self, x) -> RatMatrix:
        """A + x*B at a rational point x."""
        return lin_comb(ONE, self.A, x, self.B)

    def at_ext(self, x: QuadExt) -> DomainMatrix:
        """A + x*B at a point of a quadratic extension."""
        rows = [
            [x * b + a for a, b in zip(ra, rb)]
            for ra, rb in zip(self.A.to_list(), self.B.to_list())
        ]
        return ext_matrix(rows, x.field)

    def poly_matrix(self) -> DomainMatrix:
        """A + lam*B as a matrix over Q[lam]."""
        return poly_matrix(
            [[LAM * b + a for a, b in zip(ra, rb)] for ra, rb in zip(self.A.to_list(), self.B.to_list())]
        )

    def reversed(self) -> "Pencil":
        """The pencil B + lam'*A (roles of mu and lam exchanged)."""
        return Pencil(self.B, self.A)

    @cached_property
    def structure(self) -> "PencilStructure":
        return PencilStructure(self)


def poly_matrix(rows) -> DomainMatrix:
    ncols = len(rows[0]) if rows else 0
    return DomainMatrix([list(r) for r in rows], (len(rows), ncols), POLY_DOMAIN)


@dataclass(frozen=True)
class ElementaryDivisor:
    """One pair of elementary divisors: location (inf, finite alpha, or quad modulus) and exponent.

    A "quad" entry stands for the two conjugate pairs over the algebraic closure.
    Its modulus is stored as (v, u, 1) for lam^2 + u*lam + v.
    """

    kind: str
    exponent: int
    alpha: Optional[object] = None
    modulus: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in ("inf", "finite", "quad"):
            raise ValueError(f"unknown divisor kind {self.kind!r}")
        if self.exponent < 1:
            raise ValueError("divisor exponent must be >= 1")
        if self.kind == "finite" and self.alpha is None:
            raise ValueError("finite divisor needs alpha")
        if self.kind == "quad":
            if self.modulus is None or len(self.modulus) != 3 or self.modulus[2] != ONE:
                raise ValueError("quadratic divisor needs a monic modulus (v, u, 1)")
            if rational_sqrt(discriminant(self.modulus_poly)) is not None:
                raise ValueError(f"modulus {poly_str(self.modulus_poly)} is reducible over Q")

    @classmethod
    def infinite(cls, e: int) -> "ElementaryDivisor":
        return cls("inf", e)

    @classmethod
    def finite(cls, alpha, f: int) -> "ElementaryDivisor":
        return cls("finite", f, alpha=rat(alpha))

    @classmethod
    def quadratic(cls, modulus, m: int) -> "ElementaryDivisor":
        coeffs = poly_coeffs(modulus) if not isinstance(modulus, (list, tuple)) else [rat(c) for c in modulus]
        return cls("quad", m, modulus=tuple(coeffs))

    @property
    def modulus_poly(self):
        return poly_from_coeffs(self.modulus)

    @property
    def pair_count(self) -> int:
        return 2 if self.kind == "quad" else 1

    @property
    def size(self) -> int:
        return 2 * self.exponent * self.pair_count

    @property
    def is_real_split(self) -> bool:
        return self.kind == "quad" and discriminant(self.modulus_poly) > 0

    @property
    def sort_key(self):
        order = {"inf": 0, "finite": 1, "quad": 2}[self.kind]
        if self.kind == "finite":
            return (order, (self.alpha,), self.exponent)
        if self.kind == "quad":
            return (order, self.modulus, self.exponent)
        return (order, (), self.exponent)


@dataclass(frozen=True)
class PencilInvariants:
    """Complete strict-congruence invariant: divisor pairs and minimal indices."""

    n: int
    divisor_pairs: tuple
    minimal_indices: tuple

    @classmethod
    def build(cls, n: int, pairs, indices) -> "PencilInvariants":
        return cls(
            n,
            tuple(sorted(pairs, key=lambda d: d.sort_key)),
            tuple(sorted(int(e) for e in indices)),
        )

    @property
    def declared_size(self) -> int:
        return sum(d.size for d in self.divisor_pairs) + sum(2 * e + 1 for e in self.minimal_indices)

    def check_size(self):
        if any(e < 0 for e in self.minimal_indices):
            raise SizeIdentityViolation("minimal indices must be non-negative")
        if self.declared_size != self.n:
            raise SizeIdentityViolation(
                f"divisor pairs and minimal indices account for {self.declared_size}, not n={self.n}"
            )
        return self


@dataclass
class SmithForm:
    diagonal: list
    U: Optional[DomainMatrix] = None
    V: Optional[DomainMatrix] = None


@dataclass
class MinimalKernelBasis:
    """Polynomial kernel columns of A + lam*B, one per minimal index."""

    columns: list

    @property
    def degrees(self) -> list:
        return [max(poly_degree(x) for x in col) for col in self.columns]

    def evaluate(self, x) -> list:
        return [[poly_eval(p, x) for p in col] for col in self.columns]


# ===========================================
# Smith normal form over Q[lam]
# ===========================================


def _pivot_position(M, t):
    best = None
    for i in range(t, len(M)):
        for j in range(t, len(M[0])):
            if M[i][j]:
                d = M[i][j].degree()
                if best is None or d < best[0]:
                    best = (d, i, j)
    return None if best is None else best[1:]


def _swap_rows(M, i, k):
    M[i], M[k] = M[k], M[i]


def _swap_cols(M, j, k):
    for row in M:
        row[j], row[k] = row[k], row[j]


def _add_row(M, target, source, factor):
    """row[target] += factor * row[source]."""
    src = M[source]
    M[target] = [x + factor * y for x, y in zip(M[target], src)]


def _add_col(M, target, source, factor):
    for row in M:
        row[target] = row[target] + factor * row[source]


def _primitive_row(M, i, U=None):
    """Divide row i by its rational content (a unit of Q[lam])."""
    content = rational_content(M[i])
    if content and content != ONE:
        scale = ONE / content
        M[i] = [x * scale for x in M[i]]
        if U is not None:
            U[i] = [x * scale for x in U[i]]


def _primitive_col(M, j, V=None):
    content = rational_content(row[j] for row in M)
    if content and content != ONE:
        scale = ONE / content
        for row in M:
            row[j] = row[j] * scale
        if V is not None:
            for row in V:
                row[j] = row[j] * scale


def smith_normal_form(m: DomainMatrix, track: bool = True) -> SmithForm:
    """U * m * V = diag(d_1, ...), d_i monic or zero and d_i | d_{i+1}.

    Pivot is the nonzero entry of least degree (ties: lowest row, then column).
    Every row and column touched by an elimination step is made primitive,
    which keeps the rational coefficients from growing.
    With track=False the transforms are skipped.
    """
    nrows, ncols = m.shape
    M = [list(row) for row in m.to_list()]
    U = [[QQ_LAM.one if i == j else QQ_LAM.zero for j in range(nrows)] for i in range(nrows)] if track else None
    V = [[QQ_LAM.one if i == j else QQ_LAM.zero for j in range(ncols)] for i in range(ncols)] if track else None
    diagonal = []

    for t in range(min(nrows, ncols)):
        while True:
            pos = _pivot_position(M, t)
            if pos is None:
                break
            i, j = pos
            if i != t:
                _swap_rows(M, i, t)
                if track:
                    _swap_rows(U, i, t)
            if j != t:
                _swap_cols(M, j, t)
                if track:
                    _swap_cols(V, j, t)
            pivot = M[t][t]
            clean = True
            for i in range(t + 1, nrows):
                if M[i][t]:
                    q, r = divmod(M[i][t], pivot)
                    if q:
                        _add_row(M, i, t, -q)
                        if track:
                            _add_row(U, i, t, -q)
                        _primitive_row(M, i, U)
                    clean = clean and not r
            for j in range(t + 1, ncols):
                if M[t][j]:
                    q, r = divmod(M[t][j], pivot)
                    if q:
                        _add_col(M, j, t, -q)
                        if track:
                            _add_col(V, j, t, -q)
                        _primitive_col(M, j, V)
                    clean = clean and not r
            if not clean:
                continue
            stray = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if M[i][j] % pivot),
                None,
            )
            if stray is None:
                break
            _add_row(M, t, stray, QQ_LAM.one)
            if track:
                _add_row(U, t, stray, QQ_LAM.one)

        d = M[t][t]
        if d:
            scale = ONE / d.LC
            M[t] = [x * scale for x in M[t]]
            if track:
                U[t] = [x * scale for x in U[t]]
        diagonal.append(M[t][t])

    if not track:
        return SmithForm(diagonal)
    return SmithForm(diagonal, poly_matrix(U), poly_matrix(V))


# ===========================================
# Local structure at a prime
# ===========================================
# For a prime pi of degree d with companion matrix C, the rational matrix
# A (x) I_d + B (x) C is similar over the splitting field to the direct sum of
# A + theta*B over the d roots theta of pi. The j-block Toeplitz system
#
#     [ L    0   ...      ]
#     [ B'   L   ...      ]     L = A (x) I_d + B (x) C,   B' = B (x) I_d
#     [ ...       B'   L  ]
#
# therefore has nullity d * (sum_i min(s_i, j) + j * (n - r)), where s_i are
# the Jordan block sizes at one root and n - r counts the right minimal indices.


def _toeplitz(p: Pencil, prime, j: int) -> RatMatrix:
    C = companion_matrix(prime)
    d, n = len(C), p.n
    A, B = p.A.to_list(), p.B.to_list()
    diag = [
        [A[i][k] * (ONE if a == b else ZERO) + B[i][k] * C[a][b] for k in range(n) for b in range(d)]
        for i in range(n) for a in range(d)
    ]
    sub = [
        [B[i][k] if a == b else ZERO for k in range(n) for b in range(d)]
        for i in range(n) for a in range(d)
    ]
    size = n * d
    rows = []
    for block in range(j):
        for local in range(size):
            row = [ZERO] * (size * j)
            row[block * size:(block + 1) * size] = diag[local]
            if block:
                row[(block - 1) * size:block * size] = sub[local]
            rows.append(row)
    return rat_matrix(rows, size * j)


def local_block_sizes(p: Pencil, prime, generic: int) -> list:
    """Jordan block sizes of A + lam*B at one root of prime, ascending; [] off the spectrum."""
    d = poly_degree(prime)
    singular = p.n - generic
    at_least = []
    chains = 0
    for j in range(1, p.n + 2):
        T = _toeplitz(p, prime, j)
        nullity, rest = divmod(T.shape[1] - rank(T), d)
        if rest:
            raise ArithmeticError(f"nullity at {poly_str(prime)} is not a multiple of its degree")
        count = nullity - j * singular - chains
        if count <= 0:
            break
        at_least.append(count)
        chains += count
    else:
        raise ArithmeticError(f"Jordan chains at {poly_str(prime)} did not terminate")
    sizes = []
    for j, count in enumerate(at_least, start=1):
        longer = at_least[j] if j < len(at_least) else 0
        sizes += [j] * (count - longer)
    return sizes


# ===========================================
# Rank and eigenvalue candidates
# ===========================================


def _point_rank(p: Pencil) -> int:
    """Rank over Q(lam): a skew pencil has at most n/2 distinct eigenvalues, so one of 0..n/2 is regular."""
    best = 0
    for x in range(p.n // 2 + 1):
        best = max(best, rank(p.at(rat(x))))
        if best == p.n:
            break
    return best


def _projected_determinant(p: Pencil, r: int, rng) -> Poly:
    """det(P (A + lam*B) Q) for integer P (r x n), Q (n x r): a multiple of every r x r minor gcd."""
    P = rat_matrix(rng.integers(-SCRAMBLE_BOUND, SCRAMBLE_BOUND + 1, size=(r, p.n)).tolist())
    Q = rat_matrix(rng.integers(-SCRAMBLE_BOUND, SCRAMBLE_BOUND + 1, size=(p.n, r)).tolist())
    PA, PB = (P * p.A * Q).to_list(), (P * p.B * Q).to_list()
    return poly_matrix([[LAM * b + a for a, b in zip(ra, rb)] for ra, rb in zip(PA, PB)]).det()


def candidate_primes(p: Pencil, generic: int) -> list:
    """Monic primes containing every finite eigenvalue of A + lam*B (possibly a few more)."""
    if generic == 0:
        return []
    if generic == p.n:
        multiple = p.poly_matrix().det()
    else:
        rng = np.random.default_rng(PROJECTION_SEED)
        multiple, draws = None, 0
        for _ in range(PROJECTION_TRIES):
            det = _projected_determinant(p, generic, rng)
            if not det:
                continue
            multiple = det if multiple is None else poly_gcd(multiple, det)
            draws += 1
            if draws == 2:
                break
        if multiple is None:
            raise ArithmeticError(f"no projection of rank {generic} found")
    if poly_degree(multiple) < 1:
        return []
    return prime_factors(multiple)


# ===========================================
# Minimal indices
# ===========================================


def _block_system(p: Pencil, d: int) -> DomainMatrix:
    """Coefficient system of (A + lam*B) * (c_0 + ... + c_d lam^d) = 0."""
    n = p.n
    A, B = p.A.to_list(), p.B.to_list()
    rows = []
    for block in range(d + 2):
        for i in range(n):
            row = [ZERO] * (n * (d + 1))
            if block <= d:
                for k in range(n):
                    row[block * n + k] = A[i][k]
            if block >= 1:
                for k in range(n):
                    row[(block - 1) * n + k] = B[i][k]
            rows.append(row)
    return rat_matrix(rows, n * (d + 1))


def _shift(flat: list, n: int, j: int, d: int) -> list:
    """Coefficients of lam^j * v padded to degree d."""
    return [ZERO] * (n * j) + flat + [ZERO] * (n * (d + 1) - n * j - len(flat))


def _normalize(flat: list, n: int, d: int) -> list:
    top = flat[n * d:]
    lead = next(x for x in top if x)
    return [x / lead for x in flat]


def _minimal_basis(p: Pencil, k: int) -> MinimalKernelBasis:
    """Greedy degree-by-degree minimal polynomial basis of ker(A + lam*B) with k columns."""
    n = p.n
    found = []
    d = 0
    while len(found) < k:
        if d > n:
            raise ArithmeticError("minimal kernel basis did not close")
        span = [
            _shift(flat, n, j, d)
            for flat, deg in found
            for j in range(d - deg + 1)
        ]
        candidates = kernel_basis(_block_system(p, d))
        if candidates:
            # pivot columns past the span are exactly the candidates independent of everything before them
            _, pivots = rref(rat_matrix(span + candidates, n * (d + 1)).transpose())
            for col in pivots:
                if col >= len(span) and len(found) < k:
                    found.append((_normalize(candidates[col - len(span)], n, d), d))
                    debug(f"minimal index {d} found (column {len(found)} of {k})", "PENCIL")
        d += 1
    columns = [
        [poly_from_coeffs([flat[j * n + i] for j in range(deg + 1)]) for i in range(n)]
        for flat, deg in found
    ]
    return MinimalKernelBasis(columns)


# ===========================================
# Elementary divisors
# ===========================================


def _paired(counts: Counter, what: str) -> list:
    pairs = []
    for key, count in sorted(counts.items()):
        if count % 2:
            raise PairingViolation(f"{what} {key} occurs {count} times (odd)")
        pairs.extend([key] * (count // 2))
    return pairs


def _divisors_at(prime, sizes) -> list:
    """One ElementaryDivisor per pair of equal Jordan blocks at the roots of prime."""
    coeffs = poly_coeffs(prime)
    pairs = _paired(Counter(sizes), f"elementary divisor ({poly_str(prime)})^e with e =")
    if len(coeffs) == 2:
        return [ElementaryDivisor.finite(-coeffs[0], e) for e in pairs]
    return [ElementaryDivisor.quadratic(coeffs, e) for e in pairs]


class PencilStructure:
    """Rank data of one pencil; each piece is computed at most once and shared by every caller."""

    def __init__(self, pencil: Pencil):
        self.pencil = pencil

    @cached_property
    def generic_rank(self) -> int:
        return _point_rank(self.pencil)

    @cached_property
    def finite(self) -> list:
        """(prime, Jordan block sizes) for every prime at whose roots A + lam*B drops rank."""
        local = []
        for prime in candidate_primes(self.pencil, self.generic_rank):
            sizes = local_block_sizes(self.pencil, prime, self.generic_rank)
            if not sizes:
                continue
            if prime.degree() > 2:
                raise IrreducibleFactorTooLarge(
                    f"eigenvalues are roots of {poly_str(prime)}, degree {prime.degree()} is not supported"
                )
            local.append((prime, sizes))
        return local

    @cached_property
    def infinite(self) -> list:
        """Block sizes of B + lam'*A at lam' = 0."""
        return local_block_sizes(self.pencil.reversed(), LAM, self.generic_rank)

    @cached_property
    def kernel(self) -> MinimalKernelBasis:
        return _minimal_basis(self.pencil, self.pencil.n - self.generic_rank)

    @cached_property
    def diagonal(self) -> list:
        """Invariant polynomials, assembled prime by prime from the block sizes."""
        r = self.generic_rank
        diagonal = [QQ_LAM.one] * r
        for prime, sizes in self.finite:
            for k, e in enumerate(sorted(sizes, reverse=True)):
                diagonal[r - 1 - k] *= prime ** e
        return diagonal + [QQ_LAM.zero] * (self.pencil.n - r)

    @cached_property
    def invariants(self) -> PencilInvariants:
        pairs = [d for prime, sizes in self.finite for d in _divisors_at(prime, sizes)]
        pairs += [
            ElementaryDivisor.infinite(e)
            for e in _paired(Counter(self.infinite), "infinite divisor mu^e with e =")
        ]
        debug(f"n={self.pencil.n}: rank {self.generic_rank}, {len(pairs)} divisor pair(s)", "PENCIL")
        return PencilInvariants.build(self.pencil.n, pairs, self.kernel.degrees).check_size()


def invariant_polynomials(p: Pencil) -> list:
    """Smith diagonal of A + lam*B."""
    return p.structure.diagonal


def eigen_primes(p: Pencil) -> list:
    """Primes (degree <= 2) whose roots are finite eigenvalues, in factor order."""
    return [prime for prime, _ in p.structure.finite]


def finite_divisors(p: Pencil) -> list:
    """Divisor pairs of A + lam*B located at finite points (rational or quadratic)."""
    pairs = [d for prime, sizes in p.structure.finite for d in _divisors_at(prime, sizes)]
    return sorted(pairs, key=lambda d: d.sort_key)


def infinite_divisors(p: Pencil) -> list:
    """Divisor pairs at infinity, read from B + lam'*A at lam' = 0."""
    pairs = _paired(Counter(p.structure.infinite), "infinite divisor mu^e with e =")
    return [ElementaryDivisor.infinite(e) for e in pairs]


def generic_rank(p: Pencil) -> int:
    """Rank of A + lam*B over Q(lam)."""
    return p.structure.generic_rank


def is_regular(p: Pencil) -> bool:
    return generic_rank(p) == p.n


def minimal_kernel_basis(p: Pencil) -> MinimalKernelBasis:
    return p.structure.kernel


# ===========================================
# Invariants and congruence
# ===========================================


def invariants(p: Pencil) -> PencilInvariants:
    """Divisor pairs and minimal indices of p, canonically sorted and size-checked."""
    return p.structure.invariants


def strictly_congruent(p: Pencil, q: Pencil) -> bool:
    return p.n == q.n and invariants(p) == invariants(q)


def congruence_transform(p: Pencil, S: RatMatrix) -> Pencil:
    St = S.transpose()
    return Pencil(St * p.A * S, St * p.B * S)


def random_congruence(p: Pencil, seed: int) -> Pencil:
    """(S^t A S, S^t B S) for a seeded S in GL_n(Q); seed 0 is the identity."""
    if seed == 0:
        return p
    rng = np.random.default_rng(seed)
    while True:
        S = rat_matrix(rng.integers(-SCRAMBLE_BOUND, SCRAMBLE_BOUND + 1, size=(p.n, p.n)).tolist())
        if determinant(S):
            return congruence_transform(p, S)


def mix_pencil(p: Pencil, a, b, c, d) -> Pencil:
    """(a*A + b*B, c*A + d*B): a change of basis of the derived algebra."""
    a, b, c, d = (rat(x) for x in (a, b, c, d))
    if not a * d - b * c:
        raise InvalidPencil("mixing matrix is singular")
    return Pencil(lin_comb(a, p.A, b, p.B), lin_comb(c, p.A, d, p.B))


def random_mix(p: Pencil, seed: int) -> Pencil:
    rng = np.random.default_rng(seed)
    while True:
        a, b, c, d = (int(x) for x in rng.integers(-3, 4, size=4))
        if a * d - b * c:
            return mix_pencil(p, a, b, c, d)


# ===========================================
# Display
# ===========================================


def complex_parts(modulus: tuple):
    """(a, b) with roots a +- b*i for lam^2 + u*lam + v, when b > 0 is rational; else None."""
    v, u = modulus[0], modulus[1]
    a = -u / 2
    b = rational_sqrt(v - a * a)
    if v - a * a <= 0 or b is None:
        return None
    return a, b


def divisor_display(d: ElementaryDivisor) -> str:
    if d.kind == "inf":
        return f"(inf, {d.exponent})"
    if d.kind == "finite":
        return f"({rat_str(d.alpha)}, {d.exponent})"
    parts = None if d.is_real_split else complex_parts(d.modulus)
    if parts is None:
        return f"({poly_str(d.modulus_poly)}, {d.exponent})"
    a, b = parts
    re = "" if not a else f"{rat_str(a)}"
    im = "i" if b == ONE else f"{rat_str(b)}i"
    return f"({re}±{im}, {d.exponent})" if re else f"(±{im}, {d.exponent})"


def quad_field(d: ElementaryDivisor) -> QuadField:
    return QuadField(d.modulus_poly)
