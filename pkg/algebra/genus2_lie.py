"""
SKEWAID - Genus-2 Lie Algebras
2-step nilpotent Lie algebras with basis (x_1..x_n, y_1, y_2) and
[x_i, x_j] = a_ij y_1 + b_ij y_2, built from a skew pencil.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

from algebra.errors import GenusTooLow, InvalidPencil
from algebra.exact_arith import (
    ONE,
    ZERO,
    Rat,
    RatMatrix,
    dot,
    identity_matrix,
    kernel_basis,
    rank,
    rat,
    rat_matrix,
    rref,
)
from algebra.pencil_invariants import Pencil

# ===========================================
# Types
# ===========================================


@dataclass(frozen=True, eq=False)
class Genus2Algebra:
    """Structure constants come from the pencil: A gives the y_1 part, B the y_2 part."""

    pencil: Pencil
    degenerate: bool = False

    @property
    def n(self) -> int:
        return self.pencil.n

    @property
    def dim(self) -> int:
        return self.n + 2

    @property
    def A(self) -> RatMatrix:
        return self.pencil.A

    @property
    def B(self) -> RatMatrix:
        return self.pencil.B


@dataclass(frozen=True)
class Vector:
    x_part: tuple
    y_part: tuple = (ZERO, ZERO)

    @classmethod
    def x(cls, n: int, i: int) -> "Vector":
        """Basis vector x_i, 1-indexed."""
        return cls(tuple(ONE if k == i - 1 else ZERO for k in range(n)))

    @classmethod
    def y(cls, n: int, k: int) -> "Vector":
        return cls(tuple([ZERO] * n), tuple(ONE if j == k - 1 else ZERO for j in range(2)))

    @classmethod
    def of(cls, x_part: Sequence, y_part: Sequence = (0, 0)) -> "Vector":
        return cls(tuple(rat(a) for a in x_part), tuple(rat(b) for b in y_part))

    def __add__(self, other: "Vector") -> "Vector":
        return Vector(
            tuple(a + b for a, b in zip(self.x_part, other.x_part)),
            tuple(a + b for a, b in zip(self.y_part, other.y_part)),
        )

    def __bool__(self):
        return any(self.x_part) or any(self.y_part)

    @property
    def coordinates(self) -> list:
        return list(self.x_part) + list(self.y_part)


@dataclass(frozen=True)
class CentralDerivation:
    """D(x) = d1(x) y_1 + d2(x) y_2 on the x-span, zero on the y-span."""

    d1: tuple
    d2: tuple

    @classmethod
    def from_coefficients(cls, coeffs: Sequence) -> "CentralDerivation":
        n = len(coeffs) // 2
        return cls(tuple(coeffs[:n]), tuple(coeffs[n:]))

    @property
    def coefficients(self) -> list:
        return list(self.d1) + list(self.d2)

    def apply(self, v: Vector) -> Vector:
        return Vector(tuple([ZERO] * len(self.d1)), (dot(self.d1, v.x_part), dot(self.d2, v.x_part)))


@dataclass
class DerivationSpace:
    basis: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, n: int) -> RatMatrix:
        return rat_matrix([d.coefficients for d in self.basis], 2 * n)

    def contains(self, other: "DerivationSpace", n: int) -> bool:
        """span(other) is inside span(self)."""
        if not other.basis:
            return True
        stacked = DerivationSpace(self.basis + other.basis)
        return rank(stacked.matrix(n)) == rank(self.matrix(n)) if self.basis else False


@dataclass
class Center:
    """Z(g) = span(y_1, y_2) plus the x-directions in ker A and ker B."""

    x_basis: list
    y_dim: int = 2

    @property
    def dim(self) -> int:
        return len(self.x_basis) + self.y_dim


# ===========================================
# Construction
# ===========================================


def _structure_rows(p: Pencil) -> list:
    """(a_ij, b_ij) for i < j."""
    A, B = p.A.to_list(), p.B.to_list()
    return [[A[i][j], B[i][j]] for i in range(p.n) for j in range(i + 1, p.n)]


def genus(p) -> int:
    """dim span{A, B}, which is dim [g, g]."""
    pencil = p.pencil if isinstance(p, Genus2Algebra) else p
    rows = _structure_rows(pencil)
    return rank(rat_matrix(rows, 2)) if rows else 0


def algebra_from_pencil(p: Pencil, allow_degenerate: bool = False) -> Genus2Algebra:
    """Genus-2 algebra of a pencil.

    With allow_degenerate, dependent but nonzero A, B are accepted and
    span(y_1, y_2) is kept as a central plane containing [g, g].
    """
    g = genus(p)
    if g == 0:
        raise GenusTooLow("A = B = 0: the algebra is abelian")
    if g == 1 and not allow_degenerate:
        raise GenusTooLow("A and B are linearly dependent: dim [g,g] = 1")
    return Genus2Algebra(p, degenerate=g < 2)


def algebra_from_brackets(dim_x: int, brackets: Sequence, allow_degenerate: bool = False) -> Genus2Algebra:
    """Algebra from a list of (i, j, y1, y2) with 1-indexed generators; unlisted brackets are zero."""
    if dim_x < 1:
        raise InvalidPencil("dim_x must be >= 1")
    A = [[ZERO] * dim_x for _ in range(dim_x)]
    B = [[ZERO] * dim_x for _ in range(dim_x)]
    seen = {}
    for i, j, y1, y2 in brackets:
        if not (1 <= i <= dim_x and 1 <= j <= dim_x) or i == j:
            raise InvalidPencil(f"bracket [x_{i}, x_{j}] is out of range for dim_x={dim_x}")
        y1, y2 = rat(y1), rat(y2)
        if i > j:
            i, j, y1, y2 = j, i, -y1, -y2
        if (i, j) in seen and seen[(i, j)] != (y1, y2):
            raise InvalidPencil(f"bracket [x_{i}, x_{j}] is given twice with different values")
        seen[(i, j)] = (y1, y2)
        A[i - 1][j - 1], A[j - 1][i - 1] = y1, -y1
        B[i - 1][j - 1], B[j - 1][i - 1] = y2, -y2
    return algebra_from_pencil(Pencil(rat_matrix(A, dim_x), rat_matrix(B, dim_x)), allow_degenerate)


def brackets_of(g: Genus2Algebra) -> list:
    """Nonzero brackets (i, j, y1, y2), i < j, 1-indexed."""
    A, B = g.A.to_list(), g.B.to_list()
    return [
        (i + 1, j + 1, A[i][j], B[i][j])
        for i in range(g.n)
        for j in range(i + 1, g.n)
        if A[i][j] or B[i][j]
    ]


# ===========================================
# Brackets, center, derived algebra
# ===========================================


def _form(m: list, u: Sequence, v: Sequence) -> Rat:
    return dot(u, [dot(row, v) for row in m])


def bracket(g: Genus2Algebra, u: Vector, v: Vector) -> Vector:
    A, B = g.A.to_list(), g.B.to_list()
    return Vector(
        tuple([ZERO] * g.n),
        (_form(A, u.x_part, v.x_part), _form(B, u.x_part, v.x_part)),
    )


def _stacked(g: Genus2Algebra) -> RatMatrix:
    return rat_matrix(g.A.to_list() + g.B.to_list(), g.n)


def center(g: Genus2Algebra) -> Center:
    return Center(kernel_basis(_stacked(g)))


def derived_algebra(g: Genus2Algebra) -> list:
    """Basis of the y-span reached by brackets, as (c_1, c_2) coefficient pairs."""
    rows = _structure_rows(g.pencil)
    if not rows:
        return []
    reduced, pivots = rref(rat_matrix(rows, 2))
    return [tuple(reduced.to_list()[k]) for k in range(len(pivots))]


def inner_dimension(g: Genus2Algebra) -> int:
    return g.n - len(center(g).x_basis)


# ===========================================
# Derivations
# ===========================================


def ad(g: Genus2Algebra, i: int) -> CentralDerivation:
    """ad(x_i), 1-indexed: d1 is row i of A, d2 row i of B."""
    return CentralDerivation(tuple(g.A.to_list()[i - 1]), tuple(g.B.to_list()[i - 1]))


def central_derivations(g: Genus2Algebra) -> DerivationSpace:
    """All (d1, d2) vanishing on the central x-directions."""
    n = g.n
    central = center(g).x_basis
    forms = kernel_basis(rat_matrix(central, n)) if central else identity_matrix(n).to_list()
    zeros = [ZERO] * n
    basis = [CentralDerivation(tuple(w), tuple(zeros)) for w in forms]
    basis += [CentralDerivation(tuple(zeros), tuple(w)) for w in forms]
    return DerivationSpace(basis)


def centrality_rows(g: Genus2Algebra) -> list:
    """Rows on (d1 | d2) forcing both forms to vanish on ker A and ker B."""
    n = g.n
    rows = []
    for w in center(g).x_basis:
        rows.append(list(w) + [ZERO] * n)
        rows.append([ZERO] * n + list(w))
    return rows


def inner_basis(g: Genus2Algebra) -> DerivationSpace:
    """The independent ad(x_i), chosen by pivot columns."""
    n = g.n
    columns = [ad(g, i + 1).coefficients for i in range(n)]
    by_column = rat_matrix([[columns[i][k] for i in range(n)] for k in range(2 * n)], n)
    _, pivots = rref(by_column)
    return DerivationSpace([ad(g, i + 1) for i in pivots])


def derivation_matrix(g: Genus2Algebra, D: CentralDerivation) -> RatMatrix:
    """(n+2) x (n+2) matrix of D in the basis (x_1..x_n, y_1, y_2), acting on columns."""
    n = g.n
    rows = [[ZERO] * (n + 2) for _ in range(n + 2)]
    for j in range(n):
        rows[n][j] = D.d1[j]
        rows[n + 1][j] = D.d2[j]
    return rat_matrix(rows, n + 2)


def _apply(matrix: list, v: Vector) -> Vector:
    coords = v.coordinates
    image = [dot(row, coords) for row in matrix]
    n = len(v.x_part)
    return Vector(tuple(image[:n]), tuple(image[n:]))


def is_derivation(g: Genus2Algebra, D) -> bool:
    """D[u, v] = [Du, v] + [u, Dv] on all basis pairs; D is a CentralDerivation or a full matrix."""
    matrix = (derivation_matrix(g, D) if isinstance(D, CentralDerivation) else D).to_list()
    n = g.n
    basis = [Vector.x(n, i + 1) for i in range(n)] + [Vector.y(n, 1), Vector.y(n, 2)]
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            u, v = basis[a], basis[b]
            lhs = _apply(matrix, bracket(g, u, v))
            rhs = bracket(g, _apply(matrix, u), v) + bracket(g, u, _apply(matrix, v))
            if lhs != rhs:
                return False
    return True
