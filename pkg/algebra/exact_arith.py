"""
SKEWAID - Exact Arithmetic
Rationals, univariate polynomials over Q, quadratic extensions Q(theta)
and dense matrix linear algebra. Everything is exact (sympy polys domains).
"""

import numbers
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from sympy import QQ, Rational, SympifyError, integer_nthroot, sqrt
from sympy.polys.matrices import DomainMatrix
from sympy.polys.rings import PolyElement, ring

from algebra.errors import IrreducibleFactorTooLarge, ModulusMismatch

# ===========================================
# Scalars
# ===========================================
Rat = QQ.dtype
ZERO = QQ(0)
ONE = QQ(1)


def rat(value) -> Rat:
    """Coerce an int, a QQ element or a "p/q" string to a rational."""
    if isinstance(value, str):
        try:
            return QQ.from_sympy(Rational(value.strip()))
        except (SympifyError, TypeError, ValueError):
            raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, bool):
        raise ValueError(f"not a rational number: {value!r}")
    if isinstance(value, numbers.Integral):
        return QQ(int(value))
    if isinstance(value, Rat):
        return value
    if isinstance(value, Rational):
        return QQ.from_sympy(value)
    raise ValueError(f"not a rational number: {value!r}")


def rat_str(q: Rat) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def is_rational_square(q: Rat) -> bool:
    if q < 0:
        return False
    return integer_nthroot(int(q.numerator), 2)[1] and integer_nthroot(int(q.denominator), 2)[1]


def rational_sqrt(q: Rat) -> Optional[Rat]:
    """Exact square root of q when it is rational, else None."""
    if not is_rational_square(q):
        return None
    return QQ(integer_nthroot(int(q.numerator), 2)[0], integer_nthroot(int(q.denominator), 2)[0])


# ===========================================
# Polynomials in QQ[lam]
# ===========================================
QQ_LAM, LAM = ring("lam", QQ)
POLY_DOMAIN = QQ_LAM.to_domain()
Poly = PolyElement


def poly_from_coeffs(coeffs: Iterable) -> Poly:
    """Build a polynomial from coefficients listed lowest degree first."""
    terms = {}
    for k, c in enumerate(coeffs):
        c = rat(c)
        if c:
            terms[(k,)] = c
    return QQ_LAM.from_dict(terms) if terms else QQ_LAM.zero


def poly_coeffs(p: Poly) -> list:
    """Coefficients lowest degree first; [] for the zero polynomial."""
    if not p:
        return []
    return list(reversed(p.to_dense()))


def poly_degree(p: Poly) -> int:
    return p.degree() if p else -1


def poly_eval(p: Poly, x):
    """Horner evaluation; x may be a rational or a QuadExt."""
    acc = x.field(0) if isinstance(x, QuadExt) else ZERO
    for c in p.to_dense() if p else []:
        acc = acc * x + c
    return acc


def poly_str(p: Poly) -> str:
    return str(p).replace("**", "^") if p else "0"


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    if not p and not q:
        return QQ_LAM.zero
    return p.gcd(q).monic()


def rational_content(polys: Iterable) -> Rat:
    """gcd of numerators over lcm of denominators of every coefficient; 0 if all vanish."""
    content = ZERO
    for p in polys:
        if p:
            content = QQ.gcd(content, p.content())
    return content


def _factor_key(item):
    f, _ = item
    return (poly_degree(f), [(abs(c), c) for c in poly_coeffs(f)])


def factor_low_degree(p: Poly) -> list:
    """Monic prime-power factorization when every prime has degree <= 2.

    Factors are sorted by degree, then by coefficients (lowest degree first,
    compared by magnitude and then sign), so that lam < lam-1 < lam+1.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    _, factors = p.factor_list()
    result = []
    for f, e in factors:
        if f.degree() > 2:
            raise IrreducibleFactorTooLarge(
                f"irreducible factor {poly_str(f.monic())} of degree {f.degree()} is not supported"
            )
        result.append((f.monic(), e))
    return sorted(result, key=_factor_key)


def prime_factors(p: Poly) -> list:
    """Distinct monic irreducible factors of any degree, in factor_low_degree order."""
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    _, factors = p.factor_list()
    return [f for f, _ in sorted(((f.monic(), e) for f, e in factors), key=_factor_key)]


def companion_matrix(prime: Poly) -> list:
    """d x d rational matrix whose characteristic polynomial is the monic prime."""
    coeffs = poly_coeffs(prime.monic())
    d = len(coeffs) - 1
    rows = [[ZERO] * d for _ in range(d)]
    for i in range(1, d):
        rows[i][i - 1] = ONE
    for i in range(d):
        rows[i][d - 1] = -coeffs[i]
    return rows


def discriminant(modulus: Poly) -> Rat:
    v, u, _ = poly_coeffs(modulus)
    return u * u - 4 * v


# ===========================================
# Quadratic extensions Q(theta), theta^2 + u*theta + v = 0
# ===========================================
class QuadField:
    """Q(theta) for a monic irreducible quadratic modulus, backed by AlgebraicField."""

    def __init__(self, modulus: Poly):
        coeffs = poly_coeffs(modulus)
        if len(coeffs) != 3 or coeffs[2] != ONE:
            raise ValueError(f"modulus must be a monic quadratic, got {poly_str(modulus)}")
        self.modulus = modulus
        self.v, self.u = coeffs[0], coeffs[1]
        self.discriminant = self.u * self.u - 4 * self.v
        if is_rational_square(self.discriminant):
            raise ValueError(f"modulus {poly_str(modulus)} is reducible over Q")
        root = (-QQ.to_sympy(self.u) + sqrt(QQ.to_sympy(self.discriminant))) / 2
        self.domain = QQ.algebraic_field(root)

    def __eq__(self, other):
        return isinstance(other, QuadField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(tuple(poly_coeffs(self.modulus)))

    def __repr__(self):
        return f"QuadField({poly_str(self.modulus)})"

    @property
    def is_real(self) -> bool:
        return self.discriminant > 0

    def __call__(self, c0=0, c1=0) -> "QuadExt":
        return QuadExt(self, self.domain([rat(c1), rat(c0)]))

    @property
    def theta(self) -> "QuadExt":
        return QuadExt(self, self.domain.unit)

    def wrap(self, value) -> "QuadExt":
        """Wrap a raw domain element (or coerce a rational) into this field."""
        if isinstance(value, QuadExt):
            self._check(value)
            return value
        if isinstance(value, self.domain.dtype):
            return QuadExt(self, value)
        return QuadExt(self, self.domain.convert(rat(value)))

    def _check(self, value: "QuadExt"):
        if value.field != self:
            raise ModulusMismatch(
                f"moduli {poly_str(self.modulus)} and {poly_str(value.field.modulus)} differ"
            )


@dataclass(frozen=True, eq=False)
class QuadExt:
    """c0 + c1*theta in Q(theta)."""

    field: QuadField
    value: object

    @property
    def coeffs(self) -> tuple:
        rep = self.value.to_list()
        rep = [ZERO] * (2 - len(rep)) + list(rep)
        return rep[1], rep[0]

    @property
    def c0(self) -> Rat:
        return self.coeffs[0]

    @property
    def c1(self) -> Rat:
        return self.coeffs[1]

    def _other(self, other):
        if isinstance(other, QuadExt):
            self.field._check(other)
            return other.value
        return self.field.domain.convert(rat(other))

    def __add__(self, other):
        return QuadExt(self.field, self.value + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return QuadExt(self.field, self.value - self._other(other))

    def __rsub__(self, other):
        return QuadExt(self.field, self._other(other) - self.value)

    def __mul__(self, other):
        return QuadExt(self.field, self.value * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        divisor = self._other(other)
        if not divisor:
            raise ZeroDivisionError("division by zero in Q(theta)")
        return QuadExt(self.field, self.field.domain.quo(self.value, divisor))

    def __neg__(self):
        return QuadExt(self.field, -self.value)

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.domain.convert(rat(other))
        except ValueError:
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __repr__(self):
        c0, c1 = self.coeffs
        return f"{rat_str(c0)} + {rat_str(c1)}*theta"


# ===========================================
# Matrices (DomainMatrix over QQ or Q(theta))
# ===========================================
RatMatrix = DomainMatrix


def rat_matrix(rows: Sequence[Sequence], ncols: Optional[int] = None) -> RatMatrix:
    """Dense rational matrix from nested lists of anything rat() accepts."""
    rows = [[rat(x) for x in row] for row in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if any(len(row) != ncols for row in rows):
        raise ValueError("matrix rows have different lengths")
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def zero_matrix(nrows: int, ncols: int, domain=QQ) -> DomainMatrix:
    return DomainMatrix([[domain.zero] * ncols for _ in range(nrows)], (nrows, ncols), domain)


def identity_matrix(n: int, domain=QQ) -> DomainMatrix:
    return DomainMatrix.eye(n, domain).to_dense()


def column(vector: Sequence, domain=QQ) -> DomainMatrix:
    return DomainMatrix([[domain.convert(x)] for x in vector], (len(vector), 1), domain)


def entries(m: DomainMatrix) -> list:
    """Row-major nested list of domain elements."""
    return m.to_list()


def matrices_equal(m1: DomainMatrix, m2: DomainMatrix) -> bool:
    return m1.shape == m2.shape and m1.to_list() == m2.to_list()


def lin_comb(a, m1: RatMatrix, b, m2: RatMatrix) -> RatMatrix:
    """a*m1 + b*m2 for rationals a, b."""
    a, b = rat(a), rat(b)
    rows = [
        [a * x + b * y for x, y in zip(r1, r2)]
        for r1, r2 in zip(m1.to_list(), m2.to_list())
    ]
    return DomainMatrix(rows, m1.shape, QQ)


def determinant(m: RatMatrix) -> Rat:
    return m.det() if m.shape[0] else ONE


def rref(m: DomainMatrix):
    """Reduced row echelon form and pivot columns (leftmost pivots, exact)."""
    nrows, ncols = m.shape
    if nrows == 0 or ncols == 0:
        return m, []
    reduced, pivots = m.rref()
    return reduced.to_dense(), list(pivots)


def rank(m: DomainMatrix) -> int:
    return len(rref(m)[1])


def _kernel_columns(m: DomainMatrix) -> list:
    nrows, ncols = m.shape
    if ncols == 0:
        return []
    if nrows == 0:
        null = identity_matrix(ncols, m.domain)
    else:
        reduced, pivots = rref(m)
        null = reduced.nullspace_from_rref(tuple(pivots))
    return [list(row) for row in null.to_list()]


def kernel_basis(m: RatMatrix) -> list:
    """Right null space over Q, one column (list of Rat) per free variable."""
    return _kernel_columns(m)


def ext_matrix(rows: Sequence[Sequence], field: Optional[QuadField] = None) -> DomainMatrix:
    """Matrix over Q(theta) from QuadExt and rational entries sharing one modulus."""
    if field is None:
        field = next((x.field for row in rows for x in row if isinstance(x, QuadExt)), None)
        if field is None:
            raise ValueError("cannot infer the extension field from rational entries")
    data = [[field.wrap(x).value for x in row] for row in rows]
    ncols = len(data[0]) if data else 0
    return DomainMatrix(data, (len(data), ncols), field.domain)


def kernel_basis_ext(rows: Sequence[Sequence], field: Optional[QuadField] = None) -> list:
    """Right null space over Q(theta); columns are lists of QuadExt."""
    m = ext_matrix(rows, field)
    field = field or next(x.field for row in rows for x in row if isinstance(x, QuadExt))
    return [[QuadExt(field, x) for x in col] for col in _kernel_columns(m)]


def to_ext(m: RatMatrix, field: QuadField) -> DomainMatrix:
    return m.convert_to(field.domain)


def mul(a, b):
    """Product with any QuadExt operand on the left."""
    return b * a if isinstance(b, QuadExt) else a * b


def dot(u: Sequence, v: Sequence):
    acc = ZERO
    for a, b in zip(u, v):
        term = mul(a, b)
        acc = term + acc if isinstance(term, QuadExt) else acc + term
    return acc


Scalar = Union[Rat, QuadExt]
