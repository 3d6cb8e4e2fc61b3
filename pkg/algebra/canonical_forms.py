"""
SKEWAID - Canonical Forms
Canonical skew pencil blocks F(inf,e), F(alpha,f), C(a,b,m), M_eps (plus the
companion block for quadratic pairs without rational (a, b)), direct sums,
and the canonical pencil realizing given invariants.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from algebra.errors import InvalidSpec, SizeIdentityViolation, UnrealizableSpec
from algebra.exact_arith import (
    ONE,
    ZERO,
    discriminant,
    poly_coeffs,
    poly_from_coeffs,
    poly_str,
    rat,
    rat_matrix,
    rat_str,
    rational_sqrt,
)
from algebra.pencil_invariants import (
    ElementaryDivisor,
    Pencil,
    PencilInvariants,
    complex_parts,
)

BLOCK_KINDS = ("inf", "finite", "complex", "companion", "minidx")

# Parameter pools for random specs
SWEEP_ALPHAS = ("0", "1", "-2", "3/2")
SWEEP_COMPLEX = (("0", "1"), ("1", "1"), ("-1/2", "2"))


# ===========================================
# Block specifications
# ===========================================


@dataclass(frozen=True)
class BlockSpec:
    """One canonical block. `exponent` is e, f or m; `epsilon` is the minimal index."""

    kind: str
    exponent: int = 0
    alpha: Optional[object] = None
    a: Optional[object] = None
    b: Optional[object] = None
    modulus: Optional[tuple] = None
    epsilon: int = 0

    @classmethod
    def inf(cls, e: int) -> "BlockSpec":
        return cls("inf", exponent=e)

    @classmethod
    def finite(cls, alpha, f: int) -> "BlockSpec":
        return cls("finite", exponent=f, alpha=rat(alpha))

    @classmethod
    def complex(cls, a, b, m: int) -> "BlockSpec":
        return cls("complex", exponent=m, a=rat(a), b=rat(b))

    @classmethod
    def companion(cls, modulus, m: int) -> "BlockSpec":
        coeffs = modulus if isinstance(modulus, (list, tuple)) else poly_coeffs(modulus)
        return cls("companion", exponent=m, modulus=tuple(rat(c) for c in coeffs))

    @classmethod
    def minidx(cls, eps: int) -> "BlockSpec":
        return cls("minidx", epsilon=eps)

    def validate(self) -> "BlockSpec":
        if self.kind not in BLOCK_KINDS:
            raise InvalidSpec(f"unknown block kind {self.kind!r}")
        if self.kind == "minidx":
            if self.epsilon < 0:
                raise InvalidSpec("minimal index must be >= 0")
            return self
        if self.exponent < 1:
            raise InvalidSpec(f"{self.kind} block needs exponent >= 1")
        if self.kind == "finite" and self.alpha is None:
            raise InvalidSpec("finite block needs alpha")
        if self.kind == "complex" and (self.a is None or not self.b):
            raise InvalidSpec("complex block needs a and b != 0")
        if self.kind == "companion":
            if not self.modulus or len(self.modulus) != 3 or self.modulus[2] != ONE:
                raise InvalidSpec("companion block needs a monic quadratic modulus [v, u, 1]")
            if rational_sqrt(discriminant(poly_from_coeffs(self.modulus))) is not None:
                raise InvalidSpec("companion modulus must be irreducible over Q")
        return self

    @property
    def size(self) -> int:
        if self.kind == "minidx":
            return 2 * self.epsilon + 1
        if self.kind in ("complex", "companion"):
            return 4 * self.exponent
        return 2 * self.exponent

    @property
    def label(self) -> str:
        if self.kind == "inf":
            return f"F(inf,{self.exponent})"
        if self.kind == "finite":
            return f"F({rat_str(self.alpha)},{self.exponent})"
        if self.kind == "complex":
            return f"C({rat_str(self.a)},{rat_str(self.b)},{self.exponent})"
        if self.kind == "companion":
            return f"Q({poly_str(poly_from_coeffs(self.modulus))},{self.exponent})"
        return f"M{self.epsilon}"

    def divisor(self) -> Optional[ElementaryDivisor]:
        """The single divisor pair this block carries (None for minimal-index blocks)."""
        if self.kind == "inf":
            return ElementaryDivisor.infinite(self.exponent)
        if self.kind == "finite":
            return ElementaryDivisor.finite(self.alpha, self.exponent)
        if self.kind == "complex":
            # (lam - a)^2 + b^2
            modulus = (self.a * self.a + self.b * self.b, -2 * self.a, ONE)
            return ElementaryDivisor.quadratic(list(modulus), self.exponent)
        if self.kind == "companion":
            return ElementaryDivisor.quadratic(list(self.modulus), self.exponent)
        return None


@dataclass(frozen=True)
class CanonicalSpec:
    blocks: tuple

    def __post_init__(self):
        if not self.blocks:
            raise InvalidSpec("a canonical spec needs at least one block")
        for block in self.blocks:
            block.validate()

    @property
    def n(self) -> int:
        return sum(block.size for block in self.blocks)

    @property
    def label(self) -> str:
        return " + ".join(block.label for block in self.blocks)


# ===========================================
# Block construction
# ===========================================


def _zeros(n: int) -> list:
    return [[ZERO] * n for _ in range(n)]


def _skew_from_upper(upper: list, top: int, bottom: int) -> list:
    """[[0, X], [-X^t, 0]] with X of shape top x bottom."""
    n = top + bottom
    m = _zeros(n)
    for i in range(top):
        for j in range(bottom):
            x = upper[i][j]
            if x:
                m[i][top + j] = x
                m[top + j][i] = -x
    return m


def _delta(e: int) -> list:
    return [[ONE if i + j == e - 1 else ZERO for j in range(e)] for i in range(e)]


def _lambda(e: int) -> list:
    return [[ONE if i + j == e and i >= 1 else ZERO for j in range(e)] for i in range(e)]


def _combine(x: list, cx, y: list, cy) -> list:
    return [[cx * p + cy * q for p, q in zip(rx, ry)] for rx, ry in zip(x, y)]


def _identity(n: int) -> list:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def _pencil(a_upper: list, b_upper: list, top: int, bottom: int) -> Pencil:
    n = top + bottom
    return Pencil(
        rat_matrix(_skew_from_upper(a_upper, top, bottom), n),
        rat_matrix(_skew_from_upper(b_upper, top, bottom), n),
    )


def _complex_band(a, b, m: int):
    """mu- and lam-parts of T_m: R on the block anti-diagonal, mu*Delta_2 just below it."""
    size = 2 * m
    t_mu, t_lam = _zeros(size), _zeros(size)
    r_mu = [[-b, -a], [-a, b]]
    r_lam = [[ZERO, ONE], [ONE, ZERO]]
    for bi in range(m):
        for bj in range(m):
            if bi + bj == m - 1:
                for i in range(2):
                    for j in range(2):
                        t_mu[2 * bi + i][2 * bj + j] = r_mu[i][j]
                        t_lam[2 * bi + i][2 * bj + j] = r_lam[i][j]
            elif bi + bj == m and bi >= 1:
                t_mu[2 * bi][2 * bj + 1] = ONE
                t_mu[2 * bi + 1][2 * bj] = ONE
    return t_mu, t_lam


def _companion(coeffs: list) -> list:
    """Companion matrix of the monic polynomial with coefficients lowest-first."""
    k = len(coeffs) - 1
    c = _zeros(k)
    for i in range(1, k):
        c[i][i - 1] = ONE
    for i in range(k):
        c[i][k - 1] = -coeffs[i]
    return c


def build_block(spec: BlockSpec) -> Pencil:
    spec.validate()
    e = spec.exponent
    if spec.kind == "inf":
        return _pencil(_delta(e), _lambda(e), e, e)
    if spec.kind == "finite":
        return _pencil(_combine(_delta(e), -spec.alpha, _lambda(e), ONE), _delta(e), e, e)
    if spec.kind == "complex":
        t_mu, t_lam = _complex_band(spec.a, spec.b, e)
        return _pencil(t_mu, t_lam, 2 * e, 2 * e)
    if spec.kind == "companion":
        power = poly_from_coeffs(spec.modulus) ** e
        c = _companion(poly_coeffs(power))
        size = 2 * e
        minus_c = [[-x for x in row] for row in c]
        return _pencil(minus_c, _identity(size), size, size)
    eps = spec.epsilon
    if eps == 0:
        return Pencil(rat_matrix([[0]]), rat_matrix([[0]]))
    l_mu = [[ONE if i == j + 1 else ZERO for j in range(eps)] for i in range(eps + 1)]
    l_lam = [[ONE if i == j else ZERO for j in range(eps)] for i in range(eps + 1)]
    return _pencil(l_mu, l_lam, eps + 1, eps)


def direct_sum(pencils: list) -> Pencil:
    """Block-diagonal pencil."""
    if not pencils:
        raise InvalidSpec("direct sum of no pencils")
    if len(pencils) == 1:
        return pencils[0]
    n = sum(p.n for p in pencils)
    a_rows, b_rows = _zeros(n), _zeros(n)
    offset = 0
    for p in pencils:
        for i, (ra, rb) in enumerate(zip(p.A.to_list(), p.B.to_list())):
            for j in range(p.n):
                a_rows[offset + i][offset + j] = ra[j]
                b_rows[offset + i][offset + j] = rb[j]
        offset += p.n
    return Pencil(rat_matrix(a_rows, n), rat_matrix(b_rows, n))


def build_spec(spec: CanonicalSpec) -> Pencil:
    return direct_sum([build_block(block) for block in spec.blocks])


# ===========================================
# Invariants <-> specs
# ===========================================


def invariants_of_spec(spec: CanonicalSpec) -> PencilInvariants:
    """The invariants a spec declares (no computation on matrices)."""
    pairs = [d for d in (block.divisor() for block in spec.blocks) if d is not None]
    indices = [block.epsilon for block in spec.blocks if block.kind == "minidx"]
    return PencilInvariants.build(spec.n, pairs, indices)


def spec_from_invariants(inv: PencilInvariants, allow_companion: bool = False) -> CanonicalSpec:
    """Block list realizing inv, ordered inf, finite, quadratic, minimal indices.

    Real-split quadratic pairs have no canonical block; they are realized by a
    companion block only when allow_companion is set.
    """
    try:
        inv.check_size()
    except SizeIdentityViolation as e:
        raise UnrealizableSpec(str(e))
    blocks = []
    for kind in ("inf", "finite", "quad"):
        for d in (d for d in inv.divisor_pairs if d.kind == kind):
            if d.kind == "inf":
                blocks.append(BlockSpec.inf(d.exponent))
            elif d.kind == "finite":
                blocks.append(BlockSpec.finite(d.alpha, d.exponent))
            elif d.is_real_split:
                if not allow_companion:
                    raise UnrealizableSpec(
                        f"quadratic pair {poly_str(d.modulus_poly)} has real roots; "
                        "it is two real finite pairs and has no rational canonical block"
                    )
                blocks.append(BlockSpec.companion(d.modulus, d.exponent))
            else:
                parts = complex_parts(d.modulus)
                if parts is None:
                    blocks.append(BlockSpec.companion(d.modulus, d.exponent))
                else:
                    blocks.append(BlockSpec.complex(parts[0], parts[1], d.exponent))
    blocks.extend(BlockSpec.minidx(e) for e in inv.minimal_indices)
    if not blocks:
        raise UnrealizableSpec("no blocks: invariants of an empty pencil")
    return CanonicalSpec(tuple(blocks))


def canonical_from_invariants(inv: PencilInvariants, allow_companion: bool = False) -> Pencil:
    return build_spec(spec_from_invariants(inv, allow_companion))


# ===========================================
# Random specs
# ===========================================


def _random_block(rng) -> BlockSpec:
    kind = BLOCK_KINDS[int(rng.integers(0, 5))]
    if kind == "inf":
        return BlockSpec.inf(int(rng.integers(1, 4)))
    if kind == "finite":
        return BlockSpec.finite(SWEEP_ALPHAS[int(rng.integers(0, len(SWEEP_ALPHAS)))], int(rng.integers(1, 4)))
    if kind == "complex":
        a, b = SWEEP_COMPLEX[int(rng.integers(0, len(SWEEP_COMPLEX)))]
        return BlockSpec.complex(a, b, int(rng.integers(1, 3)))
    if kind == "companion":
        # lam^2 + lam + 1: complex roots, irrational imaginary part
        return BlockSpec.companion([1, 1, 1], int(rng.integers(1, 3)))
    return BlockSpec.minidx(int(rng.integers(0, 5)))


def random_spec(seed: int, min_blocks: int = 2, max_blocks: int = 4, max_n: int = 24) -> CanonicalSpec:
    """Seeded multi-block spec with max_n bounding the pencil size.

    All-M0 draws are rejected since their algebra is abelian.
    """
    rng = np.random.default_rng(seed)
    while True:
        count = int(rng.integers(min_blocks, max_blocks + 1))
        blocks = tuple(_random_block(rng) for _ in range(count))
        if sum(b.size for b in blocks) > max_n:
            continue
        if all(b.kind == "minidx" and b.epsilon == 0 for b in blocks):
            continue
        return CanonicalSpec(_ordered(blocks))


def _ordered(blocks) -> tuple:
    order = {"inf": 0, "finite": 1, "complex": 2, "companion": 2, "minidx": 3}
    return tuple(sorted(blocks, key=lambda b: order[b.kind]))
