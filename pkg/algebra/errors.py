"""
SKEWAID - Errors
Every computation-level failure is a ValueError subclass.
"""


class SkewAidError(ValueError):
    """Base class for invalid input and unsupported input classes."""


class InvalidPencil(SkewAidError):
    """Shape mismatch or a coefficient matrix that is not skew-symmetric."""


class IrreducibleFactorTooLarge(SkewAidError):
    """A polynomial has an irreducible factor of degree >= 3 over Q."""


class ModulusMismatch(SkewAidError):
    """Quadratic-extension values with different moduli were mixed."""


class PairingViolation(SkewAidError):
    """An elementary divisor occurs an odd number of times."""


class SizeIdentityViolation(SkewAidError):
    """Divisor pairs and minimal indices do not add up to the pencil size."""


class InvalidSpec(SkewAidError):
    """A block specification has out-of-range parameters."""


class UnrealizableSpec(SkewAidError):
    """No canonical block list realizes the requested invariants."""


class GenusTooLow(SkewAidError):
    """The structure matrices do not span a 2-dimensional commutator."""
