"""Exception types shared across the package.

Every contract violation raises a dedicated subclass of FcensusError so
callers can distinguish usage errors from resource refusals.
"""


class FcensusError(Exception):
    """Base class for all package-specific errors."""


class NonPrime(FcensusError):
    """Field characteristic is not a prime number."""


class FieldTooLarge(FcensusError):
    """Requested field exceeds the implementation cap."""


class DivisionByZero(FcensusError):
    """Multiplicative inverse of zero requested."""


class MixedFields(FcensusError):
    """Operands belong to different fields."""


class NoEmbedding(FcensusError):
    """Source field degree does not divide the target degree."""


class SizeMismatch(FcensusError):
    """Matrix operands have incompatible sizes."""


class AmbientMismatch(FcensusError):
    """Subspaces live in different ambient spaces."""


class NotSemisimple(FcensusError):
    """Operation requires a matrix diagonalizable over the closure."""


class TooManyVertices(FcensusError):
    """Quiver canonicalization cap exceeded."""


class NotBalanced(FcensusError):
    """Operation requires a balanced quiver."""


class DuplicateEigenvalues(FcensusError):
    """Jordan matrix construction needs distinct eigenvalues."""


class NotNilpotent(FcensusError):
    """Operation requires a nilpotent matrix."""


class OutOfRange(FcensusError):
    """Numeric argument outside the documented domain."""


class NotAPowerOfP(FcensusError):
    """q is not a power of the given characteristic p."""


class WrongPartCount(FcensusError):
    """Partition does not have the required number of parts."""


class NotAPartition(FcensusError):
    """Sequence is not a weakly decreasing list of positive integers."""


class NonIntegerResult(FcensusError):
    """An exact count came out non-integral; signals an implementation bug."""


class WorkCapExceeded(FcensusError):
    """Enumeration would exceed the configured work cap."""


class InsufficientData(FcensusError):
    """Not enough data points for an exponent fit."""


class ZeroCount(FcensusError):
    """Exponent fit received a non-positive count."""


class WrongSize(FcensusError):
    """Matrix has the wrong size for this predicate."""


class DegenerateV(FcensusError):
    """Subspace must be proper and nonzero."""
