"""Exception types shared across the package."""


class MdskitError(Exception):
    """Base class for every package-specific error."""


class NotPrime(MdskitError, ValueError):
    """The requested field characteristic is not a prime number."""


class NotIrreducible(MdskitError, ValueError):
    """The defining polynomial factors over its prime field."""


class FieldMismatch(MdskitError, ValueError):
    """Operands belong to different fields."""


class DivisionByZero(MdskitError, ZeroDivisionError):
    """Inversion (or a negative power) of the zero element."""


class ParseError(MdskitError, ValueError):
    """Malformed element, field or matrix text."""


class DimensionMismatch(MdskitError, ValueError):
    """Matrix shapes are incompatible for the requested operation."""


class NotSquare(MdskitError, ValueError):
    """A square matrix is required."""


class Singular(MdskitError, ArithmeticError):
    """The matrix has no inverse."""


class SingularFactor(Singular):
    """A factor that must be inverted during a construction is singular."""


class IndexOutOfRange(MdskitError, IndexError):
    """Row or column selection outside the matrix."""


class OrderTooLarge(MdskitError):
    """Matrix order exceeds the exhaustive-scan cap; raise the cap explicitly."""


class TooLarge(MdskitError):
    """Problem size exceeds a brute-force enumeration cap."""


class RankOutOfRange(MdskitError, ValueError):
    """Weight-hierarchy index r outside 1..k."""


class DegreeOutOfRange(MdskitError, ValueError):
    """Symmetric-polynomial degree outside 0..n."""


class NotStandardForm(MdskitError, ValueError):
    """Generator matrix is not of the form [I | A]."""


class ConditionViolated(MdskitError):
    """An input family fails the subset condition required by a construction.

    ``witness`` carries the offending subset (indices, and elements when
    available) or ``None`` when the failure is an absence (no zero subset).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class SelfCheckFailed(MdskitError):
    """A constructed matrix failed its independent verification."""


class OddOrder(MdskitError, ValueError):
    """The involutory construction needs an even matrix order."""


class NotCharTwo(MdskitError, ValueError):
    """The construction is only available in characteristic two."""


class ExponentCollision(MdskitError, ValueError):
    """Two exponents coincide modulo the order of the chosen element."""


class ExponentTooSmall(MdskitError, ValueError):
    """The power m is below the admissible range."""


class RootMismatch(MdskitError, ValueError):
    """The supplied roots do not belong to the polynomial."""


class RepeatedRoot(MdskitError, ValueError):
    """A root family must consist of pairwise distinct roots."""
