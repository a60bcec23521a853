"""Exception types shared across the package."""


class PrmHullError(Exception):
    """Base class for all package-specific errors."""


class NotPrimeError(PrmHullError):
    """A field characteristic (or claimed prime power) is not valid."""


class ReducibleModulusError(PrmHullError):
    """A user-supplied modulus polynomial is not irreducible."""


class DegreeMismatchError(PrmHullError):
    """A polynomial does not have the required degree or leading coefficient."""


class DivisionByZeroError(PrmHullError):
    """Multiplicative inverse of zero was requested."""


class DimensionMismatchError(PrmHullError):
    """Matrix or vector shapes are incompatible for the requested operation."""


class OutOfRangeError(PrmHullError):
    """A parameter lies outside the range where the operation is defined."""


class NotCoveredError(PrmHullError):
    """No closed-form result covers the requested parameters."""


class BadLambdasError(PrmHullError):
    """Witness scalars must be distinct, nonzero, and of the right count."""


class InternalDisagreementError(PrmHullError):
    """Two independent computations of the same quantity disagree."""
