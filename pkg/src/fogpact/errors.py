"""Exception types raised across the package."""


class FogpactError(Exception):
    """Base class for all package errors."""


class SingularMatrix(FogpactError, ArithmeticError):
    """A matrix that must be inverted is singular or numerically close to it."""


class NotPsd(FogpactError, ValueError):
    """A matrix expected to be positive semi-definite is not."""


class NotSymmetric(FogpactError, ValueError):
    pass


class DimensionMismatch(FogpactError, ValueError):
    pass


class InvalidInstance(FogpactError, ValueError):
    """Market data violating one of the instance invariants."""


class UtilityOverflow(FogpactError, OverflowError):
    """CARA exponent above the cap; the parameters are degenerate."""


class InvalidPerturbation(FogpactError, ValueError):
    """A perturbed or swept instance is no longer valid."""


class NoConvergence(FogpactError, RuntimeError):
    pass


class BadDimension(FogpactError, ValueError):
    """Single-bonus dimension out of range."""


class InvalidProfile(FogpactError, ValueError):
    pass


class InvalidSweep(FogpactError, ValueError):
    pass
