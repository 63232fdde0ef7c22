"""Exception types shared by the numerical modules."""


class HyperintError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(HyperintError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleParameter(DomainError):
    """A denominator parameter is zero or a negative integer."""


class InvalidSpec(DomainError):
    """Integral parameters violate the closed-form preconditions."""


class MomentDoesNotExist(DomainError):
    """The requested moment diverges for the given parameters."""


class NoConvergence(HyperintError, ArithmeticError):
    """An iterative method stopped before meeting its tolerance."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value
