"""Exception hierarchy shared by every contest_lab module."""


class ContestError(Exception):
    """Base class for all library errors."""


class InvalidInputError(ContestError, ValueError):
    """Inputs violate a documented precondition."""


class UnsupportedSizeError(InvalidInputError):
    """Instance too large for the exact rational path."""


class NumericalFailureError(ContestError, ArithmeticError):
    """A numerical self-check failed.

    ``residual`` carries the achieved deviation (e.g. ``sum(p) - 1``).
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class RefusedAnalysisError(InvalidInputError):
    """The requested analysis is undefined for this input (e.g. fitting zero gaps)."""
