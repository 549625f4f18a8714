"""Exception types shared by the numerical and simulation modules.

- :class:`DomainError` -- an argument lies outside the domain of an operation
- :class:`AccuracyError` -- a numerical routine could not reach its tolerance
- :class:`ConfigFileError` -- a pulse configuration file could not be read
"""
from typing import Optional


class DomainError(ValueError):
    """Raised when an argument violates an operation's precondition.

    Example::

        >>> from tfqkd.Analytic import fidelity
        >>> fidelity(-1.0)
        Traceback (most recent call last):
            ...
        tfqkd.Errors.DomainError: fidelity: x must be >= 0, got -1.0
    """


class AccuracyError(ArithmeticError):
    """Raised when an iterative routine stops before meeting its tolerance.

    Attributes:
        estimate: The best estimate reached before giving up.
        error_bound: The error estimate attached to *estimate*.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ConfigFileError(ValueError):
    """Raised when a configuration file is unreadable or malformed.

    Attributes:
        diagnostics: Human-readable, positioned diagnostics (one per problem).
    """

    def __init__(self, source: str, diagnostics: list[str], cause: Optional[Exception] = None):
        self.source = source
        self.diagnostics = diagnostics
        self.cause = cause
        super().__init__("; ".join(diagnostics))
