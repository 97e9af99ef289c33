"""Exception hierarchy shared by every sub-package."""

from typing import Any, Optional


class ZoError(Exception):
    """Base class for all library errors."""


class UsageError(ZoError, ValueError):
    """A precondition of a public operation was violated."""


class ConfigError(UsageError):
    """An experiment configuration is invalid."""


class EvaluationError(ZoError, ArithmeticError):
    """The objective returned a non-finite value.

    Args:
        message: Human readable description
        x: The query point that produced the value
    """

    def __init__(self, message: str, x: Any = None) -> None:
        super().__init__(message)
        self.x = x


class DivergenceError(ZoError):
    """An optimizer iterate left the finite / bounded region.

    Args:
        message: Human readable description
        state: Last finite optimizer state
        trace: Partial run trace up to the abort
    """

    def __init__(self, message: str, state: Any = None, trace: Any = None) -> None:
        super().__init__(message)
        self.state = state
        self.trace = trace


class ParseError(ZoError, ValueError):
    """A LIBSVM line could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class NumericalError(ZoError, ArithmeticError):
    """An iterative numerical routine did not converge."""

    def __init__(self, message: str, residual: float = float("nan")) -> None:
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ConsistencyError(ZoError, RuntimeError):
    """A computed quantity violates a bound it must satisfy by construction."""
