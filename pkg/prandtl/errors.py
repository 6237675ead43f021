"""
Exception hierarchy shared by the numerical core, the solver and the CLI.
"""

from typing import Optional, Sequence


class PrandtlError(Exception):
    """Base class for every error raised by the package."""


class DomainError(PrandtlError, ValueError):
    """Evaluation outside the real domain (weights, expressions)."""

    def __init__(self, message: str, subexpression: Optional[str] = None):
        if subexpression:
            message = f"{message} in '{subexpression}'"
        super().__init__(message)
        self.subexpression = subexpression


class FuncSyntaxError(PrandtlError, ValueError):
    """Expression text could not be parsed; offset is a byte offset into the text."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ConvergenceError(PrandtlError, ArithmeticError):
    """An iterative or adaptive computation did not reach its tolerance."""

    def __init__(
        self,
        message: str,
        y: Optional[float] = None,
        degrees: Optional[Sequence[int]] = None,
    ):
        if y is not None:
            message = f"{message} (y={y!r}"
            if degrees is not None:
                message += f", j={min(degrees)}..{max(degrees)}"
            message += ")"
        super().__init__(message)
        self.y = y
        self.degrees = degrees


class SingularSystemError(PrandtlError, ArithmeticError):
    """Zero pivot met after partial pivoting."""


class ConfigurationError(PrandtlError, ValueError):
    """Problem parameters violate a precondition of the chosen method."""

    def __init__(self, message: str, violations: Sequence[str] = ()):
        if violations:
            message = f"{message}: " + "; ".join(violations)
        super().__init__(message)
        self.violations = tuple(violations)
