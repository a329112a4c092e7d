# =============================================================================
# rope_algebra/exceptions.py - Error Hierarchy and Exit Codes
# =============================================================================

from typing import Any, Optional


class RopeAlgebraError(Exception):
    """Base error. ``detail`` is the machine-readable payload, ``exit_code``
    what the CLI returns when the error escapes a command."""

    exit_code: int = 1

    def __init__(self, message: str, detail: Optional[Any] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def __str__(self) -> str:
        if self.detail is None:
            return self.message
        return f"{self.message} ({self.detail})"


class DimensionError(RopeAlgebraError, ValueError):
    """Shapes do not agree."""


class DomainError(RopeAlgebraError, ValueError):
    """Argument outside the operation's domain."""


class OrthogonalityError(DomainError):
    """A basis change failed the orthogonality check; ``detail`` holds the residual."""


class StateError(RopeAlgebraError):
    """Object lacks the state an operation needs."""


class ResourceError(RopeAlgebraError):
    """Requested work exceeds a configured limit."""


class InconsistencyError(RopeAlgebraError):
    """Input was not produced by the generator set it is checked against."""


class UsageError(RopeAlgebraError):
    exit_code = 2


class ParseError(RopeAlgebraError):
    exit_code = 2
