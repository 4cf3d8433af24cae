"""Custom exceptions for the pgraph library."""

from typing import Any, Optional


class PGraphError(Exception):
    """Base class for every error raised by the library."""

    pass


class GraphValidationError(PGraphError):
    """Raised when a graph violates a construction invariant."""

    def __init__(self, message: str, record: Optional[Any] = None):
        super().__init__(message if record is None else f"{message}: {record!r}")
        self.record = record


class GraphParseError(PGraphError):
    """Raised when a graph document cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field {field}")
        suffix = f" ({', '.join(location)})" if location else ""
        super().__init__(f"{message}{suffix}")
        self.line = line
        self.field = field


class VertexOutOfRangeError(PGraphError):
    """Raised when a vertex id is outside 0..n-1."""

    pass


class NotInteriorError(PGraphError):
    """Raised when an operator is evaluated at a vertex outside the interior."""

    pass


class ExponentError(PGraphError):
    """Raised when p is outside the range an operation permits."""

    pass


class NonNegativityError(PGraphError):
    """Raised when a function required to be nonnegative takes a negative value."""

    pass


class SupportError(PGraphError):
    """Raised when a test function is not supported where the operation requires."""

    pass


class HypothesisError(PGraphError):
    """Raised when the hypothesis of a check does not hold on the given input."""

    pass


class EmptyGridError(PGraphError):
    """Raised when a grid scan has no admissible points left."""

    pass


class ConfigError(PGraphError):
    """Raised for inconsistent run configuration."""

    pass
