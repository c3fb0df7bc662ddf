"""Error types with the process exit status each one maps to."""

from typing import Optional


class GraphWidthError(Exception):
    """Base class for every error raised by the library."""

    exit_code = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self) -> dict:
        return {
            "type": type(self).__name__,
            "message": self.message,
            "exit_code": self.exit_code,
        }


class InputError(GraphWidthError):
    """Malformed input or a violated precondition.

    Args:
        message: Human readable description
        line: 1-based line of the offending input, if known
        column: 1-based column of the offending input, if known
    """

    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" if column is None else f"line {line}, column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class StructureError(InputError):
    """A building-set member is empty or leaves the ground set."""


class DimensionError(InputError):
    """The full ground set is missing, so the polytope is not full-dimensional."""


class UnboundedError(InputError):
    """A half-space system admits a recession direction."""


class ResourceLimitError(GraphWidthError):
    """A configured enumeration, counting or geometry cap was exceeded."""

    exit_code = 3


class InternalInconsistencyError(GraphWidthError):
    """A certificate or a proven inequality failed to verify."""

    exit_code = 4


class SimplicityError(InternalInconsistencyError):
    """A vertex lies on more facets than the dimension allows."""
