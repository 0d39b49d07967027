"""Custom exceptions for the application."""
from typing import Any, Dict, Iterable, Optional


class EntropicException(Exception):
    """Base exception for the toolkit."""

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        self.message = message
        self.code = code
        self.details = details or {}
        super().__init__(self.message)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to a serializable error payload."""
        return {
            "error": self.message,
            "code": self.code,
            "details": self.details
        }


class NotFoundError(EntropicException):
    """Named resource not found (variable, inequality, file)."""

    def __init__(
        self,
        resource: str,
        identifier: Any = None,
        message: Optional[str] = None
    ):
        self.resource = resource
        self.identifier = identifier
        msg = message or f"{resource} not found"
        if identifier is not None and message is None:
            msg = f"{resource} '{identifier}' not found"
        super().__init__(msg, code="NOT_FOUND")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.message,
            "code": self.code,
            "resource": self.resource,
            "identifier": str(self.identifier) if self.identifier is not None else None
        }


class ValidationError(EntropicException):
    """Validation error."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        errors: Optional[list] = None
    ):
        self.field = field
        self.errors = errors or []
        super().__init__(message, code="VALIDATION_ERROR")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": self.message,
            "code": self.code,
            "field": self.field,
            "errors": self.errors
        }


class ParseError(EntropicException):
    """Malformed text input, with a 1-based position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(
            f"{message} (line {line}, column {column})",
            code="PARSE_ERROR",
            details={"line": line, "column": column}
        )


class CoordinateError(EntropicException):
    """A subset of systems has no entropy coordinate."""

    def __init__(self, message: str, subset: Iterable[str] = ()):
        self.subset = tuple(subset)
        super().__init__(
            message,
            code="NON_COEXISTING",
            details={"subset": list(self.subset)}
        )


class DimensionMismatchError(EntropicException):
    """Vectors or systems over different coordinate sets."""

    def __init__(self, expected: int, actual: int, message: Optional[str] = None):
        self.expected = expected
        self.actual = actual
        super().__init__(
            message or f"Expected dimension {expected}, got {actual}",
            code="DIMENSION_MISMATCH",
            details={"expected": expected, "actual": actual}
        )


class UsageError(EntropicException):
    """Bad command-line usage."""

    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message, code="USAGE_ERROR")
