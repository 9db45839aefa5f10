"""Exceptions for turanlab."""
from typing import Optional, Tuple

from .const import (
    ERROR_INDETERMINATE,
    ERROR_INTERNAL_INCONSISTENCY,
    ERROR_INVALID_ARGUMENT,
    ERROR_NOT_ORIENTABLE,
    ERROR_RESOURCE_LIMIT,
    ERROR_UNKNOWN,
    ERROR_UNSUPPORTED_SIZE,
)


class TuranLabError(Exception):
    """Base error with a machine-readable code."""

    code = ERROR_UNKNOWN


class InvalidArgumentError(TuranLabError, ValueError):
    """An argument violates an operation's precondition."""

    code = ERROR_INVALID_ARGUMENT


class UnsupportedSizeError(TuranLabError):
    """Input is larger than the configured limit for an exhaustive routine."""

    code = ERROR_UNSUPPORTED_SIZE


class ResourceLimitError(TuranLabError):
    """Materializing the result would exceed the configured edge guard."""

    code = ERROR_RESOURCE_LIMIT


class InternalInconsistencyError(TuranLabError):
    """Two independent computations of the same quantity disagree."""

    code = ERROR_INTERNAL_INCONSISTENCY


class NotOrientableError(TuranLabError):
    """The hypergraph admits no orientation; carries the bottle that proves it."""

    code = ERROR_NOT_ORIENTABLE

    def __init__(self, certificate, message: Optional[str] = None):
        """Initialize with the certificate."""
        self.certificate = certificate
        super().__init__(message or f"not orientable: bottle {list(certificate.sequence)}")


class IndeterminateError(TuranLabError):
    """Interval arithmetic could not decide a comparison."""

    code = ERROR_INDETERMINATE

    def __init__(self, triple: Tuple[int, int, int], message: Optional[str] = None):
        """Initialize with the undecided triple."""
        self.triple = triple
        super().__init__(message or f"cannot certify angle comparison for triple {triple}")
