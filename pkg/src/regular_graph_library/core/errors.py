"""Error types shared across the graph library."""

from enum import Enum
from typing import Any


class ErrorCode(str, Enum):
    """Machine-readable error codes carried by every library error."""

    INVALID_SPEC = "invalid_spec"
    RETRY_EXHAUSTED = "retry_exhausted"
    DISCONNECTED_GRAPH = "disconnected_graph"
    UNDEFINED_FOR_K_BELOW_2 = "undefined_for_k_below_2"
    NON_CONVERGENCE = "non_convergence"
    INSUFFICIENT_SAMPLE = "insufficient_sample"
    OUT_OF_RANGE = "out_of_range"
    CONFIG_MISMATCH = "config_mismatch"
    MALFORMED_GRAPH6 = "malformed_graph6"
    MALFORMED_GRAPH = "malformed_graph"
    LIBRARY_VALIDATION = "library_validation"


class GraphLibraryError(Exception):
    """Base error for the graph library.

    Attributes:
        code: Error code identifying the failure class.
        message: Human-readable description.
        details: Structured context (parameters, offending values).
    """

    code: ErrorCode = ErrorCode.INVALID_SPEC

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> dict[str, Any]:
        """Render the error as a structured diagnostic."""
        return {"error": self.code.value, "message": self.message, **self.details}


class InvalidSpecError(GraphLibraryError):
    """Parameters do not describe a constructible graph or run."""

    code = ErrorCode.INVALID_SPEC


class RetryExhaustedError(GraphLibraryError):
    """A rejection sampler used up its attempt budget."""

    code = ErrorCode.RETRY_EXHAUSTED


class DisconnectedGraphError(GraphLibraryError):
    """A metric that needs a connected graph received a disconnected one."""

    code = ErrorCode.DISCONNECTED_GRAPH


class UndefinedClusteringError(GraphLibraryError):
    """Clustering is undefined for degree below 2."""

    code = ErrorCode.UNDEFINED_FOR_K_BELOW_2


class ConvergenceError(GraphLibraryError):
    """An iterative computation did not converge within its iteration cap."""

    code = ErrorCode.NON_CONVERGENCE


class InsufficientSampleError(GraphLibraryError):
    """A statistic received fewer values than it needs."""

    code = ErrorCode.INSUFFICIENT_SAMPLE


class BinOutOfRangeError(GraphLibraryError):
    """A clustering value lies outside the feasible range."""

    code = ErrorCode.OUT_OF_RANGE


class ConfigMismatchError(GraphLibraryError):
    """Samples built under different parameters were combined."""

    code = ErrorCode.CONFIG_MISMATCH


class MalformedGraph6Error(GraphLibraryError):
    """A graph6 line could not be decoded."""

    code = ErrorCode.MALFORMED_GRAPH6


class MalformedGraphError(GraphLibraryError):
    """An edge list is not a simple graph on the declared vertex set."""

    code = ErrorCode.MALFORMED_GRAPH


class LibraryValidationError(GraphLibraryError):
    """An on-disk library failed verification."""

    code = ErrorCode.LIBRARY_VALIDATION
