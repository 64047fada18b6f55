"""Core graph representation, checks, swap primitive and graph6 codec."""

from regular_graph_library.core.errors import (
    BinOutOfRangeError,
    ConfigMismatchError,
    ConvergenceError,
    DisconnectedGraphError,
    ErrorCode,
    GraphLibraryError,
    InsufficientSampleError,
    InvalidSpecError,
    LibraryValidationError,
    MalformedGraph6Error,
    MalformedGraphError,
    RetryExhaustedError,
    UndefinedClusteringError,
)
from regular_graph_library.core.graph import (
    Edge,
    Graph,
    degree_check,
    is_connected,
    normalize_edge,
)
from regular_graph_library.core.graph6 import graph6_decode, graph6_encode
from regular_graph_library.core.swap import (
    RejectionReason,
    SwapProposal,
    SwapRejection,
    X4Rule,
    apply_swap,
    enumerate_proposals,
    propose_swap,
)

__all__ = [
    # Errors
    "BinOutOfRangeError",
    "ConfigMismatchError",
    "ConvergenceError",
    "DisconnectedGraphError",
    "ErrorCode",
    "GraphLibraryError",
    "InsufficientSampleError",
    "InvalidSpecError",
    "LibraryValidationError",
    "MalformedGraph6Error",
    "MalformedGraphError",
    "RetryExhaustedError",
    "UndefinedClusteringError",
    # Graph
    "Edge",
    "Graph",
    "degree_check",
    "is_connected",
    "normalize_edge",
    # Codec
    "graph6_decode",
    "graph6_encode",
    # Swap
    "RejectionReason",
    "SwapProposal",
    "SwapRejection",
    "X4Rule",
    "apply_swap",
    "enumerate_proposals",
    "propose_swap",
]
