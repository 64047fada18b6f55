"""Data models for canonical forms."""

from dataclasses import dataclass, field

from regular_graph_library.core import Edge


@dataclass(frozen=True)
class CanonicalForm:
    """Isomorphism-invariant representation of a graph.

    Two graphs are isomorphic iff their forms compare equal. ``digest`` and
    ``graph6`` are derived from the edges and excluded from comparison.

    Attributes:
        n: Vertex count.
        k: Nominal degree.
        edges: Edge list under the canonical vertex order, sorted.
        graph6: graph6 line of the canonically relabeled graph.
        digest: 64-bit hash of ``graph6``.
    """

    n: int
    k: int
    edges: tuple[Edge, ...]
    graph6: str = field(compare=False)
    digest: int = field(compare=False)
