"""Immutable simple graph with dense and sparse adjacency views."""

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from regular_graph_library.core.errors import MalformedGraphError

Edge = tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Return the edge ``{u, v}`` as an ordered pair ``(min, max)``."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1`` with nominal degree ``k``.

    Equality and hashing use ``(n, k, edges)`` only. The neighbor tuples and
    the boolean adjacency table are derived on construction; the table is
    read-only. Regularity and connectivity are not enforced here, see
    :func:`degree_check` and :func:`is_connected`.
    """

    n: int
    k: int
    edges: frozenset[Edge]
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    adjacency: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise MalformedGraphError("graph needs at least one vertex", {"n": self.n})
        if self.k < 0:
            raise MalformedGraphError("degree must be non-negative", {"k": self.k})
        table = np.zeros((self.n, self.n), dtype=bool)
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise MalformedGraphError(
                    "edge is not an ordered pair of distinct in-range vertices",
                    {"edge": [u, v], "n": self.n},
                )
            table[u, v] = table[v, u] = True
        table.flags.writeable = False
        lists: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            lists[u].append(v)
            lists[v].append(u)
        object.__setattr__(self, "adjacency", table)
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(nb)) for nb in lists))

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph from an edge list in any orientation.

        Args:
            n: Number of vertices.
            k: Nominal degree.
            edges: Pairs of vertex ids.

        Returns:
            The graph.

        Raises:
            MalformedGraphError: On a self-loop, a repeated edge or an
                out-of-range vertex id.
        """
        normalized: set[Edge] = set()
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if u == v:
                raise MalformedGraphError("self-loop", {"vertex": u})
            edge = normalize_edge(u, v)
            if edge in normalized:
                raise MalformedGraphError("repeated edge", {"edge": list(edge)})
            normalized.add(edge)
        return cls(n=n, k=k, edges=frozenset(normalized))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def relabel(self, labels: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``labels[v]``."""
        return Graph(
            n=self.n,
            k=self.k,
            edges=frozenset(normalize_edge(labels[u], labels[v]) for u, v in self.edges),
        )

    def to_networkx(self) -> nx.Graph:
        """Convert to a :class:`networkx.Graph` with nodes inserted in id order."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges())
        return graph


def degree_check(g: Graph) -> bool:
    """Return True when every vertex has degree exactly ``g.k``."""
    return all(len(nb) == g.k for nb in g.neighbors)


def is_connected(g: Graph) -> bool:
    """Return True when a breadth-first search from vertex 0 reaches every vertex."""
    seen = [False] * g.n
    seen[0] = True
    reached = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == g.n
