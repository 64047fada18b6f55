"""Canonical labeling by individualization and color refinement.

Vertices start colored by (degree, triangle count). Refinement repeatedly
splits colors by the multiset of neighbor colors until stable. When the
stable coloring is not discrete, the search individualizes each vertex of
the first smallest non-singleton cell in turn and recurses. Every leaf
(discrete coloring) yields a labeling; the canonical labeling is the one
with the smallest key ``(traces along the path..., encoded edges)``.

Two prunings keep the tree small:

* trace pruning: a node whose trace prefix already exceeds the best key
  cannot lead to the minimum;
* orbit pruning: two leaves with equal encodings give an automorphism, and
  children lying in one orbit of the automorphisms that fix the current path
  span equivalent subtrees, so only one of them is searched.
"""

import hashlib
import logging
from collections.abc import Sequence

from regular_graph_library.canon.models import CanonicalForm
from regular_graph_library.core import Graph, graph6_encode, normalize_edge
from regular_graph_library.metrics import triangle_counts

logger = logging.getLogger(__name__)

Coloring = list[int]
Key = tuple[tuple[int, ...], ...]

# Leaves kept for automorphism detection.
MAX_STORED_LEAVES = 4_096


def _rank(keys: Sequence[object]) -> tuple[Coloring, list[object]]:
    distinct = sorted(set(keys))  # type: ignore[type-var]
    position = {key: i for i, key in enumerate(distinct)}
    return [position[key] for key in keys], distinct


class _LabelingSearch:
    """Search tree state for one graph."""

    def __init__(self, g: Graph):
        self._g = g
        self._n = g.n
        self._neighbors = g.neighbors
        self._best_key: Key | None = None
        self._best_labels: tuple[int, ...] | None = None
        self._leaves: dict[tuple[int, ...], tuple[int, ...]] = {}
        self._automorphisms: list[tuple[int, ...]] = []
        self.nodes = 0

    def run(self) -> tuple[int, ...]:
        triangles = triangle_counts(self._g).tolist()
        initial, _ = _rank([(len(self._neighbors[v]), triangles[v]) for v in range(self._n)])
        colors, trace = self._refine(initial)
        self._search(colors, (trace,), ())
        assert self._best_labels is not None
        return self._best_labels

    def _refine(self, colors: Coloring) -> tuple[Coloring, tuple[int, ...]]:
        """Refine to the coarsest stable coloring; return it with its trace."""
        count = len(set(colors))
        while True:
            signatures = [
                (colors[v], tuple(sorted(colors[u] for u in self._neighbors[v])))
                for v in range(self._n)
            ]
            refined, distinct = _rank(signatures)
            if len(distinct) == count:
                break
            colors, count = refined, len(distinct)
        trace: list[int] = []
        for color, neighbor_colors in distinct:  # type: ignore[misc]
            trace.append(color)
            trace.extend(neighbor_colors)
        return colors, tuple(trace)

    def _target_cell(self, colors: Coloring) -> list[int]:
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        candidates = [cell for _, cell in sorted(cells.items()) if len(cell) > 1]
        if not candidates:
            return []
        return min(candidates, key=len)

    def _individualize(self, colors: Coloring, v: int) -> Coloring:
        ranked, _ = _rank([(c, u != v) for u, c in enumerate(colors)])
        return ranked

    def _encode(self, labels: Sequence[int]) -> tuple[int, ...]:
        n = self._n
        codes = []
        for u, w in self._g.edges:
            a, b = normalize_edge(labels[u], labels[w])
            codes.append(a * n + b)
        return tuple(sorted(codes))

    def _orbit_pruned(self, w: int, explored: list[int], path: tuple[int, ...]) -> bool:
        """True when ``w`` shares an orbit with an explored sibling."""
        if not explored or not self._automorphisms:
            return False
        parent = list(range(self._n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self._automorphisms:
            if any(gamma[p] != p for p in path):
                continue
            for v in range(self._n):
                a, b = find(v), find(gamma[v])
                if a != b:
                    parent[a] = b
        root = find(w)
        return any(find(x) == root for x in explored)

    def _leaf(self, colors: Coloring, prefix: Key) -> None:
        labels = tuple(colors)
        encoding = self._encode(labels)
        previous = self._leaves.get(encoding)
        if previous is not None:
            # previous^-1 o labels maps each vertex to its twin: an automorphism.
            inverse = [0] * self._n
            for v, label in enumerate(previous):
                inverse[label] = v
            self._automorphisms.append(tuple(inverse[label] for label in labels))
        elif len(self._leaves) < MAX_STORED_LEAVES:
            self._leaves[encoding] = labels
        key = prefix + (encoding,)
        if self._best_key is None or key < self._best_key:
            self._best_key = key
            self._best_labels = labels

    def _search(self, colors: Coloring, prefix: Key, path: tuple[int, ...]) -> None:
        self.nodes += 1
        if self._best_key is not None and prefix > self._best_key[: len(prefix)]:
            return
        cell = self._target_cell(colors)
        if not cell:
            self._leaf(colors, prefix)
            return
        explored: list[int] = []
        for w in cell:
            if self._orbit_pruned(w, explored, path):
                continue
            explored.append(w)
            child, trace = self._refine(self._individualize(colors, w))
            self._search(child, prefix + (trace,), path + (w,))


def canonical_labeling(g: Graph) -> tuple[int, ...]:
    """Return ``labels`` with ``labels[v]`` the canonical position of vertex ``v``."""
    search = _LabelingSearch(g)
    labels = search.run()
    logger.debug("Canonical labeling n=%d explored %d nodes", g.n, search.nodes)
    return labels


def canonical_form(g: Graph) -> CanonicalForm:
    """Compute the canonical form of ``g``.

    Relabeling ``g`` by any permutation yields an equal form; non-isomorphic
    graphs yield different forms.
    """
    canonical = g.relabel(canonical_labeling(g))
    line = graph6_encode(canonical)
    digest = int.from_bytes(hashlib.blake2b(line.encode("ascii"), digest_size=8).digest(), "big")
    return CanonicalForm(
        n=g.n,
        k=g.k,
        edges=tuple(canonical.sorted_edges()),
        graph6=line,
        digest=digest,
    )
