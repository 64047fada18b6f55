"""Isomorphism-class index with a cheap structural pre-filter."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Generic, TypeVar

import numpy as np

from regular_graph_library.canon.labeling import canonical_form
from regular_graph_library.canon.models import CanonicalForm
from regular_graph_library.core import Graph
from regular_graph_library.metrics import distance_matrix, triangle_counts

logger = logging.getLogger(__name__)

T = TypeVar("T")

Fingerprint = tuple[int, int, int, tuple[int, ...], tuple[int, ...]]


def structural_fingerprint(g: Graph) -> Fingerprint:
    """Isomorphism invariant used to bucket graphs before canonical labeling.

    ``(n, k, triangle total, sorted per-vertex triangle counts, distance
    histogram)``; unreachable pairs are counted in histogram slot 0.
    """
    triangles = triangle_counts(g)
    distances = distance_matrix(g)
    finite = np.where(np.isinf(distances), 0, distances).astype(np.int64)
    histogram = np.bincount(finite[np.triu_indices(g.n, 1)], minlength=1)
    return (
        g.n,
        g.k,
        int(triangles.sum()) // 3,
        tuple(sorted(triangles.tolist())),
        tuple(histogram.tolist()),
    )


@dataclass
class IndexedClass(Generic[T]):
    """One stored isomorphism class: representative graph, payload and lazy form."""

    graph: Graph
    payload: T | None = None
    _form: CanonicalForm | None = field(default=None, repr=False)

    @property
    def form(self) -> CanonicalForm:
        if self._form is None:
            self._form = canonical_form(self.graph)
        return self._form


class DedupIndex(Generic[T]):
    """Set of isomorphism classes keyed by structural fingerprint.

    Canonical forms are computed only when a fingerprint bucket already holds
    a class, so most inserts of genuinely new graphs cost one fingerprint.
    Not thread-safe: use one writer per index and :meth:`merge` shards.
    """

    def __init__(self) -> None:
        self._buckets: dict[Fingerprint, list[IndexedClass[T]]] = {}
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def __contains__(self, g: Graph) -> bool:
        return self.find(g) is not None

    def __iter__(self) -> Iterator[IndexedClass[T]]:
        for bucket in self._buckets.values():
            yield from bucket

    @property
    def class_count(self) -> int:
        return self._count

    def _lookup(
        self, g: Graph, fingerprint: Fingerprint
    ) -> tuple[IndexedClass[T] | None, CanonicalForm | None]:
        bucket = self._buckets.get(fingerprint)
        if not bucket:
            return None, None
        form = canonical_form(g)
        for stored in bucket:
            if stored.form == form:
                return stored, form
        return None, form

    def find(self, g: Graph) -> IndexedClass[T] | None:
        """Return the stored class isomorphic to ``g``, if any."""
        stored, _ = self._lookup(g, structural_fingerprint(g))
        return stored

    def setdefault(self, g: Graph, payload: T | None = None) -> tuple[IndexedClass[T], bool]:
        """Return the class of ``g``, storing ``g`` with ``payload`` if it is new.

        Returns:
            The stored class and whether ``g`` opened it.
        """
        fingerprint = structural_fingerprint(g)
        stored, form = self._lookup(g, fingerprint)
        if stored is not None:
            return stored, False
        created = IndexedClass(graph=g, payload=payload, _form=form)
        self._buckets.setdefault(fingerprint, []).append(created)
        self._count += 1
        return created, True

    def insert(self, g: Graph, payload: T | None = None) -> bool:
        """Store ``g`` unless an isomorphic graph is already present.

        Returns:
            True when ``g`` opened a new class.
        """
        return self.setdefault(g, payload)[1]

    def merge(self, *others: "DedupIndex[T]") -> "DedupIndex[T]":
        """Union of this index and ``others`` as a new index.

        Earlier indexes win when the same class appears more than once.
        """
        merged: DedupIndex[T] = DedupIndex()
        for index in (self, *others):
            for stored in index:
                merged.setdefault(stored.graph, stored.payload)
        return merged

    def forms(self) -> list[CanonicalForm]:
        """Canonical forms of every stored class, in insertion order per bucket."""
        return [stored.form for stored in self]


def dedup_insert(idx: DedupIndex[T], g: Graph, payload: T | None = None) -> bool:
    """Insert ``g`` into ``idx``; True iff no isomorphic graph was stored."""
    return idx.insert(g, payload)
