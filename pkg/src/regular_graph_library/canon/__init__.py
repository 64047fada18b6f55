"""Canonical forms and isomorphism deduplication."""

from regular_graph_library.canon.index import (
    DedupIndex,
    IndexedClass,
    dedup_insert,
    structural_fingerprint,
)
from regular_graph_library.canon.labeling import canonical_form, canonical_labeling
from regular_graph_library.canon.models import CanonicalForm

__all__ = [
    # Models
    "CanonicalForm",
    # Labeling
    "canonical_form",
    "canonical_labeling",
    # Index
    "DedupIndex",
    "IndexedClass",
    "dedup_insert",
    "structural_fingerprint",
]
