"""Tests for canonical labeling and the isomorphism index."""

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regular_graph_library.canon import (
    DedupIndex,
    canonical_form,
    canonical_labeling,
    dedup_insert,
    structural_fingerprint,
)
from regular_graph_library.core import graph6_decode
from regular_graph_library.generators import uniform_regular


def _shuffled(g, seed):
    labels = np.random.default_rng(seed).permutation(g.n).tolist()
    return g.relabel(labels)


class TestCanonicalForm:
    """Tests for canonical forms."""

    def test_labeling_is_permutation(self, cave_chain_10):
        """Test that the labeling is a bijection on the vertices."""
        assert sorted(canonical_labeling(cave_chain_10)) == list(range(10))

    def test_relabel_invariant(self, cave_chain_10, c10_12):
        """Test that shuffled copies share a form."""
        for g in (cave_chain_10, c10_12):
            form = canonical_form(g)
            for seed in range(5):
                shuffled = canonical_form(_shuffled(g, seed))
                assert shuffled == form
                assert shuffled.graph6 == form.graph6
                assert shuffled.digest == form.digest

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_relabel_invariant_generated(self, seed):
        """Test relabel invariance on uniform 4-regular graphs."""
        g = uniform_regular(14, 4, np.random.default_rng(seed))
        assert canonical_form(_shuffled(g, seed)) == canonical_form(g)

    def test_separates_non_isomorphic(self, cave_chain_10, c10_12):
        """Test that different classes get different forms."""
        assert canonical_form(cave_chain_10) != canonical_form(c10_12)

    def test_vertex_transitive_graphs(self, make_circulant):
        """Test circulants that refinement alone cannot split."""
        # C12(1,5) and C12(1,3) are both vertex-transitive and triangle-free
        first = make_circulant(12, (1, 5))
        second = make_circulant(12, (1, 3))
        same = nx.is_isomorphic(first.to_networkx(), second.to_networkx())
        assert (canonical_form(first) == canonical_form(second)) == same
        assert canonical_form(_shuffled(first, 3)) == canonical_form(first)

    def test_agrees_with_networkx(self):
        """Test form equality against networkx isomorphism on random pairs."""
        rng = np.random.default_rng(6)
        graphs = [uniform_regular(9, 4, rng) for _ in range(12)]
        for a in graphs[:6]:
            for b in graphs[6:]:
                expected = nx.is_isomorphic(a.to_networkx(), b.to_networkx())
                assert (canonical_form(a) == canonical_form(b)) == expected

    def test_graph6_decodes_to_isomorphic_graph(self, cave_chain_10):
        """Test that the stored canonical line is a relabeled copy."""
        form = canonical_form(cave_chain_10)
        decoded = graph6_decode(form.graph6, 4)
        assert tuple(decoded.sorted_edges()) == form.edges
        assert nx.is_isomorphic(decoded.to_networkx(), cave_chain_10.to_networkx())


class TestDedupIndex:
    """Tests for the isomorphism-class index."""

    def test_insert_and_find(self, cave_chain_10, c10_12):
        """Test that relabeled copies land in the stored class."""
        index: DedupIndex[str] = DedupIndex()
        assert index.insert(cave_chain_10, "cave")
        assert not index.insert(_shuffled(cave_chain_10, 1), "copy")
        assert index.insert(c10_12, "circulant")
        assert len(index) == 2

        found = index.find(_shuffled(cave_chain_10, 2))
        assert found is not None
        assert found.payload == "cave"
        assert found.graph == cave_chain_10
        assert _shuffled(c10_12, 4) in index

    def test_setdefault(self, cave_chain_10):
        """Test that setdefault reports whether a class was opened."""
        index: DedupIndex[int] = DedupIndex()
        first, created = index.setdefault(cave_chain_10, 1)
        again, created_again = index.setdefault(_shuffled(cave_chain_10, 5), 2)
        assert created and not created_again
        assert again is first
        assert again.payload == 1

    def test_merge_keeps_earlier_payload(self, cave_chain_10, c10_12, k5):
        """Test the union of two indexes."""
        left: DedupIndex[str] = DedupIndex()
        right: DedupIndex[str] = DedupIndex()
        left.insert(cave_chain_10, "left")
        right.insert(_shuffled(cave_chain_10, 7), "right")
        right.insert(c10_12, "right")
        right.insert(k5, "right")

        merged = left.merge(right)
        assert len(merged) == 3
        assert merged.find(cave_chain_10).payload == "left"
        assert len(left) == 1

    def test_dedup_insert(self, k5):
        """Test the functional form."""
        index: DedupIndex[None] = DedupIndex()
        assert dedup_insert(index, k5)
        assert not dedup_insert(index, _shuffled(k5, 0))

    def test_random_sample_matches_networkx_classes(self):
        """Test class counts against pairwise networkx isomorphism."""
        rng = np.random.default_rng(10)
        graphs = [uniform_regular(8, 4, rng) for _ in range(30)]
        representatives: list[nx.Graph] = []
        for g in graphs:
            candidate = g.to_networkx()
            if not any(nx.is_isomorphic(candidate, r) for r in representatives):
                representatives.append(candidate)

        index: DedupIndex[None] = DedupIndex()
        for g in graphs:
            index.insert(g)
        assert len(index) == len(representatives)
        assert len(index.forms()) == len(index)

    def test_fingerprint_invariant(self, cave_chain_10):
        """Test that the pre-filter key ignores labels."""
        assert structural_fingerprint(_shuffled(cave_chain_10, 9)) == structural_fingerprint(
            cave_chain_10
        )

    @pytest.mark.parametrize("count", [0, 1])
    def test_small_indexes(self, count, k5):
        """Test empty and single-class indexes."""
        index: DedupIndex[None] = DedupIndex()
        for _ in range(count):
            index.insert(k5)
        assert index.class_count == count
        assert list(index.forms()) == ([canonical_form(k5)] if count else [])
