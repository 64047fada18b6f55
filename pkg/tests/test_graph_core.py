"""Tests for the graph type, the swap primitive and the graph6 codec."""

from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regular_graph_library.core import (
    ErrorCode,
    Graph,
    GraphLibraryError,
    MalformedGraph6Error,
    MalformedGraphError,
    RejectionReason,
    SwapProposal,
    SwapRejection,
    X4Rule,
    apply_swap,
    degree_check,
    enumerate_proposals,
    graph6_decode,
    graph6_encode,
    is_connected,
    normalize_edge,
    propose_swap,
)
from regular_graph_library.generators import CaveChainSpec, cave_chain, uniform_regular


class TestGraph:
    """Tests for the immutable graph type."""

    def test_k5_is_regular_and_connected(self, k5):
        """Test that K5 passes both structural checks."""
        assert k5.edge_count == 10
        assert degree_check(k5)
        assert is_connected(k5)
        assert k5.degrees().tolist() == [4] * 5

    def test_neighbors_sorted(self, cave_chain_10):
        """Test that neighbor tuples are sorted and agree with the table."""
        for v, nb in enumerate(cave_chain_10.neighbors):
            assert list(nb) == sorted(nb)
            assert all(cave_chain_10.has_edge(v, w) for w in nb)

    def test_adjacency_read_only(self, k5):
        """Test that the adjacency table cannot be modified."""
        with pytest.raises(ValueError):
            k5.adjacency[0, 1] = False

    def test_equality_ignores_derived_views(self, k5):
        """Test that graphs with the same edges are equal and hash alike."""
        same = Graph.from_edges(5, 4, [(v, u) for u, v in combinations(range(5), 2)])
        assert same == k5
        assert hash(same) == hash(k5)

    def test_from_edges_rejects_self_loop(self):
        """Test that a self-loop is malformed."""
        with pytest.raises(MalformedGraphError):
            Graph.from_edges(3, 2, [(0, 0), (1, 2)])

    def test_from_edges_rejects_repeated_edge(self):
        """Test that a repeated edge is malformed."""
        with pytest.raises(MalformedGraphError) as exc:
            Graph.from_edges(3, 2, [(0, 1), (1, 0)])
        assert exc.value.code == ErrorCode.MALFORMED_GRAPH

    def test_out_of_range_vertex(self):
        """Test that vertex ids must lie in 0..n-1."""
        with pytest.raises(MalformedGraphError):
            Graph(n=3, k=1, edges=frozenset({(0, 3)}))

    def test_disconnected_graph(self):
        """Test connectivity on two disjoint triangles."""
        g = Graph.from_edges(6, 2, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        assert degree_check(g)
        assert not is_connected(g)

    def test_relabel(self, cave_chain_10):
        """Test that relabeling preserves the structure."""
        labels = list(reversed(range(10)))
        relabeled = cave_chain_10.relabel(labels)
        assert relabeled.edge_count == cave_chain_10.edge_count
        assert nx.is_isomorphic(relabeled.to_networkx(), cave_chain_10.to_networkx())

    def test_normalize_edge(self):
        """Test edge normalization."""
        assert normalize_edge(5, 2) == (2, 5)
        assert normalize_edge(2, 5) == (2, 5)

    def test_errors_serialize(self):
        """Test the error payload shape."""
        error = GraphLibraryError("boom", {"n": 3})
        assert error.to_dict()["message"] == "boom"
        assert error.to_dict()["n"] == 3


class TestApplySwap:
    """Tests for the degree-preserving swap."""

    def test_accepted_swap_preserves_size(self, cave_chain_10):
        """Test a valid swap between the two caves."""
        proposal = SwapProposal(x1=1, x2=2, x3=6, x4=7)
        assert proposal.satisfies(cave_chain_10)
        result = apply_swap(cave_chain_10, proposal)
        assert isinstance(result, Graph)
        assert result.n == 10 and result.k == 4
        assert result.edge_count == cave_chain_10.edge_count
        assert result.has_edge(1, 6) and result.has_edge(2, 7)
        assert not result.has_edge(1, 2) and not result.has_edge(6, 7)
        # input untouched
        assert cave_chain_10.has_edge(1, 2)

    def test_self_loop(self, cave_chain_10):
        """Test that x1 == x3 is rejected as a self-loop."""
        result = apply_swap(cave_chain_10, SwapProposal(x1=1, x2=2, x3=1, x4=3))
        assert isinstance(result, SwapRejection)
        assert result.reason == RejectionReason.SELF_LOOP

    def test_duplicate_edge(self, cave_chain_10):
        """Test that creating an existing edge is rejected."""
        result = apply_swap(cave_chain_10, SwapProposal(x1=1, x2=2, x3=6, x4=3))
        assert isinstance(result, SwapRejection)
        assert result.reason == RejectionReason.DUPLICATE_EDGE

    def test_degree(self, cave_chain_10):
        """Test that x4 = x1 removes an absent edge and fails the degree check."""
        result = apply_swap(cave_chain_10, SwapProposal(x1=1, x2=2, x3=6, x4=1))
        assert isinstance(result, SwapRejection)
        assert result.reason == RejectionReason.DEGREE

    def test_disconnected(self, make_circulant):
        """Test that a swap splitting the graph is rejected."""
        # 8-cycle: replacing {0,1} and {4,5} by {0,5}, {1,4} leaves two 4-cycles
        ring = make_circulant(8, (1,))
        result = apply_swap(ring, SwapProposal(x1=0, x2=1, x3=5, x4=4))
        assert isinstance(result, SwapRejection)
        assert result.reason == RejectionReason.DISCONNECTED

    def test_every_accepted_proposal_changes_graph(self, cave_chain_10):
        """Test all admissible proposals on the n=10 cave chain."""
        accepted = 0
        for proposal in enumerate_proposals(cave_chain_10):
            assert proposal.satisfies(cave_chain_10)
            result = apply_swap(cave_chain_10, proposal)
            if isinstance(result, Graph):
                accepted += 1
                assert result.edges != cave_chain_10.edges
                assert degree_check(result) and is_connected(result)
                assert result.edge_count == 20
        assert accepted > 0


class TestProposeSwap:
    """Tests for random proposals."""

    def test_deterministic_under_seed(self, cave_chain_10):
        """Test that equal seeds give equal proposals."""
        rng_a, rng_b = np.random.default_rng(3), np.random.default_rng(3)
        first = [propose_swap(cave_chain_10, rng_a) for _ in range(20)]
        second = [propose_swap(cave_chain_10, rng_b) for _ in range(20)]
        assert first == second

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_alter_rule_constraints(self, seed):
        """Test that drawn proposals satisfy the selection rules."""
        g = cave_chain(CaveChainSpec(10, 4))
        proposal = propose_swap(g, np.random.default_rng(seed))
        assert isinstance(proposal, SwapProposal)
        assert proposal.satisfies(g, X4Rule.ALTER)
        assert proposal.x4 != proposal.x1

    @settings(max_examples=50, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    def test_literal_rule_never_accepted(self, seed):
        """Test that x4 outside N(x3) can never keep the graph regular."""
        g = cave_chain(CaveChainSpec(10, 4))
        rng = np.random.default_rng(seed)
        proposal = propose_swap(g, rng, X4Rule.LITERAL)
        assert isinstance(proposal, SwapProposal)
        assert proposal.satisfies(g, X4Rule.LITERAL)
        result = apply_swap(g, proposal)
        assert isinstance(result, SwapRejection)
        assert result.reason != RejectionReason.DISCONNECTED

    def test_no_candidates_on_complete_graph(self, k5):
        """Test that K5 leaves no vertex outside the first edge's neighborhoods."""
        result = propose_swap(k5, np.random.default_rng(0))
        assert isinstance(result, SwapRejection)
        assert result.reason == RejectionReason.NO_CANDIDATES


class TestGraph6:
    """Tests for the graph6 codec."""

    def test_empty_graph(self):
        """Test the edgeless graph on five vertices."""
        assert graph6_encode(Graph(n=5, k=0, edges=frozenset())) == "D??"

    def test_k5(self, k5):
        """Test the complete graph on five vertices."""
        assert graph6_encode(k5) == "D~{"
        assert graph6_decode("D~{") == k5

    def test_header_and_whitespace(self, k5):
        """Test that the optional header and newline are accepted."""
        assert graph6_decode(">>graph6<<D~{\n") == k5

    def test_decode_with_nominal_degree(self):
        """Test that k can be given explicitly."""
        assert graph6_decode("D??", k=0).k == 0

    @pytest.mark.parametrize("line", ["", "   ", "D?", "D~{~", "D\x7f?"])
    def test_malformed(self, line):
        """Test rejection of truncated, overlong and out-of-range input."""
        with pytest.raises(MalformedGraph6Error):
            graph6_decode(line)

    def test_matches_networkx(self, cave_chain_10):
        """Test bit-exact agreement with the networkx writer."""
        expected = nx.to_graph6_bytes(cave_chain_10.to_networkx(), header=False)
        assert graph6_encode(cave_chain_10) == expected.decode("ascii").strip()

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(min_value=5, max_value=30),
        seed=st.integers(min_value=0, max_value=2**32 - 1),
    )
    def test_round_trip_generated(self, n, seed):
        """Test decode(encode(g)) == g on uniform 4-regular graphs."""
        g = uniform_regular(n, 4, np.random.default_rng(seed))
        assert graph6_decode(graph6_encode(g), 4) == g
