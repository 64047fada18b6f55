"""Tests for the cave chain, the build-down walk and the pairing-model sampler."""

from collections import Counter

import numpy as np
import pytest
from scipy.stats import chisquare

from regular_graph_library.canon import DedupIndex
from regular_graph_library.core import (
    InvalidSpecError,
    RetryExhaustedError,
    X4Rule,
    degree_check,
    is_connected,
)
from regular_graph_library.generators import (
    CaveChainSpec,
    Source,
    WalkConfig,
    build_down_run,
    cave_chain,
    swap_closure,
    uniform_regular,
    wm_campaign,
)
from regular_graph_library.generators import build_down as build_down_module
from regular_graph_library.library import BinAssigner
from regular_graph_library.metrics import clustering_coefficient, max_clustering


class _TriangleFreeBinner:
    """Two bins: triangle-free graphs and everything else."""

    bin_count = 2

    def assign(self, chi):
        return 1 if chi == 0 else 0


class TestCaveChain:
    """Tests for the maximum-clustering start graph."""

    @pytest.mark.parametrize("n", [10, 15, 20, 25, 30, 50])
    def test_attains_max_clustering(self, n):
        """Test that every cave chain of 4-regular caves has clustering 0.7."""
        g = cave_chain(CaveChainSpec(n, 4))
        assert degree_check(g)
        assert is_connected(g)
        assert clustering_coefficient(g) == pytest.approx(0.7, abs=1e-12)

    @pytest.mark.parametrize("k", [2, 3, 5, 6])
    def test_other_degrees(self, k):
        """Test the bound 1 - 6/(k(k+1)) for other degrees."""
        g = cave_chain(CaveChainSpec(3 * (k + 1), k))
        assert degree_check(g)
        assert clustering_coefficient(g) == pytest.approx(max_clustering(k), abs=1e-12)

    def test_two_caves_layout(self, cave_chain_10):
        """Test the bridges between the two caves."""
        assert cave_chain_10.has_edge(0, 9)
        assert cave_chain_10.has_edge(4, 5)
        assert not cave_chain_10.has_edge(0, 4)
        assert not cave_chain_10.has_edge(5, 9)

    @pytest.mark.parametrize("n,k", [(12, 4), (5, 4), (0, 4), (6, 1)])
    def test_invalid_spec(self, n, k):
        """Test sizes that admit no cave chain."""
        with pytest.raises(InvalidSpecError):
            cave_chain(CaveChainSpec(n, k))


class TestBuildDown:
    """Tests for the cave-chain random walk."""

    @staticmethod
    def _config(**overrides):
        params = {
            "batch_cap": 5,
            "abort_limit": 50,
            "seed": 11,
            "target_per_bin": 10,
            "max_steps": 3_000,
        }
        params.update(overrides)
        return WalkConfig(**params)

    def test_zero_batch_cap(self, cave_chain_10):
        """Test that a zero cap collects nothing."""
        binner = BinAssigner(n=10, k=4)
        assert build_down_run(cave_chain_10, self._config(batch_cap=0), binner) == []

    def test_start_deposited_first(self, cave_chain_10):
        """Test that the cave chain opens the batch."""
        batch = build_down_run(cave_chain_10, self._config(), BinAssigner(n=10, k=4))
        assert batch[0].graph == cave_chain_10
        assert batch[0].chi == pytest.approx(0.7)

    def test_batch_invariants(self):
        """Test regularity, caps, provenance and batch-local uniqueness."""
        start = cave_chain(CaveChainSpec(15, 4))
        binner = BinAssigner(n=15, k=4)
        cfg = self._config()
        batch = build_down_run(start, cfg, binner)
        assert len(batch) > 1

        index: DedupIndex[None] = DedupIndex()
        for item in batch:
            assert degree_check(item.graph) and is_connected(item.graph)
            assert item.source == Source.CC
            assert item.seed == cfg.seed
            assert item.chi <= 0.7 + 1e-12
            assert item.bin_index == binner.assign(item.chi)
            assert index.insert(item.graph)
        per_bin = Counter(item.bin_index for item in batch)
        assert max(per_bin.values()) <= cfg.batch_cap

    def test_deterministic(self, cave_chain_10):
        """Test that a seeded run repeats exactly."""
        binner = BinAssigner(n=10, k=4)
        first = build_down_run(cave_chain_10, self._config(seed=5), binner)
        second = build_down_run(cave_chain_10, self._config(seed=5), binner)
        assert [g.graph for g in first] == [g.graph for g in second]

    def test_walk_moves_down(self):
        """Test that the walk reaches clustering below the start."""
        start = cave_chain(CaveChainSpec(20, 4))
        batch = build_down_run(start, self._config(abort_limit=200), BinAssigner(n=20, k=4))
        assert min(item.chi for item in batch) < 0.7

    def test_literal_rule_never_moves(self, cave_chain_10):
        """Test that a walk whose swaps always fail keeps only the start."""
        cfg = self._config(x4_rule=X4Rule.LITERAL, abort_limit=30)
        batch = build_down_run(cave_chain_10, cfg, BinAssigner(n=10, k=4))
        assert [item.graph for item in batch] == [cave_chain_10]

    @staticmethod
    def _scripted_walk(monkeypatch, script):
        """Replace swap proposal and application by a fixed sequence of results."""
        steps = iter(script)
        monkeypatch.setattr(build_down_module, "propose_swap", lambda current, rng, rule: None)
        monkeypatch.setattr(build_down_module, "apply_swap", lambda current, proposal: next(steps))

    def test_revisit_of_undeposited_graph_moves(self, monkeypatch, cave_chain_10, make_circulant):
        """Test that only deposited graphs count as batch duplicates."""
        passed_through = make_circulant(10, (1, 2))
        triangle_free = make_circulant(10, (1, 3))
        self._scripted_walk(monkeypatch, [passed_through, passed_through, triangle_free])

        cfg = self._config(batch_cap=1, target_per_bin=1, abort_limit=1)
        batch = build_down_run(cave_chain_10, cfg, _TriangleFreeBinner())
        assert [item.graph for item in batch] == [cave_chain_10, triangle_free]

    def test_revisit_of_deposited_graph_aborts(self, monkeypatch, cave_chain_10, make_circulant):
        """Test that returning to a deposited class counts as an abort."""
        self._scripted_walk(monkeypatch, [cave_chain_10, make_circulant(10, (1, 3))])

        cfg = self._config(batch_cap=1, target_per_bin=1, abort_limit=1)
        batch = build_down_run(cave_chain_10, cfg, _TriangleFreeBinner())
        assert [item.graph for item in batch] == [cave_chain_10]

    def test_config_rejects_cap_above_target(self):
        """Test that the batch cap may not exceed the per-bin target."""
        with pytest.raises(ValueError):
            WalkConfig(batch_cap=30, target_per_bin=10)


class TestSwapClosure:
    """Tests for the exhaustive class enumeration."""

    def test_octahedron(self):
        """Test that the only connected 4-regular graph on 6 vertices is found."""
        rng = np.random.default_rng(0)
        classes = swap_closure([uniform_regular(6, 4, rng) for _ in range(3)])
        assert len(classes) == 1

    def test_classes_are_distinct(self):
        """Test that closure representatives are valid and pairwise distinct."""
        rng = np.random.default_rng(1)
        classes = swap_closure([uniform_regular(8, 4, rng) for _ in range(5)])
        assert 1 <= len(classes) <= 6
        index: DedupIndex[None] = DedupIndex()
        for g in classes:
            assert degree_check(g) and is_connected(g)
            assert index.insert(g)

    def test_max_classes(self, cave_chain_10):
        """Test the optional early stop."""
        classes = swap_closure([cave_chain_10], max_classes=3)
        assert 3 <= len(classes) < 59

    @pytest.mark.slow
    def test_quartic_census_n10(self, cave_chain_10):
        """Test that the closure finds all 59 classes on 10 vertices."""
        rng = np.random.default_rng(2)
        starts = [cave_chain_10, *(uniform_regular(10, 4, rng) for _ in range(20))]
        assert len(swap_closure(starts)) == 59


class TestUniformRegular:
    """Tests for the pairing-model sampler."""

    def test_regular_and_connected(self):
        """Test validity of draws."""
        rng = np.random.default_rng(4)
        for n in (6, 11, 20, 35):
            g = uniform_regular(n, 4, rng)
            assert degree_check(g) and is_connected(g)

    def test_uniform_over_labeled_five_cycles(self):
        """Test uniformity: n=5, k=2 yields each of the 12 labeled 5-cycles equally."""
        rng = np.random.default_rng(12345)
        counts = Counter(uniform_regular(5, 2, rng).edges for _ in range(2_400))
        assert len(counts) == 12
        assert chisquare(list(counts.values())).pvalue > 0.01

    @pytest.mark.parametrize("n,k", [(5, 3), (4, 4), (3, 4)])
    def test_invalid_spec(self, n, k):
        """Test degree/size combinations with no regular graph."""
        with pytest.raises(InvalidSpecError):
            uniform_regular(n, k, np.random.default_rng(0))

    def test_retry_exhausted(self):
        """Test the attempt budget."""
        with pytest.raises(RetryExhaustedError):
            uniform_regular(10, 4, np.random.default_rng(0), max_attempts=0)


class TestWmCampaign:
    """Tests for the binned pairing-model campaign."""

    def test_per_bin_cap(self):
        """Test that no bin exceeds its cap."""
        binner = BinAssigner(n=15, k=4)
        batch = wm_campaign(15, 4, 200, binner, np.random.default_rng(9), per_bin_cap=7, seed=9)
        per_bin = Counter(item.bin_index for item in batch)
        assert max(per_bin.values()) <= 7
        assert all(item.source == Source.WM and item.seed == 9 for item in batch)

    def test_uncapped_keeps_every_draw(self):
        """Test that without a cap every draw is kept."""
        binner = BinAssigner(n=10, k=4)
        batch = wm_campaign(10, 4, 25, binner, np.random.default_rng(3))
        assert len(batch) == 25

    def test_deterministic(self):
        """Test that equal seeds give equal campaigns."""
        binner = BinAssigner(n=12, k=4)
        first = wm_campaign(12, 4, 20, binner, np.random.default_rng(21))
        second = wm_campaign(12, 4, 20, binner, np.random.default_rng(21))
        assert [item.graph for item in first] == [item.graph for item in second]
