"""Tests for the end-to-end library build and its checkpoints."""

import pytest

from regular_graph_library.canon import DedupIndex
from regular_graph_library.core import degree_check, is_connected
from regular_graph_library.library import (
    CheckpointRepository,
    CollectionMethod,
    LibraryBuilder,
    build_library,
    plan_tasks,
)
from regular_graph_library.library import pipeline as pipeline_module
from regular_graph_library.storage import build_manifest


def _records(library):
    manifest, files = build_manifest(library)
    return manifest.graphs, manifest.bins, files


class TestBuildLibrary:
    """Tests for build_library."""

    @pytest.mark.asyncio
    async def test_small_build(self, small_run_config):
        """Test the structure of a desk-sized build."""
        library = await build_library(small_run_config)
        partition = library.partitions[10]
        assert partition.method == CollectionMethod.SAMPLED
        assert partition.assigner.bin_count == 14
        assert library.graph_count == partition.graph_count > 0

        index: DedupIndex[None] = DedupIndex()
        for b, final_bin in partition.bins.items():
            stats = final_bin.statistics
            assert len(final_bin.entries) <= small_run_config.batch_size
            assert stats.final_size == len(final_bin.entries)
            assert stats.merged_size == len(final_bin.merged_entries) >= stats.final_size
            assert stats.wm_noniso <= stats.wm_raw
            assert stats.cc_noniso <= stats.cc_raw
            assert stats.wm_only + stats.cc_only + stats.overlap == stats.merged_size
            for entry in final_bin.entries:
                assert entry.bin_index == b
                assert entry.form is not None
                assert entry.mean_distance is not None
                assert degree_check(entry.graph) and is_connected(entry.graph)
                assert index.insert(entry.graph)

        assert sum(b.statistics.wm_raw for b in partition.bins.values()) <= 60
        # the cave chain opens every build-down run
        assert partition.bins[13].statistics.cc_raw >= 1

    @pytest.mark.asyncio
    async def test_empty_size_list(self, small_run_config):
        """Test that no sizes give an empty library."""
        config = small_run_config.model_copy(update={"n_values": []})
        library = await build_library(config)
        assert library.partitions == {}
        assert library.graph_count == 0

    @pytest.mark.asyncio
    async def test_deterministic(self, small_run_config):
        """Test that equal configurations build equal libraries."""
        first = await build_library(small_run_config)
        second = await LibraryBuilder(small_run_config).build()
        assert _records(first) == _records(second)

    @pytest.mark.asyncio
    async def test_size_without_cave_chain(self, small_run_config):
        """Test that sizes off the cave-chain lattice use pairing draws only."""
        config = small_run_config.model_copy(update={"n_values": [12]})
        library = await build_library(config)
        stats = [b.statistics for b in library.partitions[12].bins.values()]
        assert sum(s.cc_raw for s in stats) == 0
        assert sum(s.wm_only for s in stats) == sum(s.merged_size for s in stats)

    @pytest.mark.asyncio
    async def test_closure_has_own_provenance(self, small_run_config):
        """Test that closure classes are not counted as build-down output."""
        config = small_run_config.model_copy(update={"n_values": [8], "exhaustive_max_n": 8})
        library = await build_library(config)
        stats = [b.statistics for b in library.partitions[8].bins.values()]
        assert sum(s.cc_raw for s in stats) == 0
        assert sum(s.wm_only for s in stats) == sum(s.wm_noniso for s in stats)
        for s in stats:
            assert s.wm_only + s.cc_only + s.overlap + s.closure_only == s.merged_size

    @pytest.mark.slow
    @pytest.mark.asyncio
    async def test_exhaustive_small_size(self, small_run_config):
        """Test that the closure collects all 59 classes on 10 vertices."""
        config = small_run_config.model_copy(update={"exhaustive_max_n": 10})
        library = await build_library(config)
        partition = library.partitions[10]
        assert partition.method == CollectionMethod.EXHAUSTIVE
        assert sum(b.statistics.merged_size for b in partition.bins.values()) == 59

    @pytest.mark.slow
    @pytest.mark.asyncio
    async def test_worker_count_does_not_change_result(self, small_run_config):
        """Test that a process pool builds the same library as one worker."""
        pooled = small_run_config.model_copy(update={"workers": 2})
        assert _records(await build_library(pooled)) == _records(
            await build_library(small_run_config)
        )


class TestCheckpoints:
    """Tests for checkpointed builds."""

    @pytest.mark.asyncio
    async def test_repository_round(self, db_session, small_run_config):
        """Test save, get, count and clear."""
        repo = CheckpointRepository()
        digest = small_run_config.digest()
        task = plan_tasks(small_run_config, 10)[0]

        assert await repo.get(digest, task) is None
        await repo.save(digest, task, [("I?h]Dgo[?", 0.25)])
        assert await repo.get(digest, task) == [("I?h]Dgo[?", 0.25)]
        assert await repo.count(digest) == 1
        assert await repo.count("other") == 0

        await repo.clear(digest)
        assert await repo.count(digest) == 0

    @pytest.mark.asyncio
    async def test_resume_skips_completed_tasks(
        self, db_session, small_run_config, monkeypatch
    ):
        """Test that a second build reads every task from the store."""
        repo = CheckpointRepository()
        first = await build_library(small_run_config, repo)
        assert await repo.count(small_run_config.digest()) == len(
            plan_tasks(small_run_config, 10)
        )

        def fail(task):
            raise AssertionError(f"task {task} was rerun")

        monkeypatch.setattr(pipeline_module, "run_campaign_task", fail)
        resumed = await build_library(small_run_config, repo)
        assert _records(resumed) == _records(first)

    @pytest.mark.asyncio
    async def test_session_needs_open_store(self):
        """Test that a session on a closed store raises instead of connecting."""
        from regular_graph_library.db import close_database, get_session

        await close_database()
        with pytest.raises(RuntimeError, match="not open"):
            async with get_session():
                pass

    @pytest.mark.asyncio
    async def test_session_rolls_back_on_error(self, db_session, small_run_config):
        """Test that a failing session body leaves no checkpoint behind."""
        from regular_graph_library.db import CampaignCheckpointModel, get_session
        from regular_graph_library.library.checkpoint import checkpoint_id

        repo = CheckpointRepository()
        digest = small_run_config.digest()
        task = plan_tasks(small_run_config, 10)[0]
        with pytest.raises(ValueError):
            async with get_session() as session:
                session.add(
                    CampaignCheckpointModel(
                        id=checkpoint_id(digest, task),
                        config_digest=digest,
                        n=task.n,
                        k=task.k,
                        source=task.source.value,
                        run_index=task.run_index,
                        seed=task.seed,
                        graphs=[],
                        metadata_={},
                    )
                )
                await session.flush()
                raise ValueError("abort")
        assert await repo.count(digest) == 0


class TestTelemetry:
    """Tests for the build tracer setup."""

    @pytest.mark.parametrize(
        ("name", "expected"),
        [
            ("always_on", "AlwaysOnSampler"),
            ("always_off", "AlwaysOffSampler"),
            ("traceidratio", "TraceIdRatioBased{0.25}"),
            ("parentbased_always_off", "ParentBased{root:AlwaysOffSampler,"),
            ("parentbased_traceidratio", "ParentBased{root:TraceIdRatioBased{0.25},"),
        ],
    )
    def test_sampler_names(self, name, expected):
        """Test that each sampler name maps to its OpenTelemetry sampler."""
        from regular_graph_library.telemetry.setup import _sampler

        assert _sampler(name, 0.25).get_description().startswith(expected)

    def test_disabled_is_noop(self):
        """Test that setup and shutdown do nothing while tracing is off."""
        from regular_graph_library.telemetry import setup as telemetry_setup

        telemetry_setup.setup_telemetry()
        assert telemetry_setup._provider is None
        telemetry_setup.shutdown_telemetry()
