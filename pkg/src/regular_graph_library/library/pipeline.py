"""End-to-end library build: campaigns, dedup, merge, subsample."""

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from functools import partial

from regular_graph_library.canon import canonical_form
from regular_graph_library.core import graph6_decode
from regular_graph_library.library.binning import BinAssigner
from regular_graph_library.library.campaigns import (
    CampaignOutput,
    CampaignTask,
    TaskKind,
    derive_seed,
    plan_tasks,
    run_campaign_task,
)
from regular_graph_library.library.checkpoint import CheckpointRepository
from regular_graph_library.library.merge import dedup_sample, merge_and_dedup
from regular_graph_library.library.models import (
    BinnedSample,
    BinStatistics,
    CollectionMethod,
    FinalBin,
    FinalLibrary,
    LibraryPartition,
    RunConfig,
    SampleEntry,
)
from regular_graph_library.library.subsample import subsample_bin
from regular_graph_library.metrics import mean_graph_distance
from regular_graph_library.telemetry import get_tracer

logger = logging.getLogger(__name__)
tracer = get_tracer(__name__)


class LibraryBuilder:
    """Builds a :class:`FinalLibrary` from a :class:`RunConfig`.

    CPU-bound tasks run in a process pool when ``config.workers > 1``.
    Results are consumed in task order, so the library does not depend on
    scheduling. With a checkpoint repository every completed campaign task
    is stored and reused by later builds of the same configuration.
    """

    def __init__(self, config: RunConfig, checkpoints: CheckpointRepository | None = None):
        self.config = config
        self.checkpoints = checkpoints
        self._digest = config.digest()
        self._checkpoint_lock = asyncio.Lock()

    def _create_executor(self) -> Executor:
        if self.config.workers > 1:
            return ProcessPoolExecutor(max_workers=self.config.workers)
        return ThreadPoolExecutor(max_workers=1)

    async def build(self) -> FinalLibrary:
        library = FinalLibrary(config=self.config)
        with tracer.start_as_current_span(
            "build_library",
            attributes={"n_values": list(self.config.n_values), "k": self.config.k},
        ):
            executor = self._create_executor()
            try:
                for n in self.config.n_values:
                    library.partitions[n] = await self._build_size(n, executor)
            finally:
                executor.shutdown(wait=True)
        logger.info(
            "Built library with %d graphs over %d sizes",
            library.graph_count,
            len(library.partitions),
        )
        return library

    async def _run_task(self, task: CampaignTask, executor: Executor) -> CampaignOutput:
        if self.checkpoints is not None:
            async with self._checkpoint_lock:
                cached = await self.checkpoints.get(self._digest, task)
            if cached is not None:
                logger.debug(
                    "Resumed n=%d task=%s run=%d from checkpoint",
                    task.n,
                    task.kind.value,
                    task.run_index,
                )
                return cached

        loop = asyncio.get_running_loop()
        with tracer.start_as_current_span(
            "campaign_task",
            attributes={"n": task.n, "kind": task.kind.value, "run": task.run_index},
        ):
            output = await loop.run_in_executor(executor, run_campaign_task, task)

        if self.checkpoints is not None:
            async with self._checkpoint_lock:
                await self.checkpoints.save(self._digest, task, output)
        return output

    def _raw_samples(
        self,
        n: int,
        assigner: BinAssigner,
        tasks: list[CampaignTask],
        outputs: list[CampaignOutput],
    ) -> dict[TaskKind, BinnedSample]:
        k = self.config.k
        samples = {kind: BinnedSample(n=n, k=k, assigner=assigner) for kind in TaskKind}
        for task, output in zip(tasks, outputs, strict=True):
            target = samples[task.kind]
            for line, chi in output:
                bin_index = assigner.assign(chi)
                full = len(target.bins.get(bin_index, [])) >= self.config.target_per_bin
                if full and task.kind is not TaskKind.CLOSURE:
                    continue
                target.add(
                    SampleEntry(
                        graph=graph6_decode(line, k),
                        chi=chi,
                        source=task.source,
                        seed=task.seed,
                        bin_index=bin_index,
                    )
                )
        return samples

    async def _build_size(self, n: int, executor: Executor) -> LibraryPartition:
        config = self.config
        assigner = BinAssigner(n=n, k=config.k)
        tasks = plan_tasks(config, n)
        logger.info("Building n=%d: %d campaign tasks, %d bins", n, len(tasks), assigner.bin_count)

        outputs = list(await asyncio.gather(*(self._run_task(t, executor) for t in tasks)))
        raw = self._raw_samples(n, assigner, tasks, outputs)
        wm_raw, cc_raw = raw[TaskKind.WM_DRAWS], raw[TaskKind.CC_WALK]
        wm_unique = dedup_sample(wm_raw)
        cc_unique = dedup_sample(cc_raw)
        merged = merge_and_dedup(wm_unique, cc_unique, raw[TaskKind.CLOSURE])
        for entry in merged.entries():
            entry.mean_distance = mean_graph_distance(entry.graph)

        loop = asyncio.get_running_loop()
        bin_indices = sorted(merged.bins)
        with tracer.start_as_current_span("subsample", attributes={"n": n}):
            results = await asyncio.gather(
                *(
                    loop.run_in_executor(
                        executor,
                        partial(
                            subsample_bin,
                            merged.bins[b],
                            batch_size=config.batch_size,
                            draws=config.draws,
                            max_draws=config.max_draws,
                            p_threshold=config.p_threshold,
                            seed=derive_seed(config.seed, n, "subsample", b),
                            null_draws=config.null_draws,
                        ),
                    )
                    for b in bin_indices
                )
            )

        method = (
            CollectionMethod.EXHAUSTIVE
            if n <= config.exhaustive_max_n
            else CollectionMethod.SAMPLED
        )
        partition = LibraryPartition(n=n, k=config.k, assigner=assigner, method=method)
        for b, result in zip(bin_indices, results, strict=True):
            for entry in result.entries:
                entry.form = canonical_form(entry.graph)
            low, high = assigner.interval(b)
            overlap = merged.overlap[b]
            statistics = BinStatistics(
                n=n,
                bin_index=b,
                chi_low=low,
                chi_high=high,
                wm_raw=len(wm_raw.bins.get(b, [])),
                wm_noniso=len(wm_unique.bins.get(b, [])),
                cc_raw=len(cc_raw.bins.get(b, [])),
                cc_noniso=len(cc_unique.bins.get(b, [])),
                wm_only=overlap.wm_only,
                cc_only=overlap.cc_only,
                overlap=overlap.overlap,
                closure_only=overlap.closure_only,
                merged_size=len(merged.bins[b]),
                final_size=len(result.entries),
                merged=result.before,
                final=result.after,
                draws_used=result.draws_used,
                best_p=result.best_p,
            )
            partition.bins[b] = FinalBin(
                bin_index=b,
                entries=result.entries,
                merged_entries=merged.bins[b],
                statistics=statistics,
            )

        logger.info(
            "n=%d: WM %d raw / %d classes, CC %d raw / %d classes, merged %d, final %d",
            n,
            len(wm_raw),
            len(wm_unique),
            len(cc_raw),
            len(cc_unique),
            len(merged),
            partition.graph_count,
        )
        return partition


async def build_library(
    config: RunConfig,
    checkpoints: CheckpointRepository | None = None,
) -> FinalLibrary:
    """Build the library described by ``config``.

    Args:
        config: Run parameters.
        checkpoints: Optional store for resuming interrupted builds.

    Returns:
        The final library; empty when ``config.n_values`` is empty.
    """
    return await LibraryBuilder(config, checkpoints).build()


__all__ = ["LibraryBuilder", "build_library"]
