"""Campaign tasks: picklable units of graph generation and their seeds."""

import logging
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from regular_graph_library.core import X4Rule, graph6_encode
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
from regular_graph_library.library.binning import BinAssigner
from regular_graph_library.library.models import RunConfig
from regular_graph_library.metrics import clustering_coefficient

logger = logging.getLogger(__name__)

# [(graph6, chi), ...] in generation order
CampaignOutput = list[tuple[str, float]]

# Uniform draws added to the cave chain as closure starting points.
CLOSURE_EXTRA_STARTS = 20

_STREAMS = {"WM": 1, "CC": 2, "closure": 3, "subsample": 4}


class TaskKind(str, Enum):
    """Kind of campaign task."""

    WM_DRAWS = "wm"
    CC_WALK = "cc"
    CLOSURE = "closure"

    @property
    def source(self) -> Source:
        return {
            TaskKind.WM_DRAWS: Source.WM,
            TaskKind.CC_WALK: Source.CC,
            TaskKind.CLOSURE: Source.CLOSURE,
        }[self]


def derive_seed(master: int, n: int, stream: str, index: int) -> int:
    """Deterministic 63-bit seed for one task, independent of scheduling."""
    sequence = np.random.SeedSequence([master, n, _STREAMS[stream], index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0] & ((1 << 63) - 1))


@dataclass(frozen=True)
class CampaignTask:
    """One independently seeded generation task."""

    n: int
    k: int
    kind: TaskKind
    run_index: int
    seed: int
    draws: int = 0
    per_bin_cap: int | None = None
    batch_cap: int = 20
    abort_limit: int = 500
    max_steps: int = 200_000
    target_per_bin: int = 1000
    x4_rule: X4Rule = X4Rule.ALTER

    @property
    def source(self) -> Source:
        return self.kind.source


def cave_chain_available(n: int, k: int) -> bool:
    return n % (k + 1) == 0 and n // (k + 1) >= 2


def plan_tasks(config: RunConfig, n: int) -> list[CampaignTask]:
    """Every campaign task of one graph size, in a fixed order."""
    k = config.k
    template = CampaignTask(
        n=n,
        k=k,
        kind=TaskKind.WM_DRAWS,
        run_index=0,
        seed=0,
        batch_cap=config.batch_cap,
        abort_limit=config.abort_limit,
        max_steps=config.max_steps,
        target_per_bin=config.target_per_bin,
        x4_rule=config.x4_rule,
    )
    tasks: list[CampaignTask] = []

    shard_draws = np.array_split(np.arange(config.wm_draws), config.wm_shards)
    for shard, block in enumerate(shard_draws):
        if block.size == 0:
            continue
        tasks.append(
            replace(
                template,
                run_index=shard,
                seed=derive_seed(config.seed, n, "WM", shard),
                draws=int(block.size),
                per_bin_cap=config.target_per_bin,
            )
        )

    if cave_chain_available(n, k):
        for run in range(config.cc_runs):
            tasks.append(
                replace(
                    template,
                    kind=TaskKind.CC_WALK,
                    run_index=run,
                    seed=derive_seed(config.seed, n, "CC", run),
                )
            )
    else:
        logger.warning("n=%d is not a multiple of k+1=%d; CC source skipped", n, k + 1)

    if n <= config.exhaustive_max_n:
        tasks.append(
            replace(
                template,
                kind=TaskKind.CLOSURE,
                seed=derive_seed(config.seed, n, "closure", 0),
            )
        )
    return tasks


def run_campaign_task(task: CampaignTask) -> CampaignOutput:
    """Execute one task; module-level so process pools can pickle it."""
    binner = BinAssigner(n=task.n, k=task.k)
    rng = np.random.default_rng(task.seed)

    if task.kind is TaskKind.WM_DRAWS:
        produced = wm_campaign(
            task.n,
            task.k,
            task.draws,
            binner,
            rng,
            per_bin_cap=task.per_bin_cap,
            seed=task.seed,
        )
        return [(graph6_encode(item.graph), item.chi) for item in produced]

    if task.kind is TaskKind.CC_WALK:
        cfg = WalkConfig(
            batch_cap=task.batch_cap,
            abort_limit=task.abort_limit,
            seed=task.seed,
            target_per_bin=task.target_per_bin,
            max_steps=task.max_steps,
            x4_rule=task.x4_rule,
        )
        produced = build_down_run(cave_chain(CaveChainSpec(task.n, task.k)), cfg, binner)
        return [(graph6_encode(item.graph), item.chi) for item in produced]

    starts = [uniform_regular(task.n, task.k, rng) for _ in range(CLOSURE_EXTRA_STARTS)]
    if cave_chain_available(task.n, task.k):
        starts.insert(0, cave_chain(CaveChainSpec(task.n, task.k)))
    classes = swap_closure(starts, task.x4_rule)
    return [(graph6_encode(g), clustering_coefficient(g)) for g in classes]
