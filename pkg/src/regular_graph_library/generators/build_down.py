"""Cave-chain build-down random walk and exhaustive swap closure."""

import logging
from collections import Counter, deque
from collections.abc import Iterable

import numpy as np

from regular_graph_library.canon import DedupIndex
from regular_graph_library.core import (
    Graph,
    RejectionReason,
    SwapRejection,
    X4Rule,
    apply_swap,
    enumerate_proposals,
    propose_swap,
)
from regular_graph_library.generators.models import (
    BinLookup,
    GeneratedGraph,
    Source,
    WalkConfig,
)
from regular_graph_library.metrics import clustering_coefficient

logger = logging.getLogger(__name__)


def build_down_run(start: Graph, cfg: WalkConfig, binner: BinLookup) -> list[GeneratedGraph]:
    """Walk away from ``start`` by random swaps, collecting one batch.

    The start graph is deposited first. Each step proposes and applies a
    swap; a rejected swap, or an accepted graph isomorphic to one already
    deposited in this batch, counts as an abort and the walk stays put.
    Otherwise the walk moves to the new graph, which is deposited when its
    clustering bin holds fewer than ``cfg.batch_cap`` graphs. Graphs passed
    through without a deposit may be revisited. Any move resets the abort
    counter.

    The run ends after ``cfg.abort_limit`` consecutive aborts, when every bin
    is full, or after ``cfg.max_steps`` attempts.

    Args:
        start: Connected k-regular starting graph, usually the cave chain.
        cfg: Walk parameters.
        binner: Clustering bin lookup.

    Returns:
        Collected graphs tagged ``CC``, in visiting order.
    """
    if cfg.batch_cap == 0:
        return []

    rng = np.random.default_rng(cfg.seed)
    deposited: DedupIndex[None] = DedupIndex()
    counts: Counter[int] = Counter()
    batch: list[GeneratedGraph] = []
    rejections: Counter[RejectionReason] = Counter()

    def deposit(g: Graph) -> None:
        chi = clustering_coefficient(g)
        bin_index = binner.assign(chi)
        if counts[bin_index] < cfg.batch_cap:
            counts[bin_index] += 1
            deposited.insert(g)
            batch.append(
                GeneratedGraph(
                    graph=g, chi=chi, source=Source.CC, seed=cfg.seed, bin_index=bin_index
                )
            )

    current = start
    deposit(start)

    aborts = 0
    steps = 0
    while aborts < cfg.abort_limit and steps < cfg.max_steps:
        if len(counts) == binner.bin_count and all(c >= cfg.batch_cap for c in counts.values()):
            break
        steps += 1
        proposal = propose_swap(current, rng, cfg.x4_rule)
        if isinstance(proposal, SwapRejection):
            rejections[proposal.reason] += 1
            aborts += 1
            continue
        result = apply_swap(current, proposal)
        if isinstance(result, SwapRejection):
            rejections[result.reason] += 1
            aborts += 1
            continue
        if result in deposited:
            rejections[RejectionReason.ISOMORPHIC] += 1
            aborts += 1
            continue
        current = result
        aborts = 0
        deposit(result)

    logger.debug(
        "Build-down run seed=%d: %d graphs, %d steps, rejections=%s",
        cfg.seed,
        len(batch),
        steps,
        {reason.value: count for reason, count in rejections.items()},
    )
    return batch


def swap_closure(
    starts: Iterable[Graph],
    rule: X4Rule = X4Rule.ALTER,
    max_classes: int | None = None,
) -> list[Graph]:
    """Every isomorphism class reachable from ``starts`` by accepted swaps.

    Breadth-first over classes: each newly found class is expanded by every
    admissible proposal. Only practical where the class count is small.

    Args:
        starts: Connected k-regular graphs of one size.
        rule: Selection rule for x4.
        max_classes: Optional stop once this many classes are known.

    Returns:
        One representative per class, in discovery order.
    """
    index: DedupIndex[None] = DedupIndex()
    found: list[Graph] = []
    queue: deque[Graph] = deque()
    for g in starts:
        if index.insert(g):
            found.append(g)
            queue.append(g)

    while queue:
        if max_classes is not None and len(found) >= max_classes:
            break
        g = queue.popleft()
        for proposal in enumerate_proposals(g, rule):
            result = apply_swap(g, proposal)
            if isinstance(result, SwapRejection):
                continue
            if index.insert(result):
                found.append(result)
                queue.append(result)

    logger.info("Swap closure reached %d classes", len(found))
    return found
