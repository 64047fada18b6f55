"""Uniform sampling of connected k-regular graphs by the pairing model."""

import logging
from collections import Counter

import numpy as np

from regular_graph_library.core import (
    Graph,
    InvalidSpecError,
    RetryExhaustedError,
    is_connected,
)
from regular_graph_library.generators.models import BinLookup, GeneratedGraph, Source
from regular_graph_library.metrics import clustering_coefficient

logger = logging.getLogger(__name__)

DEFAULT_MAX_ATTEMPTS = 10_000


def _check_regular_spec(n: int, k: int) -> None:
    if n <= k or k < 1 or (n * k) % 2:
        raise InvalidSpecError(
            "k-regular graph needs n > k and n*k even", {"n": n, "k": k}
        )


def uniform_regular(
    n: int,
    k: int,
    rng: np.random.Generator,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Graph:
    """Draw a labeled connected k-regular graph uniformly at random.

    Each attempt pairs the ``n*k`` stubs by a uniformly random perfect
    matching and is discarded on a self-loop, a parallel edge or a
    disconnected result.

    Args:
        n: Vertex count.
        k: Degree.
        rng: Random generator.
        max_attempts: Matchings tried before giving up.

    Raises:
        InvalidSpecError: If ``n*k`` is odd or ``n <= k``.
        RetryExhaustedError: If no attempt succeeds.
    """
    _check_regular_spec(n, k)
    stubs = np.repeat(np.arange(n), k)
    for _ in range(max_attempts):
        pairs = rng.permutation(stubs).reshape(-1, 2)
        low = pairs.min(axis=1)
        high = pairs.max(axis=1)
        if np.any(low == high):
            continue
        codes = low * n + high
        if np.unique(codes).size != codes.size:
            continue
        g = Graph(n=n, k=k, edges=frozenset(zip(low.tolist(), high.tolist(), strict=True)))
        if is_connected(g):
            return g
    raise RetryExhaustedError(
        "pairing model found no simple connected graph",
        {"n": n, "k": k, "max_attempts": max_attempts},
    )


def wm_campaign(
    n: int,
    k: int,
    count_target: int,
    binner: BinLookup,
    rng: np.random.Generator,
    per_bin_cap: int | None = None,
    seed: int = 0,
) -> list[GeneratedGraph]:
    """Draw up to ``count_target`` uniform graphs and bin them by clustering.

    Draws that land in a bin already holding ``per_bin_cap`` graphs are
    discarded; the campaign stops early once every bin is full.

    Args:
        n: Vertex count.
        k: Degree.
        count_target: Number of draws.
        binner: Clustering bin lookup.
        rng: Random generator.
        per_bin_cap: Optional per-bin limit.
        seed: Seed recorded on every produced graph.

    Returns:
        Generated graphs tagged ``WM`` in draw order.
    """
    batch: list[GeneratedGraph] = []
    counts: Counter[int] = Counter()
    for _ in range(count_target):
        if per_bin_cap is not None and len(counts) == binner.bin_count and all(
            c >= per_bin_cap for c in counts.values()
        ):
            break
        g = uniform_regular(n, k, rng)
        chi = clustering_coefficient(g)
        bin_index = binner.assign(chi)
        if per_bin_cap is not None and counts[bin_index] >= per_bin_cap:
            continue
        counts[bin_index] += 1
        batch.append(
            GeneratedGraph(graph=g, chi=chi, source=Source.WM, seed=seed, bin_index=bin_index)
        )
    logger.debug(
        "WM campaign n=%d drew %d graphs over %d bins", n, len(batch), len(counts)
    )
    return batch
