"""Normality-driven subsampling of oversized bins."""

import logging
from collections.abc import Sequence

import numpy as np

from regular_graph_library.core import InsufficientSampleError
from regular_graph_library.library.models import SampleEntry, SubsampleResult
from regular_graph_library.metrics import (
    DEFAULT_NULL_DRAWS,
    SampleMoments,
    cvm_p_values,
    cvm_statistics,
    sample_moments,
)

logger = logging.getLogger(__name__)

# Subsets scored per vectorized chunk.
CHUNK_SIZE = 1_000


def bin_moments(values: Sequence[float] | np.ndarray, null_draws: int) -> SampleMoments | None:
    """Moments of a bin, or None when it is too small to describe."""
    try:
        return sample_moments(values, null_draws=null_draws)
    except InsufficientSampleError:
        return None


def select_batch(
    values: np.ndarray,
    batch_size: int,
    draws: int,
    max_draws: int,
    p_threshold: float,
    seed: int,
    null_draws: int = DEFAULT_NULL_DRAWS,
) -> tuple[np.ndarray, int, float]:
    """Search random subsets of ``values`` for the most normal one.

    Subsets are scored in chunks. After ``draws`` subsets the search stops
    as soon as the best p-value exceeds ``p_threshold``; otherwise it goes on
    until ``max_draws``. On equal p-values the earliest subset wins.

    Returns:
        Sorted indices of the chosen subset, subsets scored, best p-value.
    """
    rng = np.random.default_rng(seed)
    population = values.size
    best_p = -1.0
    best = np.arange(batch_size)
    used = 0
    while used < max_draws:
        # Land exactly on ``draws`` so the early stop is checked there.
        limit = min(draws, max_draws) if used < draws else max_draws
        chunk = min(CHUNK_SIZE, limit - used)
        keys = rng.random((chunk, population))
        subsets = np.argpartition(keys, batch_size - 1, axis=1)[:, :batch_size]
        p_values = cvm_p_values(cvm_statistics(values[subsets]), batch_size, null_draws)
        top = int(np.argmax(p_values))
        if p_values[top] > best_p:
            best_p = float(p_values[top])
            best = subsets[top]
        used += chunk
        if used >= draws and best_p > p_threshold:
            break
    return np.sort(best), used, best_p


def subsample_bin(
    entries: Sequence[SampleEntry],
    batch_size: int = 100,
    draws: int = 10_000,
    max_draws: int = 100_000,
    p_threshold: float = 0.999,
    seed: int = 0,
    null_draws: int = DEFAULT_NULL_DRAWS,
) -> SubsampleResult:
    """Reduce a bin to ``batch_size`` graphs with the most normal mean distances.

    Bins at or below ``batch_size`` are returned unchanged.

    Args:
        entries: Bin entries with ``mean_distance`` set.
        batch_size: Final bin size.
        draws: Subsets scored before the early stop may trigger.
        max_draws: Upper bound on subsets scored.
        p_threshold: Early-stop p-value.
        seed: Seed of the subset draws.
        null_draws: Bootstrap size of the CvM null distribution.

    Returns:
        The chosen entries in their original order, with moments before and
        after.
    """
    values = np.array([entry.mean_distance for entry in entries], dtype=float)
    before = bin_moments(values, null_draws)
    if len(entries) <= batch_size:
        return SubsampleResult(
            entries=list(entries),
            before=before,
            after=before,
            best_p=before.cvm_score if before else None,
        )

    chosen, used, best_p = select_batch(
        values, batch_size, draws, max_draws, p_threshold, seed, null_draws
    )
    selected = [entries[i] for i in chosen.tolist()]
    after = bin_moments(values[chosen], null_draws)
    logger.debug(
        "Subsampled %d -> %d after %d draws (best p=%.4f)",
        len(entries),
        len(selected),
        used,
        best_p,
    )
    return SubsampleResult(
        entries=selected, before=before, after=after, draws_used=used, best_p=best_p
    )
