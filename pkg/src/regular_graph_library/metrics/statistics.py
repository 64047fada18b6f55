"""Sample moments and Cramer-von Mises normality scoring."""

import logging
from collections.abc import Sequence
from functools import lru_cache

import numpy as np
from scipy.special import ndtr

from regular_graph_library.core import InsufficientSampleError
from regular_graph_library.metrics.models import SampleMoments

logger = logging.getLogger(__name__)

MIN_MOMENT_SAMPLE = 2
MIN_SKEWNESS_SAMPLE = 3
MIN_CVM_SAMPLE = 8
DEFAULT_NULL_DRAWS = 10_000
DEFAULT_NULL_SEED = 20_240_101


def cvm_statistics(samples: np.ndarray) -> np.ndarray:
    """Row-wise W^2 of each sample against a normal with estimated mean and std.

    Rows with zero spread score ``inf``.

    Args:
        samples: Array of shape ``(batches, m)``.

    Returns:
        Array of shape ``(batches,)``.
    """
    ordered = np.sort(np.asarray(samples, dtype=float), axis=1)
    m = ordered.shape[1]
    mean = ordered.mean(axis=1, keepdims=True)
    std = ordered.std(axis=1, ddof=1, keepdims=True)
    flat = (std == 0).ravel()
    with np.errstate(divide="ignore", invalid="ignore"):
        cdf = ndtr((ordered - mean) / std)
    plotting = (2.0 * np.arange(1, m + 1) - 1.0) / (2.0 * m)
    w2 = 1.0 / (12.0 * m) + np.sum((plotting - cdf) ** 2, axis=1)
    w2[flat] = np.inf
    return np.asarray(w2)


def cvm_statistic(values: Sequence[float] | np.ndarray) -> float:
    """W^2 of one sample; see :func:`cvm_statistics`."""
    x = np.asarray(values, dtype=float)
    if x.size < MIN_CVM_SAMPLE:
        raise InsufficientSampleError(
            "normality score needs at least 8 values", {"size": int(x.size)}
        )
    return float(cvm_statistics(x[np.newaxis, :])[0])


@lru_cache(maxsize=32)
def null_distribution(
    m: int,
    draws: int = DEFAULT_NULL_DRAWS,
    seed: int = DEFAULT_NULL_SEED,
) -> np.ndarray:
    """Sorted W^2 values of ``draws`` standard-normal samples of size ``m``.

    Cached per ``(m, draws, seed)``; the returned array is read-only.
    """
    logger.debug("Simulating CvM null distribution m=%d draws=%d", m, draws)
    rng = np.random.default_rng(seed)
    w2 = np.sort(cvm_statistics(rng.standard_normal((draws, m))))
    w2.flags.writeable = False
    return w2


def cvm_p_values(
    w2: np.ndarray,
    m: int,
    null_draws: int = DEFAULT_NULL_DRAWS,
    seed: int = DEFAULT_NULL_SEED,
) -> np.ndarray:
    """Bootstrap p-values: share of null statistics at least as large as each ``w2``."""
    null = null_distribution(m, null_draws, seed)
    above = null.size - np.searchsorted(null, np.asarray(w2, dtype=float), side="left")
    return np.asarray(above / null.size)


def cvm_normality(
    values: Sequence[float] | np.ndarray,
    null_draws: int = DEFAULT_NULL_DRAWS,
    seed: int = DEFAULT_NULL_SEED,
) -> float:
    """Normality p-value of a sample (composite null, parametric bootstrap).

    Higher is more normal. Zero-spread samples score 0. The result does not
    depend on the order of ``values``.

    Raises:
        InsufficientSampleError: Fewer than 8 values.
    """
    x = np.asarray(values, dtype=float)
    w2 = cvm_statistic(x)
    return float(cvm_p_values(np.array([w2]), x.size, null_draws, seed)[0])


def sample_moments(
    values: Sequence[float] | np.ndarray,
    null_draws: int = DEFAULT_NULL_DRAWS,
    seed: int = DEFAULT_NULL_SEED,
) -> SampleMoments:
    """Mean, sample standard deviation, g1 skewness and CvM score.

    A constant sample reports skewness 0 with ``degenerate`` set. Skewness
    is None below 3 values and the CvM score is omitted below 8.

    Raises:
        InsufficientSampleError: Fewer than 2 values.
    """
    x = np.asarray(values, dtype=float)
    if x.size < MIN_MOMENT_SAMPLE:
        raise InsufficientSampleError("moments need at least 2 values", {"size": int(x.size)})

    mean = float(x.mean())
    degenerate = bool(np.ptp(x) == 0)
    std_dev = 0.0
    skewness: float | None = 0.0
    if degenerate:
        logger.warning("Constant sample of %d values; skewness reported as 0", x.size)
    else:
        std_dev = float(x.std(ddof=1))
        skewness = None
        if x.size >= MIN_SKEWNESS_SAMPLE:
            centred = x - mean
            m2 = float(np.mean(centred**2))
            m3 = float(np.mean(centred**3))
            skewness = m3 / m2**1.5

    cvm_score = None
    if x.size >= MIN_CVM_SAMPLE:
        cvm_score = 0.0 if degenerate else cvm_normality(x, null_draws, seed)

    return SampleMoments(
        size=int(x.size),
        mean=mean,
        std_dev=std_dev,
        skewness=skewness,
        cvm_score=cvm_score,
        degenerate=degenerate,
    )
