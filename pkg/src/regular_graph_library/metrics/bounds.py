"""Clustering bound and population-size estimates for 4-regular graphs."""

import math
from collections.abc import Mapping
from fractions import Fraction

import numpy as np

from regular_graph_library.core import InvalidSpecError, UndefinedClusteringError
from regular_graph_library.metrics.models import LogBase, PopulationModel

# Connected 4-regular graphs up to isomorphism, by vertex count.
KNOWN_QUARTIC_COUNTS: dict[int, int] = {
    6: 1,
    7: 2,
    8: 6,
    9: 16,
    10: 59,
    11: 265,
    12: 1_544,
    13: 10_778,
    14: 88_168,
    15: 805_491,
    16: 8_037_418,
    17: 86_221_634,
    18: 985_870_522,
}

DEFAULT_MODEL = PopulationModel(
    intercept=6.77,
    slope=1.56,
    log_coefficient=-8.93,
    log_base=LogBase.NATURAL,
)

MIN_ESTIMATE_N = 6


def max_clustering_fraction(k: int) -> Fraction:
    """Exact clustering ceiling ``1 - 6/(k(k+1))``."""
    if k < 2:
        raise UndefinedClusteringError("clustering needs degree >= 2", {"k": k})
    return 1 - Fraction(6, k * (k + 1))


def max_clustering(k: int) -> float:
    """Upper bound of the average clustering coefficient over connected k-regular graphs."""
    return float(max_clustering_fraction(k))


def _log(n: float, base: LogBase) -> float:
    return math.log(n) if base is LogBase.NATURAL else math.log10(n)


def population_estimate_log10(
    n: int,
    log_base: LogBase = LogBase.NATURAL,
    model: PopulationModel | None = None,
) -> float:
    """Return ``log10`` of the estimated number of connected 4-regular classes.

    Args:
        n: Vertex count, at least 6.
        log_base: Reading of the ``log n`` term when no model is given.
        model: Explicit coefficients, e.g. from :func:`fit_population_model`.

    Raises:
        InvalidSpecError: If ``n < 6``.
    """
    if n < MIN_ESTIMATE_N:
        raise InvalidSpecError("population estimate needs n >= 6", {"n": n})
    coefficients = model or DEFAULT_MODEL.model_copy(update={"log_base": log_base})
    return (
        coefficients.intercept
        + coefficients.slope * n
        + coefficients.log_coefficient * _log(n, coefficients.log_base)
    )


def population_estimate(
    n: int,
    log_base: LogBase = LogBase.NATURAL,
    model: PopulationModel | None = None,
) -> float:
    """Estimated number of non-isomorphic connected 4-regular graphs on ``n`` vertices."""
    return float(10.0 ** population_estimate_log10(n, log_base, model))


def estimate_fit_r_squared(
    log_base: LogBase = LogBase.NATURAL,
    counts: Mapping[int, int] | None = None,
    model: PopulationModel | None = None,
) -> float:
    """Squared correlation between predicted and known ``log10`` class counts."""
    known = dict(counts or {n: c for n, c in KNOWN_QUARTIC_COUNTS.items() if n >= 10})
    sizes = sorted(known)
    predicted = np.array([population_estimate_log10(n, log_base, model) for n in sizes])
    observed = np.log10(np.array([known[n] for n in sizes], dtype=float))
    return float(np.corrcoef(predicted, observed)[0, 1] ** 2)


def fit_population_model(
    counts: Mapping[int, int] | None = None,
    log_base: LogBase = LogBase.NATURAL,
) -> PopulationModel:
    """Least-squares fit of the log-linear model to known class counts.

    Args:
        counts: Mapping of vertex count to class count; defaults to
            :data:`KNOWN_QUARTIC_COUNTS`.
        log_base: Logarithm used for the ``log n`` regressor.

    Returns:
        The fitted model with its squared correlation on the fitted points.
    """
    known = dict(counts or KNOWN_QUARTIC_COUNTS)
    if len(known) < 3:
        raise InvalidSpecError("fit needs at least three known counts", {"points": len(known)})
    sizes = np.array(sorted(known), dtype=float)
    observed = np.log10(np.array([known[int(n)] for n in sizes], dtype=float))
    logs = np.log(sizes) if log_base is LogBase.NATURAL else np.log10(sizes)
    design = np.column_stack([np.ones_like(sizes), sizes, logs])
    (intercept, slope, log_coefficient), *_ = np.linalg.lstsq(design, observed, rcond=None)
    fitted = PopulationModel(
        intercept=float(intercept),
        slope=float(slope),
        log_coefficient=float(log_coefficient),
        log_base=log_base,
    )
    r_squared = estimate_fit_r_squared(log_base, known, fitted)
    return fitted.model_copy(update={"r_squared": r_squared})
