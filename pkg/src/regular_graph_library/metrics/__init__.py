"""Graph metrics, clustering bound, population estimate and sample statistics."""

from regular_graph_library.metrics.bounds import (
    DEFAULT_MODEL,
    KNOWN_QUARTIC_COUNTS,
    MIN_ESTIMATE_N,
    estimate_fit_r_squared,
    fit_population_model,
    max_clustering,
    max_clustering_fraction,
    population_estimate,
    population_estimate_log10,
)
from regular_graph_library.metrics.models import (
    GraphMetrics,
    LogBase,
    PopulationModel,
    SampleMoments,
)
from regular_graph_library.metrics.statistics import (
    DEFAULT_NULL_DRAWS,
    DEFAULT_NULL_SEED,
    cvm_normality,
    cvm_p_values,
    cvm_statistic,
    cvm_statistics,
    null_distribution,
    sample_moments,
)
from regular_graph_library.metrics.structure import (
    closeness_mean,
    clustering_coefficient,
    clustering_fraction,
    distance_matrix,
    edge_betweenness_mean,
    eigenvector_centrality,
    eigenvector_mean,
    graph_metrics,
    local_clustering,
    mean_graph_distance,
    triangle_counts,
    vertex_betweenness_mean,
)

__all__ = [
    # Models
    "GraphMetrics",
    "LogBase",
    "PopulationModel",
    "SampleMoments",
    # Bounds and estimates
    "DEFAULT_MODEL",
    "KNOWN_QUARTIC_COUNTS",
    "MIN_ESTIMATE_N",
    "estimate_fit_r_squared",
    "fit_population_model",
    "max_clustering",
    "max_clustering_fraction",
    "population_estimate",
    "population_estimate_log10",
    # Statistics
    "DEFAULT_NULL_DRAWS",
    "DEFAULT_NULL_SEED",
    "cvm_normality",
    "cvm_p_values",
    "cvm_statistic",
    "cvm_statistics",
    "null_distribution",
    "sample_moments",
    # Structure
    "closeness_mean",
    "clustering_coefficient",
    "clustering_fraction",
    "distance_matrix",
    "edge_betweenness_mean",
    "eigenvector_centrality",
    "eigenvector_mean",
    "graph_metrics",
    "local_clustering",
    "mean_graph_distance",
    "triangle_counts",
    "vertex_betweenness_mean",
]
