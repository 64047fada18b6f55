"""Structural measures: clustering, distances and centralities."""

import logging
from fractions import Fraction

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from regular_graph_library.core import (
    ConvergenceError,
    DisconnectedGraphError,
    Graph,
    UndefinedClusteringError,
)
from regular_graph_library.metrics.models import GraphMetrics

logger = logging.getLogger(__name__)

EIGENVECTOR_MAX_ITER = 10_000
EIGENVECTOR_TOL = 1e-12


def triangle_counts(g: Graph) -> np.ndarray:
    """Number of triangles through each vertex."""
    a = g.adjacency.astype(np.int64)
    return np.asarray(((a @ a) * a).sum(axis=1) // 2)


def _require_clustering_degree(g: Graph) -> None:
    if g.k < 2:
        raise UndefinedClusteringError("clustering needs degree >= 2", {"k": g.k})


def local_clustering(g: Graph) -> np.ndarray:
    """Per-vertex clustering: adjacent neighbor pairs over ``k(k-1)/2``."""
    _require_clustering_degree(g)
    return triangle_counts(g) / (g.k * (g.k - 1) / 2)


def clustering_fraction(g: Graph) -> Fraction:
    """Exact average local clustering coefficient of a k-regular graph."""
    _require_clustering_degree(g)
    total = int(triangle_counts(g).sum())
    return Fraction(2 * total, g.n * g.k * (g.k - 1))


def clustering_coefficient(g: Graph) -> float:
    """Average local clustering coefficient, rounded once from the exact value.

    Raises:
        UndefinedClusteringError: If ``k < 2``.
    """
    return float(clustering_fraction(g))


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs hop distances; unreachable pairs are ``inf``."""
    return np.asarray(
        shortest_path(csr_matrix(g.adjacency), method="D", directed=False, unweighted=True)
    )


def mean_graph_distance(g: Graph) -> float:
    """Mean shortest-path length over unordered pairs of distinct vertices.

    Raises:
        DisconnectedGraphError: If some pair is unreachable.
    """
    if g.n == 1:
        return 0.0
    distances = distance_matrix(g)
    if np.isinf(distances).any():
        raise DisconnectedGraphError("mean distance needs a connected graph", {"n": g.n})
    return float(distances.sum() / (g.n * (g.n - 1)))


def _connected_networkx(g: Graph) -> nx.Graph:
    graph = g.to_networkx()
    if not nx.is_connected(graph):
        raise DisconnectedGraphError("centrality needs a connected graph", {"n": g.n})
    return graph


def vertex_betweenness_mean(g: Graph) -> float:
    """Mean vertex betweenness, counting ordered source/target pairs."""
    graph = _connected_networkx(g)
    # networkx counts unordered pairs for undirected graphs
    unordered = nx.betweenness_centrality(graph, normalized=False)
    return 2.0 * float(sum(unordered.values())) / g.n


def edge_betweenness_mean(g: Graph) -> float:
    """Mean edge betweenness, counting ordered source/target pairs."""
    graph = _connected_networkx(g)
    unordered = nx.edge_betweenness_centrality(graph, normalized=False)
    return 2.0 * float(sum(unordered.values())) / g.edge_count


def closeness_mean(g: Graph) -> float:
    """Mean closeness centrality ``(n-1) / sum_u d(v, u)``."""
    graph = _connected_networkx(g)
    return float(np.mean(list(nx.closeness_centrality(graph).values())))


def eigenvector_centrality(g: Graph) -> np.ndarray:
    """Eigenvector centrality by power iteration, normalized to unit sum.

    Raises:
        ConvergenceError: If the iteration does not converge within
            10,000 steps at tolerance 1e-12.
    """
    graph = _connected_networkx(g)
    try:
        scores = nx.eigenvector_centrality(
            graph, max_iter=EIGENVECTOR_MAX_ITER, tol=EIGENVECTOR_TOL
        )
    except nx.PowerIterationFailedConvergence as e:
        raise ConvergenceError(
            "eigenvector centrality did not converge",
            {"max_iter": EIGENVECTOR_MAX_ITER, "tol": EIGENVECTOR_TOL},
        ) from e
    vector = np.array([scores[v] for v in range(g.n)], dtype=float)
    return vector / vector.sum()


def eigenvector_mean(g: Graph) -> float:
    """Mean unit-sum eigenvector centrality (always ``1/n`` up to rounding)."""
    return float(eigenvector_centrality(g).mean())


def graph_metrics(g: Graph) -> GraphMetrics:
    """Compute every structural measure of a connected graph."""
    metrics = GraphMetrics(
        chi=clustering_coefficient(g),
        mean_distance=mean_graph_distance(g),
        closeness_mean=closeness_mean(g),
        vertex_betweenness_mean=vertex_betweenness_mean(g),
        edge_betweenness_mean=edge_betweenness_mean(g),
        eigenvector_mean=eigenvector_mean(g),
    )
    logger.debug("Computed metrics for n=%d: %s", g.n, metrics)
    return metrics
