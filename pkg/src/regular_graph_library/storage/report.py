"""CSV reports: sample-size table, distributions, overlaps and centralities."""

import logging
from collections import defaultdict
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import numpy as np

from regular_graph_library.core import graph6_decode
from regular_graph_library.library import BinAssigner, CollectionMethod
from regular_graph_library.metrics import (
    KNOWN_QUARTIC_COUNTS,
    MIN_ESTIMATE_N,
    LogBase,
    graph_metrics,
    population_estimate_log10,
)
from regular_graph_library.storage.csvio import write_csv
from regular_graph_library.storage.manifest import read_bin_file, read_manifest, read_samples
from regular_graph_library.storage.models import LibraryManifest, SampleRecord

logger = logging.getLogger(__name__)

HISTOGRAM_BINS = 10
# Bins need this many graphs from each source to compare their distributions.
MIN_SOURCE_COUNT = 10
POPULATION_MAX_N = 50


def _histogram_rows(
    base: dict[str, Any], groups: dict[str, Sequence[float]], bins: int = HISTOGRAM_BINS
) -> list[dict[str, Any]]:
    """Histograms of several groups over shared edges."""
    pooled = np.concatenate([np.asarray(v, dtype=float) for v in groups.values()])
    if pooled.size == 0:
        return []
    edges = np.histogram_bin_edges(pooled, bins=bins)
    rows = []
    for group, values in groups.items():
        counts, _ = np.histogram(np.asarray(values, dtype=float), bins=edges)
        for i, count in enumerate(counts.tolist()):
            rows.append(
                {
                    **base,
                    "group": group,
                    "edge_low": float(edges[i]),
                    "edge_high": float(edges[i + 1]),
                    "count": count,
                }
            )
    return rows


def _table(manifest: LibraryManifest) -> list[dict[str, Any]]:
    config = manifest.config
    rows = []
    for n in config.n_values:
        bins = [row for row in manifest.bins if row.n == n]
        if bins:
            method = bins[0].method
        elif n <= config.exhaustive_max_n:
            method = CollectionMethod.EXHAUSTIVE
        else:
            method = CollectionMethod.SAMPLED
        estimate = population_estimate_log10(n) if config.k == 4 and n >= MIN_ESTIMATE_N else None
        rows.append(
            {
                "n": n,
                "k": config.k,
                "method": method,
                "nominal_bins": BinAssigner(n=n, k=config.k).bin_count,
                "occupied_bins": len(bins),
                "wm_raw": sum(row.wm_raw for row in bins),
                "wm_noniso": sum(row.wm_noniso for row in bins),
                "cc_raw": sum(row.cc_raw for row in bins),
                "cc_noniso": sum(row.cc_noniso for row in bins),
                "merged": sum(row.merged_size for row in bins),
                "final": sum(row.final_size for row in bins),
                "log10_estimate": estimate,
            }
        )
    return rows


def _source_histograms(samples: list[SampleRecord]) -> list[dict[str, Any]]:
    grouped: dict[tuple[int, int], dict[str, list[float]]] = defaultdict(
        lambda: {"WM": [], "CC": []}
    )
    for record in samples:
        groups = grouped[(record.n, record.bin_index)]
        for source in record.found_by.split(";"):
            if source in groups:
                groups[source].append(record.mean_distance)
    rows = []
    for (n, b), groups in sorted(grouped.items()):
        if min(len(values) for values in groups.values()) < MIN_SOURCE_COUNT:
            continue
        rows.extend(_histogram_rows({"n": n, "bin_index": b}, dict(groups)))
    return rows


def _distance_histograms(samples: list[SampleRecord]) -> list[dict[str, Any]]:
    grouped: dict[tuple[int, int], dict[str, list[float]]] = defaultdict(
        lambda: {"merged": [], "final": []}
    )
    for record in samples:
        groups = grouped[(record.n, record.bin_index)]
        groups["merged"].append(record.mean_distance)
        if record.selected:
            groups["final"].append(record.mean_distance)
    rows = []
    for (n, b), groups in sorted(grouped.items()):
        rows.extend(_histogram_rows({"n": n, "bin_index": b}, dict(groups)))
    return rows


def _bin_moments(manifest: LibraryManifest) -> list[dict[str, Any]]:
    rows = []
    for row in manifest.bins:
        for stage in ("merged", "final"):
            rows.append(
                {
                    "n": row.n,
                    "bin_index": row.bin_index,
                    "chi_mid": (row.chi_low + row.chi_high) / 2,
                    "stage": stage,
                    "size": row.merged_size if stage == "merged" else row.final_size,
                    "mean": getattr(row, f"{stage}_mean"),
                    "std": getattr(row, f"{stage}_std"),
                    "skewness": getattr(row, f"{stage}_skewness"),
                    "cvm_p": getattr(row, f"{stage}_cvm_p"),
                }
            )
    return rows


def _cvm_histogram(manifest: LibraryManifest) -> list[dict[str, Any]]:
    edges = np.linspace(0.0, 1.0, HISTOGRAM_BINS + 1)
    rows = []
    for stage in ("merged", "final"):
        scores = [
            p for row in manifest.bins if (p := getattr(row, f"{stage}_cvm_p")) is not None
        ]
        counts, _ = np.histogram(np.asarray(scores, dtype=float), bins=edges)
        for i, count in enumerate(counts.tolist()):
            rows.append(
                {
                    "group": stage,
                    "edge_low": float(edges[i]),
                    "edge_high": float(edges[i + 1]),
                    "count": count,
                }
            )
    return rows


def _centralities(directory: Path, manifest: LibraryManifest) -> list[dict[str, Any]]:
    """Residuals of the exact centrality identities and the closeness correlation."""
    lines_by_file = {name: read_bin_file(directory / name) for name in manifest.files()}
    per_n: dict[int, list[tuple[float, float, float, float, float, int]]] = defaultdict(list)
    for record in manifest.graphs:
        g = graph6_decode(lines_by_file[record.file][record.line - 1], record.k)
        m = graph_metrics(g)
        per_n[record.n].append(
            (
                m.mean_distance,
                m.vertex_betweenness_mean,
                m.edge_betweenness_mean,
                m.closeness_mean,
                m.eigenvector_mean,
                g.k,
            )
        )
    rows = []
    for n, values in sorted(per_n.items()):
        data = np.array(values, dtype=float)
        distance, vertex_b, edge_b, closeness, eigen, k = data.T
        inverse = 1.0 / distance
        correlation = (
            float(np.corrcoef(closeness, inverse)[0, 1])
            if len(values) > 1 and np.ptp(closeness) > 0 and np.ptp(inverse) > 0
            else None
        )
        rows.append(
            {
                "n": n,
                "graphs": len(values),
                "vertex_betweenness_residual": float(
                    np.max(np.abs(vertex_b - (n - 1) * (distance - 1)))
                ),
                "edge_betweenness_residual": float(
                    np.max(np.abs(edge_b - 2 * (n - 1) * distance / k))
                ),
                "eigenvector_residual": float(np.max(np.abs(eigen - 1.0 / n))),
                "closeness_correlation": correlation,
            }
        )
    return rows


def _population(max_n: int) -> list[dict[str, Any]]:
    rows = []
    for n in range(MIN_ESTIMATE_N, max_n + 1):
        known = KNOWN_QUARTIC_COUNTS.get(n)
        rows.append(
            {
                "n": n,
                "log10_estimate": population_estimate_log10(n),
                "log10_estimate_base10": population_estimate_log10(n, LogBase.BASE10),
                "known_count": known,
                "log10_known": float(np.log10(known)) if known else None,
            }
        )
    return rows


def write_reports(directory: Path, out: Path) -> list[Path]:
    """Write the CSV reports of a library directory.

    Args:
        directory: Library written by :func:`write_library`.
        out: Report directory, created if missing.

    Returns:
        Paths of the written reports, in a fixed order.
    """
    manifest = read_manifest(directory)
    samples = read_samples(directory)
    max_n = max([POPULATION_MAX_N, *manifest.config.n_values])

    reports: list[tuple[str, list[str], list[dict[str, Any]]]] = [
        (
            "table.csv",
            ["n", "k", "method", "nominal_bins", "occupied_bins", "wm_raw", "wm_noniso",
             "cc_raw", "cc_noniso", "merged", "final", "log10_estimate"],
            _table(manifest),
        ),
        (
            "sample_sizes.csv",
            ["n", "bin_index", "chi_low", "chi_high", "wm_raw", "wm_noniso", "cc_raw",
             "cc_noniso"],
            [row.model_dump() for row in manifest.bins],
        ),
        (
            "source_distance_histograms.csv",
            ["n", "bin_index", "group", "edge_low", "edge_high", "count"],
            _source_histograms(samples),
        ),
        (
            "overlap.csv",
            ["n", "bin_index", "chi_low", "chi_high", "wm_only", "cc_only", "overlap",
             "closure_only"],
            [row.model_dump() for row in manifest.bins],
        ),
        (
            "cvm_histogram.csv",
            ["group", "edge_low", "edge_high", "count"],
            _cvm_histogram(manifest),
        ),
        (
            "bin_moments.csv",
            ["n", "bin_index", "chi_mid", "stage", "size", "mean", "std", "skewness", "cvm_p"],
            _bin_moments(manifest),
        ),
        (
            "distance_histograms.csv",
            ["n", "bin_index", "group", "edge_low", "edge_high", "count"],
            _distance_histograms(samples),
        ),
        (
            "centralities.csv",
            ["n", "graphs", "vertex_betweenness_residual", "edge_betweenness_residual",
             "eigenvector_residual", "closeness_correlation"],
            _centralities(directory, manifest),
        ),
        (
            "population.csv",
            ["n", "log10_estimate", "log10_estimate_base10", "known_count", "log10_known"],
            _population(max_n),
        ),
    ]

    written = []
    for name, fieldnames, rows in reports:
        path = out / name
        write_csv(path, fieldnames, rows)
        written.append(path)
    logger.info("Wrote %d reports for %s to %s", len(written), directory, out)
    return written
