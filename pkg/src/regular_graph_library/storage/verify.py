"""Re-check every library invariant against the files on disk."""

import logging
from collections import Counter, defaultdict
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field

from regular_graph_library.canon import canonical_form
from regular_graph_library.core import (
    GraphLibraryError,
    LibraryValidationError,
    degree_check,
    graph6_decode,
    is_connected,
)
from regular_graph_library.library import BinAssigner
from regular_graph_library.metrics import clustering_coefficient, mean_graph_distance
from regular_graph_library.storage.csvio import format_value
from regular_graph_library.storage.manifest import read_bin_file, read_manifest
from regular_graph_library.storage.models import GraphRecord

logger = logging.getLogger(__name__)


class VerificationIssue(BaseModel):
    """One failed check."""

    code: str = Field(..., description="Short machine-readable check name")
    message: str
    details: dict[str, Any] = Field(default_factory=dict)


class VerificationReport(BaseModel):
    """Outcome of :func:`verify_library`."""

    directory: str
    graphs_checked: int = 0
    files_checked: int = 0
    issues: list[VerificationIssue] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str, **details: Any) -> None:
        self.issues.append(VerificationIssue(code=code, message=message, details=details))


def _check_graph(
    report: VerificationReport, record: GraphRecord, line: str, assigner: BinAssigner
) -> None:
    where = {"file": record.file, "line": record.line}
    try:
        g = graph6_decode(line, record.k)
    except GraphLibraryError as e:
        report.add("malformed_graph6", e.message, **where)
        return
    if g.n != record.n:
        report.add("size_mismatch", "vertex count differs from manifest", n=g.n, **where)
        return
    if not degree_check(g):
        report.add("not_regular", f"graph is not {record.k}-regular", **where)
        return
    if not is_connected(g):
        report.add("disconnected", "graph is not connected", **where)
        return

    chi = clustering_coefficient(g)
    if format_value(chi) != format_value(record.chi):
        report.add("chi_mismatch", "clustering differs from manifest", chi=chi, **where)
    distance = mean_graph_distance(g)
    if format_value(distance) != format_value(record.mean_distance):
        report.add(
            "distance_mismatch", "mean distance differs from manifest", distance=distance, **where
        )
    try:
        bin_index = assigner.assign(chi)
    except GraphLibraryError as e:
        report.add("out_of_range", e.message, chi=chi, **where)
    else:
        if bin_index != record.bin_index:
            report.add("bin_mismatch", "graph lies in another bin", bin=bin_index, **where)
    if canonical_form(g).graph6 != record.canonical_id:
        report.add("canonical_mismatch", "canonical id does not match the graph", **where)


def verify_library(directory: Path) -> VerificationReport:
    """Check a library directory.

    Checks that every referenced bin file exists with the manifest's line
    count, every graph decodes and is k-regular and connected, clustering,
    mean distance, bin index and canonical id recompute to the manifest
    values, no class appears twice per size, final bins hold at most
    ``batch_size`` graphs and ``bins.csv`` agrees with the manifest.

    Args:
        directory: Library directory.

    Returns:
        The report; ``report.ok`` is True when no check failed.
    """
    report = VerificationReport(directory=str(directory))
    try:
        manifest = read_manifest(directory)
    except LibraryValidationError as e:
        report.add("unreadable_manifest", e.message, **e.details)
        return report

    config = manifest.config
    by_file: dict[str, list[GraphRecord]] = defaultdict(list)
    for record in manifest.graphs:
        by_file[record.file].append(record)

    assigners: dict[int, BinAssigner] = {}
    for name in sorted(by_file):
        records = by_file[name]
        path = directory / name
        if not path.is_file():
            report.add("missing_file", "referenced bin file does not exist", file=name)
            continue
        lines = read_bin_file(path)
        report.files_checked += 1
        if len(lines) != len(records):
            report.add(
                "count_mismatch",
                f"{name} holds {len(lines)} graphs, manifest lists {len(records)}",
                file=name,
                expected=len(records),
                found=len(lines),
            )
        for record in records:
            if record.line > len(lines):
                continue
            assigner = assigners.setdefault(record.n, BinAssigner(n=record.n, k=record.k))
            _check_graph(report, record, lines[record.line - 1], assigner)
            report.graphs_checked += 1

    ids = Counter((record.n, record.canonical_id) for record in manifest.graphs)
    for (n, canonical_id), count in sorted(ids.items()):
        if count > 1:
            report.add(
                "duplicate_class",
                "isomorphism class listed more than once",
                n=n,
                canonical_id=canonical_id,
                count=count,
            )

    per_bin = Counter((record.n, record.bin_index) for record in manifest.graphs)
    for (n, b), count in sorted(per_bin.items()):
        if count > config.batch_size:
            report.add("bin_oversize", "final bin exceeds batch size", n=n, bin=b, size=count)
    for row in manifest.bins:
        listed = per_bin.get((row.n, row.bin_index), 0)
        if row.final_size != listed:
            report.add(
                "bin_size_mismatch",
                "bins.csv final size differs from manifest rows",
                n=row.n,
                bin=row.bin_index,
                expected=row.final_size,
                found=listed,
            )

    if report.ok:
        logger.info(
            "Verified %s: %d graphs in %d files",
            directory,
            report.graphs_checked,
            report.files_checked,
        )
    else:
        for issue in report.issues:
            logger.error("%s: %s", issue.code, issue.message, extra={"details": issue.details})
    return report
