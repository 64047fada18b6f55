"""Library directory layout: bin files, manifests and config echo."""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from regular_graph_library.canon import canonical_form
from regular_graph_library.core import LibraryValidationError, graph6_encode
from regular_graph_library.library import FinalLibrary, RunConfig, SampleEntry
from regular_graph_library.metrics import SampleMoments
from regular_graph_library.storage.csvio import read_csv, write_csv
from regular_graph_library.storage.models import (
    BIN_FIELDS,
    GRAPH_FIELDS,
    SAMPLE_FIELDS,
    BinRecord,
    GraphRecord,
    LibraryManifest,
    SampleRecord,
)

logger = logging.getLogger(__name__)

CONFIG_FILE = "config.json"
MANIFEST_FILE = "manifest.csv"
BINS_FILE = "bins.csv"
SAMPLES_FILE = "samples.csv"


def bin_file(n: int, label: str) -> str:
    """Relative path of a bin file, always with ``/`` separators."""
    return f"n{n}/{label}.g6"


def _found_by(entry: SampleEntry) -> str:
    return ";".join(sorted(source.value for source in entry.sources))


def _moments(prefix: str, moments: SampleMoments | None) -> dict[str, float | None]:
    if moments is None:
        return {f"{prefix}_{name}": None for name in ("mean", "std", "skewness", "cvm_p")}
    return {
        f"{prefix}_mean": moments.mean,
        f"{prefix}_std": moments.std_dev,
        f"{prefix}_skewness": moments.skewness,
        f"{prefix}_cvm_p": moments.cvm_score,
    }


def build_manifest(library: FinalLibrary) -> tuple[LibraryManifest, dict[str, list[str]]]:
    """Manifest records of a library and the graph6 lines of every bin file.

    Graphs keep the labeling they were generated with; the canonical labeling
    is recorded as ``canonical_id``.
    """
    graphs: list[GraphRecord] = []
    bins: list[BinRecord] = []
    files: dict[str, list[str]] = {}
    for n in sorted(library.partitions):
        partition = library.partitions[n]
        for b in sorted(partition.bins):
            final_bin = partition.bins[b]
            stats = final_bin.statistics
            path = bin_file(n, partition.assigner.label(b))
            lines = files.setdefault(path, [])
            for entry in final_bin.entries:
                form = entry.form or canonical_form(entry.graph)
                lines.append(graph6_encode(entry.graph))
                graphs.append(
                    GraphRecord(
                        n=n,
                        k=partition.k,
                        bin_index=b,
                        chi=entry.chi,
                        mean_distance=entry.mean_distance or 0.0,
                        source=entry.source,
                        found_by=_found_by(entry),
                        seed=entry.seed,
                        canonical_id=form.graph6,
                        file=path,
                        line=len(lines),
                    )
                )
            bins.append(
                BinRecord(
                    n=n,
                    bin_index=b,
                    chi_low=stats.chi_low,
                    chi_high=stats.chi_high,
                    method=partition.method,
                    wm_raw=stats.wm_raw,
                    wm_noniso=stats.wm_noniso,
                    cc_raw=stats.cc_raw,
                    cc_noniso=stats.cc_noniso,
                    wm_only=stats.wm_only,
                    cc_only=stats.cc_only,
                    overlap=stats.overlap,
                    closure_only=stats.closure_only,
                    merged_size=stats.merged_size,
                    final_size=stats.final_size,
                    **_moments("merged", stats.merged),
                    **_moments("final", stats.final),
                    draws_used=stats.draws_used,
                    best_p=stats.best_p,
                    file=path,
                )
            )
    return LibraryManifest(config=library.config, graphs=graphs, bins=bins), files


def _sample_records(library: FinalLibrary) -> list[SampleRecord]:
    records: list[SampleRecord] = []
    for n in sorted(library.partitions):
        partition = library.partitions[n]
        for b in sorted(partition.bins):
            final_bin = partition.bins[b]
            kept = {entry.graph for entry in final_bin.entries}
            for entry in final_bin.merged_entries:
                records.append(
                    SampleRecord(
                        n=n,
                        bin_index=b,
                        source=entry.source,
                        found_by=_found_by(entry),
                        chi=entry.chi,
                        mean_distance=entry.mean_distance or 0.0,
                        selected=entry.graph in kept,
                    )
                )
    return records


def write_config(path: Path, config: RunConfig) -> None:
    """Echo the run parameters as sorted, indented JSON."""
    payload = config.model_dump(mode="json")
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def write_library(library: FinalLibrary, directory: Path) -> LibraryManifest:
    """Write a library directory.

    Layout: ``n<value>/bin<idx>_chi<low>-<high>.g6`` (one graph6 line per
    graph), ``manifest.csv``, ``bins.csv``, ``samples.csv`` and
    ``config.json``. Identical libraries produce identical bytes.

    Args:
        library: The built library.
        directory: Target directory, created if missing.

    Returns:
        The manifest that was written.
    """
    directory.mkdir(parents=True, exist_ok=True)
    manifest, files = build_manifest(library)
    for relative, lines in sorted(files.items()):
        path = directory / relative
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(f"{line}\n" for line in lines), encoding="ascii")

    write_csv(directory / MANIFEST_FILE, GRAPH_FIELDS, (r.model_dump() for r in manifest.graphs))
    write_csv(directory / BINS_FILE, BIN_FIELDS, (r.model_dump() for r in manifest.bins))
    write_csv(
        directory / SAMPLES_FILE,
        SAMPLE_FIELDS,
        (r.model_dump() for r in _sample_records(library)),
    )
    write_config(directory / CONFIG_FILE, manifest.config)
    logger.info(
        "Wrote library to %s: %d graphs in %d files",
        directory,
        len(manifest.graphs),
        len(files),
    )
    return manifest


def read_manifest(directory: Path) -> LibraryManifest:
    """Parse ``config.json``, ``manifest.csv`` and ``bins.csv`` of a library.

    Raises:
        LibraryValidationError: If a file is missing or a row does not parse.
    """
    try:
        config_payload = json.loads((directory / CONFIG_FILE).read_text(encoding="utf-8"))
        graph_rows = read_csv(directory / MANIFEST_FILE)
        bin_rows = read_csv(directory / BINS_FILE) if (directory / BINS_FILE).exists() else []
    except (OSError, json.JSONDecodeError) as e:
        raise LibraryValidationError(
            "library manifest is unreadable", {"directory": str(directory), "error": str(e)}
        ) from e
    try:
        return LibraryManifest(
            config=config_payload,
            graphs=[GraphRecord.model_validate(row) for row in graph_rows],
            bins=[BinRecord.model_validate(row) for row in bin_rows],
        )
    except ValidationError as e:
        raise LibraryValidationError(
            "library manifest does not parse",
            {"directory": str(directory), "errors": e.errors(include_url=False)},
        ) from e


def read_samples(directory: Path) -> list[SampleRecord]:
    """Merged-bin rows of ``samples.csv``; empty when the file is absent."""
    path = directory / SAMPLES_FILE
    if not path.exists():
        return []
    return [SampleRecord.model_validate(row) for row in read_csv(path)]


def read_bin_file(path: Path) -> list[str]:
    """graph6 lines of a bin file, blank lines dropped."""
    return [line for line in path.read_text(encoding="ascii").splitlines() if line.strip()]
