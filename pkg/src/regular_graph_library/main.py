"""Command-line entry point for the regular graph library."""

import argparse
import asyncio
import logging
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path
from typing import TextIO

import numpy as np
from dotenv import load_dotenv
from pydantic import ValidationError

from regular_graph_library.canon import DedupIndex
from regular_graph_library.config import get_settings
from regular_graph_library.core import (
    Graph,
    GraphLibraryError,
    X4Rule,
    graph6_decode,
    graph6_encode,
)
from regular_graph_library.generators import (
    CaveChainSpec,
    Source,
    build_down_run,
    cave_chain,
    uniform_regular,
)
from regular_graph_library.library import (
    BinAssigner,
    BinnedSample,
    RunConfig,
    SampleEntry,
    build_library,
    dedup_sample,
    derive_seed,
    get_checkpoint_repository,
    merge_and_dedup,
    subsample_bin,
)
from regular_graph_library.metrics import (
    LogBase,
    clustering_coefficient,
    fit_population_model,
    mean_graph_distance,
    population_estimate_log10,
)
from regular_graph_library.storage import (
    export_library,
    verify_library,
    write_library,
    write_reports,
)

logger = logging.getLogger(__name__)


def setup_logging() -> None:
    """Configure application logging on standard error."""
    settings = get_settings()

    log_format = (
        '{"time": "%(asctime)s", "level": "%(levelname)s", '
        '"logger": "%(name)s", "message": "%(message)s"}'
        if settings.log_format == "json"
        else "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    logging.basicConfig(
        level=getattr(logging, settings.log_level.upper()),
        format=log_format,
        handlers=[logging.StreamHandler(sys.stderr)],
    )


# ---------------------------------------------------------------------------
# Graph streams
# ---------------------------------------------------------------------------


def format_graph(g: Graph, fmt: str) -> str:
    """One graph as a graph6 line or as an edge-list block."""
    if fmt == "graph6":
        return graph6_encode(g) + "\n"
    header = f"# n={g.n} k={g.k} chi={clustering_coefficient(g):.6f}\n"
    return header + "".join(f"{u} {v}\n" for u, v in g.sorted_edges()) + "\n"


def write_graphs(graphs: Iterable[Graph], fmt: str, output: Path | None) -> int:
    """Write graphs to ``output`` or standard output; returns the count."""
    count = 0
    stream: TextIO = output.open("w", encoding="ascii") if output else sys.stdout
    try:
        for g in graphs:
            stream.write(format_graph(g, fmt))
            count += 1
    finally:
        if output:
            stream.close()
    return count


def read_graphs(paths: Sequence[str], k: int | None = None) -> list[Graph]:
    """Read graph6 lines from files, ``-`` meaning standard input."""
    graphs = []
    for name in paths:
        text = sys.stdin.read() if name == "-" else Path(name).read_text(encoding="ascii")
        graphs.extend(graph6_decode(line, k) for line in text.splitlines() if line.strip())
    return graphs


def _binned(graphs: Sequence[Graph], source: Source, assigner: BinAssigner) -> BinnedSample:
    sample = BinnedSample(n=assigner.n, k=assigner.k, assigner=assigner)
    for g in graphs:
        chi = clustering_coefficient(g)
        sample.add(
            SampleEntry(graph=g, chi=chi, source=source, seed=0, bin_index=assigner.assign(chi))
        )
    return sample


def _single_size(graphs: Sequence[Graph]) -> tuple[int, int]:
    sizes = {(g.n, g.k) for g in graphs}
    if len(sizes) != 1:
        raise GraphLibraryError(
            "input must hold graphs of exactly one size",
            {"sizes": sorted(sizes)},
        )
    return sizes.pop()


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gen_cc(args: argparse.Namespace) -> int:
    config = RunConfig(
        n_values=[args.n],
        k=args.k,
        target_per_bin=args.target_per_bin,
        batch_cap=args.batch_cap,
        abort_limit=args.abort_limit,
        max_steps=args.max_steps,
        x4_rule=args.x4_rule,
        seed=args.seed,
    )
    assigner = BinAssigner(n=args.n, k=args.k)
    start = cave_chain(CaveChainSpec(args.n, args.k))
    graphs: list[Graph] = []
    for run in range(args.runs):
        seed = derive_seed(args.seed, args.n, "CC", run)
        produced = build_down_run(start, config.walk_config(seed), assigner)
        graphs.extend(item.graph for item in produced)
    count = write_graphs(graphs, args.format, args.output)
    logger.info("Generated %d CC graphs for n=%d in %d runs", count, args.n, args.runs)
    return 0


def cmd_gen_uniform(args: argparse.Namespace) -> int:
    rng = np.random.default_rng(derive_seed(args.seed, args.n, "WM", 0))
    graphs = (uniform_regular(args.n, args.k, rng) for _ in range(args.count))
    count = write_graphs(graphs, args.format, args.output)
    logger.info("Generated %d uniform graphs for n=%d", count, args.n)
    return 0


def cmd_dedup(args: argparse.Namespace) -> int:
    graphs = read_graphs(args.inputs, args.k)
    index: DedupIndex[None] = DedupIndex()
    unique = [g for g in graphs if index.insert(g)]
    write_graphs(unique, args.format, args.output)
    logger.info("Dedup: %d -> %d graphs", len(graphs), len(unique))
    return 0


def cmd_merge(args: argparse.Namespace) -> int:
    wm_graphs = read_graphs([args.wm], args.k)
    cc_graphs = read_graphs([args.cc], args.k)
    n, k = _single_size([*wm_graphs, *cc_graphs])
    assigner = BinAssigner(n=n, k=k)
    merged = merge_and_dedup(
        dedup_sample(_binned(wm_graphs, Source.WM, assigner)),
        dedup_sample(_binned(cc_graphs, Source.CC, assigner)),
    )
    write_graphs((entry.graph for entry in merged.entries()), args.format, args.output)
    for b, counts in sorted(merged.overlap.items()):
        logger.info(
            "bin %d: WM only %d, CC only %d, both %d",
            b,
            counts.wm_only,
            counts.cc_only,
            counts.overlap,
        )
    return 0


def cmd_subsample(args: argparse.Namespace) -> int:
    graphs = read_graphs(args.inputs, args.k)
    n, k = _single_size(graphs)
    sample = _binned(graphs, Source.WM, BinAssigner(n=n, k=k))
    kept: list[Graph] = []
    for b in sorted(sample.bins):
        entries = sample.bins[b]
        for entry in entries:
            entry.mean_distance = mean_graph_distance(entry.graph)
        result = subsample_bin(
            entries,
            batch_size=args.batch_size,
            draws=args.draws,
            max_draws=args.max_draws,
            p_threshold=args.p_threshold,
            seed=derive_seed(args.seed, n, "subsample", b),
        )
        kept.extend(entry.graph for entry in result.entries)
    write_graphs(kept, args.format, args.output)
    logger.info("Subsample: %d -> %d graphs over %d bins", len(graphs), len(kept), len(sample.bins))
    return 0


async def _build(config: RunConfig, checkpoint: bool) -> None:
    from regular_graph_library.db import close_database, init_database

    if not checkpoint:
        library = await build_library(config)
    else:
        await init_database()
        try:
            library = await build_library(config, get_checkpoint_repository())
        finally:
            await close_database()
    write_library(library, config.output_dir)


def cmd_build(args: argparse.Namespace) -> int:
    settings = get_settings()
    config = RunConfig(
        n_values=args.n,
        k=args.k,
        target_per_bin=args.target_per_bin,
        batch_cap=args.batch_cap,
        abort_limit=args.abort_limit,
        max_steps=args.max_steps,
        wm_draws=args.wm_draws,
        wm_shards=args.wm_shards,
        cc_runs=args.cc_runs,
        batch_size=args.batch_size,
        draws=args.draws,
        max_draws=args.max_draws,
        p_threshold=args.p_threshold,
        null_draws=args.null_draws,
        exhaustive_max_n=args.exhaustive_max_n,
        x4_rule=args.x4_rule,
        seed=args.seed,
        workers=args.workers or settings.workers,
        output_dir=args.output_dir or settings.output_dir,
    )
    checkpoint = settings.checkpoint_enabled and not args.no_checkpoint
    asyncio.run(_build(config, checkpoint))
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    written = write_reports(args.library, args.out)
    for path in written:
        print(path)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    report = verify_library(args.library)
    if report.ok:
        print(f"OK: {report.graphs_checked} graphs in {report.files_checked} files")
        return 0
    for issue in report.issues:
        print(f"{issue.code}: {issue.message}", file=sys.stderr)
    return 1


def cmd_estimate(args: argparse.Namespace) -> int:
    log_base = LogBase(args.log_base)
    if args.fit:
        model = fit_population_model(log_base=log_base)
        print(
            f"intercept={model.intercept:.4f} slope={model.slope:.4f} "
            f"log_coefficient={model.log_coefficient:.4f} r_squared={model.r_squared:.6f}"
        )
    print("n,log10_estimate,estimate")
    for n in args.n:
        value = population_estimate_log10(n, log_base)
        print(f"{n},{value:.4f},{10.0**value:.4g}")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    print(export_library(args.library, args.archive))
    return 0


# ---------------------------------------------------------------------------
# CLI setup
# ---------------------------------------------------------------------------


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=["graph6", "edgelist"],
        default="graph6",
        help="Graph output format (default: graph6)",
    )
    parser.add_argument("--output", type=Path, help="Output file (default: standard output)")


def _add_walk(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--target-per-bin", type=int, default=1000, help="Raw graphs per bin")
    parser.add_argument("--batch-cap", type=int, default=20, help="Graphs per bin and run")
    parser.add_argument("--abort-limit", type=int, default=500, help="Consecutive aborts per run")
    parser.add_argument("--max-steps", type=int, default=200_000, help="Swap attempts per run")
    parser.add_argument(
        "--x4-rule",
        choices=[rule.value for rule in X4Rule],
        default=X4Rule.ALTER.value,
        help="Selection rule for the fourth swap vertex",
    )


def _add_subsample(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--batch-size", type=int, default=100, help="Final graphs per bin")
    parser.add_argument("--draws", type=int, default=10_000, help="Subsets scored per bin")
    parser.add_argument("--max-draws", type=int, default=100_000, help="Subset budget per bin")
    parser.add_argument("--p-threshold", type=float, default=0.999, help="Early-stop p-value")


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with subcommands."""
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="regular-graph-library",
        description="Build unbiased libraries of connected k-regular graphs.",
        epilog=(
            "Environment variables:\n"
            "  LOG_LEVEL, LOG_FORMAT   Logging on standard error\n"
            "  DATABASE_URL            Checkpoint store for `build`\n"
            "  WORKERS, OUTPUT_DIR     Defaults for `build`\n"
        ),
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    seed_default = settings.default_seed

    # --- gen-cc ---
    gen_cc = subparsers.add_parser("gen-cc", help="Run the cave-chain build-down walk")
    gen_cc.add_argument("--n", type=int, required=True, help="Vertex count, a multiple of k+1")
    gen_cc.add_argument("--k", type=int, default=4, help="Degree (default: 4)")
    gen_cc.add_argument("--runs", type=int, default=1, help="Independent runs (default: 1)")
    gen_cc.add_argument("--seed", type=int, default=seed_default, help="Master seed")
    _add_walk(gen_cc)
    _add_output(gen_cc)
    gen_cc.set_defaults(handler=cmd_gen_cc)

    # --- gen-uniform ---
    gen_uniform = subparsers.add_parser("gen-uniform", help="Draw uniform random regular graphs")
    gen_uniform.add_argument("--n", type=int, required=True, help="Vertex count")
    gen_uniform.add_argument("--k", type=int, default=4, help="Degree (default: 4)")
    gen_uniform.add_argument("--count", type=int, default=100, help="Graphs to draw")
    gen_uniform.add_argument("--seed", type=int, default=seed_default, help="Master seed")
    _add_output(gen_uniform)
    gen_uniform.set_defaults(handler=cmd_gen_uniform)

    # --- dedup ---
    dedup = subparsers.add_parser("dedup", help="Keep one graph per isomorphism class")
    dedup.add_argument("inputs", nargs="+", help="graph6 files, '-' for standard input")
    dedup.add_argument("--k", type=int, help="Nominal degree of the input graphs")
    _add_output(dedup)
    dedup.set_defaults(handler=cmd_dedup)

    # --- merge ---
    merge = subparsers.add_parser("merge", help="Merge WM and CC samples without duplicates")
    merge.add_argument("--wm", required=True, help="graph6 file of pairing-model graphs")
    merge.add_argument("--cc", required=True, help="graph6 file of build-down graphs")
    merge.add_argument("--k", type=int, help="Nominal degree of the input graphs")
    _add_output(merge)
    merge.set_defaults(handler=cmd_merge)

    # --- subsample ---
    subsample = subparsers.add_parser("subsample", help="Reduce every bin to its most normal batch")
    subsample.add_argument("inputs", nargs="+", help="graph6 files of one size")
    subsample.add_argument("--k", type=int, help="Nominal degree of the input graphs")
    subsample.add_argument("--seed", type=int, default=seed_default, help="Master seed")
    _add_subsample(subsample)
    _add_output(subsample)
    subsample.set_defaults(handler=cmd_subsample)

    # --- build ---
    build = subparsers.add_parser("build", help="Run the full pipeline and write a library")
    build.add_argument("--n", type=int, nargs="+", required=True, help="Vertex counts")
    build.add_argument("--k", type=int, default=4, help="Degree (default: 4)")
    build.add_argument("--seed", type=int, default=seed_default, help="Master seed")
    build.add_argument("--wm-draws", type=int, default=15_000, help="Pairing draws per size")
    build.add_argument("--wm-shards", type=int, default=10, help="Pairing-model tasks per size")
    build.add_argument("--cc-runs", type=int, default=100, help="Build-down runs per size")
    build.add_argument("--null-draws", type=int, default=10_000, help="CvM null bootstrap size")
    build.add_argument(
        "--exhaustive-max-n", type=int, default=10, help="Largest size closed under swaps"
    )
    build.add_argument("--workers", type=int, help="Worker processes (default: WORKERS)")
    build.add_argument("--output-dir", type=Path, help="Library directory (default: OUTPUT_DIR)")
    build.add_argument(
        "--no-checkpoint", action="store_true", help="Do not store or resume campaign tasks"
    )
    _add_walk(build)
    _add_subsample(build)
    build.set_defaults(handler=cmd_build)

    # --- report ---
    report = subparsers.add_parser("report", help="Write the CSV reports of a library")
    report.add_argument("library", type=Path, help="Library directory")
    report.add_argument("--out", type=Path, required=True, help="Report directory")
    report.set_defaults(handler=cmd_report)

    # --- verify ---
    verify = subparsers.add_parser("verify", help="Re-check every invariant of a library")
    verify.add_argument("library", type=Path, help="Library directory")
    verify.set_defaults(handler=cmd_verify)

    # --- estimate ---
    estimate = subparsers.add_parser("estimate", help="Estimated number of 4-regular classes")
    estimate.add_argument("--n", type=int, nargs="+", required=True, help="Vertex counts")
    estimate.add_argument(
        "--log-base",
        choices=[base.value for base in LogBase],
        default=LogBase.NATURAL.value,
        help="Reading of the log term (default: natural)",
    )
    estimate.add_argument("--fit", action="store_true", help="Also print a fit to known counts")
    estimate.set_defaults(handler=cmd_estimate)

    # --- export ---
    export = subparsers.add_parser("export", help="Pack a library into a zip archive")
    export.add_argument("library", type=Path, help="Library directory")
    export.add_argument("archive", type=Path, help="Zip file to create")
    export.set_defaults(handler=cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command; returns 0 on success, 1 on failure, 2 on bad arguments."""
    # Load environment variables from .env file
    load_dotenv()
    setup_logging()

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    from regular_graph_library.telemetry import setup_telemetry, shutdown_telemetry

    setup_telemetry()
    try:
        return int(args.handler(args))
    except ValidationError as e:
        for error in e.errors(include_url=False):
            logger.error("Invalid argument %s: %s", ".".join(map(str, error["loc"])), error["msg"])
        return 2
    except GraphLibraryError as e:
        logger.error("%s: %s", e.code.value, e.message, extra={"details": e.details})
        return 1
    except OSError as e:
        logger.error("I/O error: %s", e)
        return 1
    finally:
        shutdown_telemetry()


if __name__ == "__main__":
    sys.exit(main())
