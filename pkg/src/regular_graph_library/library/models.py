"""Data models for library runs, samples and results."""

import hashlib
import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from regular_graph_library.canon import CanonicalForm
from regular_graph_library.core import Graph, X4Rule
from regular_graph_library.generators import Source, WalkConfig
from regular_graph_library.library.binning import BinAssigner
from regular_graph_library.metrics import SampleMoments


class CollectionMethod(str, Enum):
    """How the classes of one graph size were collected."""

    EXHAUSTIVE = "all_found"
    SAMPLED = "sampled"


class RunConfig(BaseModel):
    """Every parameter of a library build; echoed verbatim to ``config.json``."""

    model_config = ConfigDict(frozen=True)

    n_values: list[int] = Field(default_factory=list, description="Graph sizes to build")
    k: int = Field(default=4, ge=3, description="Degree")
    target_per_bin: int = Field(
        default=1000, gt=0, description="Raw graphs kept per bin and source"
    )
    batch_cap: int = Field(default=20, ge=0, description="Graphs per bin in one build-down run")
    abort_limit: int = Field(default=500, gt=0, description="Consecutive aborts ending a run")
    max_steps: int = Field(default=200_000, gt=0, description="Swap attempts per run")
    wm_draws: int = Field(default=15_000, ge=0, description="Pairing-model draws per size")
    wm_shards: int = Field(default=10, gt=0, description="Independent pairing-model tasks")
    cc_runs: int = Field(default=100, ge=0, description="Build-down runs per size")
    batch_size: int = Field(default=100, gt=0, description="Final graphs per bin")
    draws: int = Field(default=10_000, gt=0, description="Random subsets scored per bin")
    max_draws: int = Field(default=100_000, gt=0, description="Subset budget per bin")
    p_threshold: float = Field(default=0.999, gt=0, le=1, description="Early-stop p-value")
    null_draws: int = Field(default=10_000, gt=0, description="Bootstrap size of the CvM null")
    exhaustive_max_n: int = Field(
        default=10, ge=0, description="Largest size collected by exhaustive swap closure"
    )
    x4_rule: X4Rule = Field(default=X4Rule.ALTER, description="Swap selection rule for x4")
    seed: int = Field(default=0, ge=0, description="Master seed")
    workers: int = Field(default=1, gt=0, description="Worker processes")
    output_dir: Path = Field(default=Path("library"), description="Library directory")

    @field_validator("n_values")
    @classmethod
    def _sorted_unique(cls, values: list[int]) -> list[int]:
        return sorted(set(values))

    @model_validator(mode="after")
    def _check_sizes(self) -> "RunConfig":
        for n in self.n_values:
            if n <= self.k or (n * self.k) % 2:
                raise ValueError(f"no connected {self.k}-regular graph on {n} vertices")
            if n == self.k + 1:
                raise ValueError(f"n={n} admits only the complete graph, outside the binned range")
        if self.batch_cap > self.target_per_bin:
            raise ValueError("batch_cap must not exceed target_per_bin")
        if self.draws > self.max_draws:
            raise ValueError("draws must not exceed max_draws")
        return self

    def walk_config(self, seed: int) -> WalkConfig:
        return WalkConfig(
            batch_cap=self.batch_cap,
            abort_limit=self.abort_limit,
            seed=seed,
            target_per_bin=self.target_per_bin,
            max_steps=self.max_steps,
            x4_rule=self.x4_rule,
        )

    def digest(self) -> str:
        """Hash of the parameters that determine generated graphs."""
        relevant = self.model_dump(mode="json", exclude={"workers", "output_dir"})
        encoded = json.dumps(relevant, sort_keys=True).encode("utf-8")
        return hashlib.sha256(encoded).hexdigest()[:16]


@dataclass
class SampleEntry:
    """One graph in a binned sample."""

    graph: Graph
    chi: float
    source: Source
    seed: int
    bin_index: int
    mean_distance: float | None = None
    sources: frozenset[Source] = frozenset()
    form: CanonicalForm | None = None

    def __post_init__(self) -> None:
        if not self.sources:
            self.sources = frozenset({self.source})


class BinOverlap(BaseModel):
    """Per-bin provenance of merged classes."""

    bin_index: int
    wm_only: int = 0
    cc_only: int = 0
    overlap: int = 0
    closure_only: int = 0


@dataclass
class BinnedSample:
    """Graphs of one size grouped by clustering bin."""

    n: int
    k: int
    assigner: BinAssigner
    bins: dict[int, list[SampleEntry]] = field(default_factory=dict)
    overlap: dict[int, BinOverlap] = field(default_factory=dict)

    def add(self, entry: SampleEntry) -> None:
        self.bins.setdefault(entry.bin_index, []).append(entry)

    def entries(self) -> list[SampleEntry]:
        return [entry for index in sorted(self.bins) for entry in self.bins[index]]

    def bin_sizes(self) -> dict[int, int]:
        return {index: len(entries) for index, entries in sorted(self.bins.items())}

    def __len__(self) -> int:
        return sum(len(entries) for entries in self.bins.values())


@dataclass
class SubsampleResult:
    """Outcome of the normality-driven subsample of one bin."""

    entries: list[SampleEntry]
    before: SampleMoments | None
    after: SampleMoments | None
    draws_used: int = 0
    best_p: float | None = None


class BinStatistics(BaseModel):
    """Sizes and distance moments of one bin through the pipeline."""

    n: int
    bin_index: int
    chi_low: float
    chi_high: float
    wm_raw: int = 0
    wm_noniso: int = 0
    cc_raw: int = 0
    cc_noniso: int = 0
    wm_only: int = 0
    cc_only: int = 0
    overlap: int = 0
    closure_only: int = 0
    merged_size: int = 0
    final_size: int = 0
    merged: SampleMoments | None = None
    final: SampleMoments | None = None
    draws_used: int = 0
    best_p: float | None = None


@dataclass
class FinalBin:
    """Final graphs of one bin, with the merged distances they were drawn from."""

    bin_index: int
    entries: list[SampleEntry]
    merged_entries: list[SampleEntry]
    statistics: BinStatistics


@dataclass
class LibraryPartition:
    """Library content for one graph size."""

    n: int
    k: int
    assigner: BinAssigner
    method: CollectionMethod
    bins: dict[int, FinalBin] = field(default_factory=dict)

    @property
    def graph_count(self) -> int:
        return sum(len(b.entries) for b in self.bins.values())


@dataclass
class FinalLibrary:
    """Result of :func:`build_library`."""

    config: RunConfig
    partitions: dict[int, LibraryPartition] = field(default_factory=dict)

    @property
    def graph_count(self) -> int:
        return sum(p.graph_count for p in self.partitions.values())
