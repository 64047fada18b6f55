"""On-disk record types of a library directory."""

from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from regular_graph_library.generators import Source
from regular_graph_library.library import CollectionMethod, RunConfig


class _CsvRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    @field_validator("*", mode="before")
    @classmethod
    def _blank_is_none(cls, value: Any) -> Any:
        return None if value == "" else value


class GraphRecord(_CsvRecord):
    """One row of ``manifest.csv``: a graph of the final library."""

    n: int
    k: int
    bin_index: int
    chi: float = Field(..., description="Clustering coefficient, 6 decimals on disk")
    mean_distance: float = Field(..., description="Mean graph distance, 6 decimals on disk")
    source: Source = Field(..., description="Generator of the stored labeling")
    found_by: str = Field(..., description="Every generator that found the class, ';'-joined")
    seed: int
    canonical_id: str = Field(..., description="graph6 of the canonical labeling")
    file: str = Field(..., description="Bin file, relative to the library directory")
    line: int = Field(..., ge=1, description="1-based line of the graph in its bin file")


class BinRecord(_CsvRecord):
    """One row of ``bins.csv``: sizes and distance moments of a bin."""

    n: int
    bin_index: int
    chi_low: float
    chi_high: float
    method: CollectionMethod
    wm_raw: int
    wm_noniso: int
    cc_raw: int
    cc_noniso: int
    wm_only: int
    cc_only: int
    overlap: int
    closure_only: int = 0
    merged_size: int
    final_size: int
    merged_mean: float | None = None
    merged_std: float | None = None
    merged_skewness: float | None = None
    merged_cvm_p: float | None = None
    final_mean: float | None = None
    final_std: float | None = None
    final_skewness: float | None = None
    final_cvm_p: float | None = None
    draws_used: int = 0
    best_p: float | None = None
    file: str


class SampleRecord(_CsvRecord):
    """One row of ``samples.csv``: a merged-bin graph and whether it was kept."""

    n: int
    bin_index: int
    source: Source
    found_by: str
    chi: float
    mean_distance: float
    selected: bool


class LibraryManifest(BaseModel):
    """Parsed content of ``config.json``, ``manifest.csv`` and ``bins.csv``."""

    config: RunConfig
    graphs: list[GraphRecord] = Field(default_factory=list)
    bins: list[BinRecord] = Field(default_factory=list)

    def files(self) -> list[str]:
        """Referenced bin files, sorted."""
        return sorted({record.file for record in self.graphs})

    def sizes(self) -> list[int]:
        return sorted({record.n for record in self.bins})


GRAPH_FIELDS = list(GraphRecord.model_fields)
BIN_FIELDS = list(BinRecord.model_fields)
SAMPLE_FIELDS = list(SampleRecord.model_fields)
