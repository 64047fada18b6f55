"""Data models for the graph generators."""

from dataclasses import dataclass
from enum import Enum
from typing import Protocol

from pydantic import BaseModel, ConfigDict, Field, model_validator

from regular_graph_library.core import Graph, X4Rule


class Source(str, Enum):
    """Which generator produced a graph."""

    WM = "WM"  # uniform pairing model
    CC = "CC"  # cave-chain build-down walk
    CLOSURE = "closure"  # exhaustive swap closure of small sizes


class BinLookup(Protocol):
    """Anything that maps a clustering value to a bin index."""

    @property
    def bin_count(self) -> int: ...

    def assign(self, chi: float) -> int: ...


@dataclass(frozen=True)
class CaveChainSpec:
    """Ring of ``n / (k+1)`` caves, each a (k+1)-clique with one edge removed."""

    n: int
    k: int

    @property
    def caves(self) -> int:
        return self.n // (self.k + 1)


class WalkConfig(BaseModel):
    """Parameters of one build-down run."""

    model_config = ConfigDict(frozen=True)

    batch_cap: int = Field(
        default=20,
        ge=0,
        description="Graphs collected per clustering bin in one run",
    )
    abort_limit: int = Field(
        default=500,
        gt=0,
        description="Consecutive rejected steps that end the run",
    )
    seed: int = Field(default=0, ge=0, description="Seed of the run's random stream")
    target_per_bin: int = Field(
        default=1000,
        gt=0,
        description="Raw graphs wanted per bin across all runs",
    )
    max_steps: int = Field(
        default=200_000,
        gt=0,
        description="Swap attempts after which the run ends regardless",
    )
    x4_rule: X4Rule = Field(default=X4Rule.ALTER, description="Selection rule for x4")

    @model_validator(mode="after")
    def _cap_within_target(self) -> "WalkConfig":
        if self.batch_cap > self.target_per_bin:
            raise ValueError("batch_cap must not exceed target_per_bin")
        return self


@dataclass(frozen=True)
class GeneratedGraph:
    """A generated graph with its clustering value and provenance."""

    graph: Graph
    chi: float
    source: Source
    seed: int
    bin_index: int
