"""Data models for graph metrics and sample statistics."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class LogBase(str, Enum):
    """Reading of the logarithm in the population estimate."""

    NATURAL = "natural"
    BASE10 = "base10"


class GraphMetrics(BaseModel):
    """Structural measures of one connected regular graph."""

    model_config = ConfigDict(frozen=True)

    chi: float = Field(..., description="Average local clustering coefficient")
    mean_distance: float = Field(..., description="Mean shortest-path length over vertex pairs")
    closeness_mean: float = Field(..., description="Mean closeness centrality (n-1)/sum(d)")
    vertex_betweenness_mean: float = Field(
        ..., description="Mean vertex betweenness over ordered source/target pairs"
    )
    edge_betweenness_mean: float = Field(
        ..., description="Mean edge betweenness over ordered source/target pairs"
    )
    eigenvector_mean: float = Field(..., description="Mean eigenvector centrality (unit sum)")


class SampleMoments(BaseModel):
    """Moments and normality score of a sample of values."""

    model_config = ConfigDict(frozen=True)

    size: int = Field(..., ge=0)
    mean: float
    std_dev: float = Field(..., description="Sample standard deviation (n-1 denominator)")
    skewness: float | None = Field(
        ..., description="Fisher-Pearson g1 skewness; None below 3 values"
    )
    cvm_score: float | None = Field(
        default=None,
        description="Cramer-von Mises normality p-value; None below 8 values",
    )
    degenerate: bool = Field(
        default=False,
        description="All values equal; skewness reported as 0",
    )


class PopulationModel(BaseModel):
    """Log-linear model ``log10 N(n) = a + b*n + c*log(n)`` for class counts."""

    model_config = ConfigDict(frozen=True)

    intercept: float
    slope: float
    log_coefficient: float
    log_base: LogBase = LogBase.NATURAL
    r_squared: float | None = Field(
        default=None,
        description="Squared correlation of predicted vs known log10 counts",
    )
