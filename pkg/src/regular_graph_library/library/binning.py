"""Equal-width clustering bins."""

from fractions import Fraction
from math import floor

from pydantic import BaseModel, ConfigDict, Field, model_validator

from regular_graph_library.core import BinOutOfRangeError
from regular_graph_library.metrics import max_clustering_fraction

RANGE_TOLERANCE = 1e-12
# Clustering values are ratios with small denominators; recover them exactly.
_MAX_DENOMINATOR = 1_000_000


def default_bin_count(n: int, k: int) -> int:
    """Nominal bin count ``round(2 n chi_max)``; ``7n/5`` for k=4."""
    return max(1, round(2 * n * max_clustering_fraction(k)))


class BinAssigner(BaseModel):
    """Splits ``[0, chi_max]`` into ``bin_count`` equal-width bins."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., gt=0)
    k: int = Field(..., ge=3, description="Degree; below 3 no graph has triangles")
    bin_count: int = Field(default=0, ge=0, description="0 selects the nominal count")

    @model_validator(mode="after")
    def _default_count(self) -> "BinAssigner":
        if self.n <= self.k + 1:
            # K_{k+1} is the only k-regular graph on k+1 vertices and exceeds chi_max.
            raise ValueError(f"clustering bins need n > k + 1, got n={self.n}, k={self.k}")
        if self.bin_count == 0:
            object.__setattr__(self, "bin_count", default_bin_count(self.n, self.k))
        return self

    @property
    def chi_max(self) -> Fraction:
        return max_clustering_fraction(self.k)

    @property
    def width(self) -> float:
        return float(self.chi_max / self.bin_count)

    def assign(self, chi: float | Fraction) -> int:
        """Bin index of ``chi``; values at ``chi_max`` fall in the last bin.

        Raises:
            BinOutOfRangeError: If ``chi`` lies outside ``[0, chi_max]`` by
                more than 1e-12.
        """
        if chi < -RANGE_TOLERANCE or chi > self.chi_max + Fraction(RANGE_TOLERANCE):
            raise BinOutOfRangeError(
                "clustering value outside the feasible range",
                {"chi": float(chi), "chi_max": float(self.chi_max)},
            )
        exact = chi if isinstance(chi, Fraction) else Fraction(chi).limit_denominator(
            _MAX_DENOMINATOR
        )
        index = floor(exact * self.bin_count / self.chi_max)
        return min(max(index, 0), self.bin_count - 1)

    def interval(self, index: int) -> tuple[float, float]:
        """Half-open ``[low, high)`` clustering range of a bin."""
        low = self.chi_max * index / self.bin_count
        high = self.chi_max * (index + 1) / self.bin_count
        return float(low), float(high)

    def label(self, index: int) -> str:
        low, high = self.interval(index)
        return f"bin{index}_chi{low:.4f}-{high:.4f}"


def assign_bin(chi: float | Fraction, assigner: BinAssigner) -> int:
    """Bin index of ``chi`` under ``assigner``."""
    return assigner.assign(chi)
