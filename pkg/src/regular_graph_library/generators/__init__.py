"""Graph sources: cave-chain build-down walk and uniform pairing model."""

from regular_graph_library.generators.build_down import build_down_run, swap_closure
from regular_graph_library.generators.cave_chain import cave_chain
from regular_graph_library.generators.models import (
    BinLookup,
    CaveChainSpec,
    GeneratedGraph,
    Source,
    WalkConfig,
)
from regular_graph_library.generators.pairing import uniform_regular, wm_campaign

__all__ = [
    # Models
    "BinLookup",
    "CaveChainSpec",
    "GeneratedGraph",
    "Source",
    "WalkConfig",
    # Cave chain
    "cave_chain",
    # Build-down
    "build_down_run",
    "swap_closure",
    # Pairing model
    "uniform_regular",
    "wm_campaign",
]
