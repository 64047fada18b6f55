"""Library assembly: binning, campaigns, dedup, merge, subsample and the build pipeline."""

from regular_graph_library.library.binning import BinAssigner, assign_bin, default_bin_count
from regular_graph_library.library.campaigns import (
    CampaignOutput,
    CampaignTask,
    TaskKind,
    cave_chain_available,
    derive_seed,
    plan_tasks,
    run_campaign_task,
)
from regular_graph_library.library.checkpoint import (
    CheckpointRepository,
    get_checkpoint_repository,
)
from regular_graph_library.library.merge import dedup_sample, merge_and_dedup
from regular_graph_library.library.models import (
    BinnedSample,
    BinOverlap,
    BinStatistics,
    CollectionMethod,
    FinalBin,
    FinalLibrary,
    LibraryPartition,
    RunConfig,
    SampleEntry,
    SubsampleResult,
)
from regular_graph_library.library.pipeline import LibraryBuilder, build_library
from regular_graph_library.library.subsample import bin_moments, select_batch, subsample_bin

__all__ = [
    # Models
    "BinOverlap",
    "BinStatistics",
    "BinnedSample",
    "CollectionMethod",
    "FinalBin",
    "FinalLibrary",
    "LibraryPartition",
    "RunConfig",
    "SampleEntry",
    "SubsampleResult",
    # Binning
    "BinAssigner",
    "assign_bin",
    "default_bin_count",
    # Campaigns
    "CampaignOutput",
    "CampaignTask",
    "TaskKind",
    "cave_chain_available",
    "derive_seed",
    "plan_tasks",
    "run_campaign_task",
    # Checkpoints
    "CheckpointRepository",
    "get_checkpoint_repository",
    # Dedup and merge
    "dedup_sample",
    "merge_and_dedup",
    # Subsample
    "bin_moments",
    "select_batch",
    "subsample_bin",
    # Pipeline
    "LibraryBuilder",
    "build_library",
]
