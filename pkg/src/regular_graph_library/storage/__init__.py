"""On-disk library format: graph6 bin files, CSV manifests, reports, verification and export."""

from regular_graph_library.core import graph6_decode, graph6_encode
from regular_graph_library.storage.export import export_library, import_library
from regular_graph_library.storage.manifest import (
    BINS_FILE,
    CONFIG_FILE,
    MANIFEST_FILE,
    SAMPLES_FILE,
    build_manifest,
    read_bin_file,
    read_manifest,
    read_samples,
    write_config,
    write_library,
)
from regular_graph_library.storage.models import (
    BinRecord,
    GraphRecord,
    LibraryManifest,
    SampleRecord,
)
from regular_graph_library.storage.report import write_reports
from regular_graph_library.storage.verify import (
    VerificationIssue,
    VerificationReport,
    verify_library,
)

__all__ = [
    # Codec
    "graph6_decode",
    "graph6_encode",
    # Models
    "BinRecord",
    "GraphRecord",
    "LibraryManifest",
    "SampleRecord",
    # Manifest
    "BINS_FILE",
    "CONFIG_FILE",
    "MANIFEST_FILE",
    "SAMPLES_FILE",
    "build_manifest",
    "read_bin_file",
    "read_manifest",
    "read_samples",
    "write_config",
    "write_library",
    # Export
    "export_library",
    "import_library",
    # Reports
    "write_reports",
    # Verification
    "VerificationIssue",
    "VerificationReport",
    "verify_library",
]
