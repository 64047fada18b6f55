"""Zip export and import of library directories."""

import logging
import zipfile
from pathlib import Path, PurePosixPath

from regular_graph_library.core import LibraryValidationError
from regular_graph_library.storage.manifest import (
    BINS_FILE,
    CONFIG_FILE,
    MANIFEST_FILE,
    SAMPLES_FILE,
    read_manifest,
)
from regular_graph_library.storage.models import LibraryManifest

logger = logging.getLogger(__name__)

# Earliest timestamp zip can store; fixed so archives are byte-stable.
ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)


def _library_members(directory: Path) -> list[str]:
    members = [
        name
        for name in (CONFIG_FILE, MANIFEST_FILE, BINS_FILE, SAMPLES_FILE)
        if (directory / name).is_file()
    ]
    members.extend(
        path.relative_to(directory).as_posix()
        for path in directory.glob("n*/*.g6")
        if path.is_file()
    )
    return sorted(members)


def export_library(directory: Path, archive: Path) -> Path:
    """Pack a library directory into a zip archive.

    Entries are sorted and carry a fixed timestamp and mode, so identical
    directories give identical archives.

    Args:
        directory: Library written by :func:`write_library`.
        archive: Path of the zip file to create.

    Returns:
        ``archive``.

    Raises:
        LibraryValidationError: If ``directory`` has no manifest.
    """
    read_manifest(directory)
    members = _library_members(directory)
    archive.parent.mkdir(parents=True, exist_ok=True)
    with zipfile.ZipFile(archive, "w") as zf:
        for name in members:
            info = zipfile.ZipInfo(name, date_time=ZIP_EPOCH)
            info.compress_type = zipfile.ZIP_DEFLATED
            info.external_attr = 0o644 << 16
            zf.writestr(info, (directory / name).read_bytes())
    logger.info("Exported %d files from %s to %s", len(members), directory, archive)
    return archive


def import_library(archive: Path, directory: Path) -> LibraryManifest:
    """Unpack an exported archive and parse its manifest.

    Raises:
        LibraryValidationError: If an entry would escape ``directory``.
    """
    directory.mkdir(parents=True, exist_ok=True)
    with zipfile.ZipFile(archive) as zf:
        for name in zf.namelist():
            member = PurePosixPath(name)
            if member.is_absolute() or ".." in member.parts:
                raise LibraryValidationError(
                    "archive entry escapes the target directory", {"entry": name}
                )
        zf.extractall(directory)
    logger.info("Imported %s into %s", archive, directory)
    return read_manifest(directory)
