"""Locate a WNDB dictionary directory, unpacking the bundled copy on demand.

The package ships the WordNet 3.0 database (Princeton license) as a
compressed archive so the engine works out of the box.  Resolution order:
an explicit path, the SEMRANK_WORDNET_DIR environment variable, then the
bundled archive extracted into a per-user cache.
"""

from __future__ import annotations

import os
import tarfile
import tempfile
from importlib import resources
from pathlib import Path

from ..errors import ConfigError

ENV_VAR = "SEMRANK_WORDNET_DIR"
_ARCHIVE = "WNdb-3.0.tar.gz"
_REQUIRED = tuple(
    f"{kind}.{suffix}" for kind in ("index", "data") for suffix in ("noun", "verb", "adj", "adv")
)


def _cache_root() -> Path:
    xdg = os.environ.get("XDG_CACHE_HOME")
    base = Path(xdg) if xdg else Path.home() / ".cache"
    return base / "semrank"


def _is_complete(dict_dir: Path) -> bool:
    return all((dict_dir / name).is_file() for name in _REQUIRED)


def bundled_dict_dir(cache_root: Path | None = None) -> Path:
    """Extract the bundled archive if needed and return its dict directory."""
    root = cache_root if cache_root is not None else _cache_root()
    target = root / "wordnet-3.0"
    dict_dir = target / "dict"
    if _is_complete(dict_dir):
        return dict_dir

    target.mkdir(parents=True, exist_ok=True)
    archive = resources.files("semrank.wordnet") / "data" / _ARCHIVE
    # Extract into a temp sibling then rename, so a crash mid-extract never
    # leaves a directory that passes the completeness check later.
    with resources.as_file(archive) as archive_path:
        with tempfile.TemporaryDirectory(dir=target) as scratch:
            with tarfile.open(archive_path, "r:gz") as tar:
                for member in tar.getmembers():
                    if not member.isfile():
                        continue
                    name = Path(member.name)
                    if name.is_absolute() or ".." in name.parts:
                        raise ConfigError(f"unsafe archive member {member.name!r}")
                    tar.extract(member, scratch)
            extracted = Path(scratch) / "dict"
            if not _is_complete(extracted):
                raise ConfigError("bundled dictionary archive is incomplete")
            try:
                extracted.rename(dict_dir)
            except OSError:
                if not _is_complete(dict_dir):  # lost a race to another process
                    raise
    return dict_dir


def resolve_dict_dir(explicit: str | os.PathLike | None = None) -> Path:
    """Pick the dictionary directory: explicit > $SEMRANK_WORDNET_DIR > bundled."""
    for candidate in (explicit, os.environ.get(ENV_VAR)):
        if candidate:
            path = Path(candidate)
            if not _is_complete(path):
                raise ConfigError(f"{path} does not contain the WNDB files")
            return path
    return bundled_dict_dir()
