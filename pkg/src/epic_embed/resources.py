"""Access to data files bundled with the package."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def data_path(name: str) -> Path:
    """Filesystem path of a bundled data file."""
    return Path(str(files("epic_embed").joinpath("data", name)))
