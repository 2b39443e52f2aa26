"""Filesystem helpers: atomic writes and magic-line checks."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .errors import FormatError


def atomic_write_text(path: str | Path, content: str) -> None:
    """Write a file via a temp file + rename so readers never see torn writes."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(content)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def read_versioned_lines(path: str | Path, magic: str) -> list[str]:
    """Read a text file whose first line must equal ``magic``.

    Returns the remaining lines. Raises :class:`FormatError` on a missing or
    mismatched magic line.
    """
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    lines = raw.splitlines()
    if not lines or lines[0] != magic:
        found = lines[0][:32] if lines else "<empty file>"
        raise FormatError(f"{path}: expected magic {magic!r}, found {found!r}")
    return lines[1:]
