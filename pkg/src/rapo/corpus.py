"""Prompt corpus I/O.

A corpus file is UTF-8 text with one record per line. A line is either a
bare prompt string or a flat JSON object with the keys ``id``, ``text``,
``source`` and ``tags``. Lines that cannot be parsed become rejections; they
are never dropped silently. The rejection report is written next to the
source file as ``<name>.rejects`` with one ``<line#>\\t<reason>`` per line
(line numbers are 0-based, matching generated record ids).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, NamedTuple

from .fileio import atomic_write_text

logger = logging.getLogger(__name__)

_ALLOWED_KEYS = {"id", "text", "source", "tags"}


class PromptSource(str, Enum):
    TRAINING_CORPUS = "training_corpus"
    USER = "user"
    BENCHMARK = "benchmark"
    GENERATED = "generated"


@dataclass(frozen=True)
class PromptRecord:
    """One prompt with a stable identifier and provenance."""

    id: str
    text: str
    source: PromptSource = PromptSource.USER
    tags: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("record id must be non-empty")
        if not self.text.strip():
            raise ValueError("record text must be non-empty after trimming")


class Rejection(NamedTuple):
    line_no: int
    reason: str


@dataclass
class Corpus:
    """Ordered list of prompt records plus load-time metadata.

    Equality compares records only; ``origin`` and ``rejections`` describe
    where and how the corpus was loaded, not what it contains.
    """

    records: list[PromptRecord]
    origin: str = field(default="", compare=False)
    rejections: list[Rejection] = field(default_factory=list, compare=False)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[PromptRecord]:
        return iter(self.records)


def _parse_structured(stripped: str, default_id: str,
                      default_source: PromptSource) -> PromptRecord:
    try:
        obj = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ValueError("structured line must be a JSON object")
    for key in obj:
        if key not in _ALLOWED_KEYS:
            raise ValueError(f"unknown key {key!r}")

    text = obj.get("text")
    if not isinstance(text, str) or not text.strip():
        raise ValueError("field 'text' must be a non-empty string")

    rec_id = obj.get("id", default_id)
    if not isinstance(rec_id, str) or not rec_id:
        raise ValueError("field 'id' must be a non-empty string")

    source = default_source
    if "source" in obj:
        try:
            source = PromptSource(obj["source"])
        except ValueError:
            raise ValueError(f"invalid source {obj['source']!r}") from None

    tags = None
    if obj.get("tags") is not None:
        raw_tags = obj["tags"]
        if not isinstance(raw_tags, list) or not all(isinstance(t, str) for t in raw_tags):
            raise ValueError("field 'tags' must be a list of strings")
        tags = tuple(raw_tags)

    return PromptRecord(rec_id, text, source, tags)


def load_corpus(path: str | Path, source: PromptSource | str = PromptSource.USER,
                *, write_rejects: bool = True) -> Corpus:
    """Load a line-delimited corpus file.

    Records missing an explicit id get ``<filestem>:<line#>``. Blank and
    malformed lines are collected as rejections; the count of accepted
    records plus rejections always equals the input line count.
    """
    path = Path(path)
    default_source = PromptSource(source)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read corpus {path}: {exc}") from exc

    records: list[PromptRecord] = []
    rejections: list[Rejection] = []
    seen_ids: set[str] = set()
    for line_no, line in enumerate(raw.splitlines()):
        stripped = line.strip()
        if not stripped:
            rejections.append(Rejection(line_no, "blank line"))
            continue
        default_id = f"{path.stem}:{line_no}"
        if stripped.startswith("{"):
            try:
                record = _parse_structured(stripped, default_id, default_source)
            except ValueError as exc:
                rejections.append(Rejection(line_no, str(exc)))
                continue
        else:
            record = PromptRecord(default_id, stripped, default_source)
        if record.id in seen_ids:
            rejections.append(Rejection(line_no, f"duplicate id {record.id!r}"))
            continue
        seen_ids.add(record.id)
        records.append(record)

    corpus = Corpus(records, origin=str(path), rejections=rejections)
    if write_rejects:
        _write_rejects(path, rejections)
    return corpus


def _write_rejects(corpus_path: Path, rejections: list[Rejection]) -> None:
    report_path = corpus_path.with_name(corpus_path.name + ".rejects")
    body = "".join(f"{line_no}\t{reason}\n" for line_no, reason in rejections)
    try:
        atomic_write_text(report_path, body)
    except OSError:
        # Loading must not fail just because the report location is read-only.
        logger.warning("could not write rejection report %s", report_path)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus as structured lines so ids, sources and tags round-trip."""
    path = Path(path)
    ids = [r.id for r in corpus.records]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValueError(f"corpus has duplicate ids: {dupes}")

    lines = []
    for record in corpus.records:
        obj: dict = {"id": record.id, "text": record.text,
                     "source": record.source.value}
        if record.tags is not None:
            obj["tags"] = list(record.tags)
        lines.append(json.dumps(obj, ensure_ascii=False))
    try:
        atomic_write_text(path, "".join(line + "\n" for line in lines))
    except OSError as exc:
        raise OSError(f"cannot write corpus to {path}: {exc}") from exc
