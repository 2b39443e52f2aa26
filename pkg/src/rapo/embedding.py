"""Embedding contract, cosine similarity, and an exact top-k vector index.

The index is a deliberate linear scan: corpora here are desk-scale and an
exact scan keeps retrieval trivially checkable against a full sort.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

import numpy as np

from . import text as T
from .errors import FormatError, ProviderCallError
from .fileio import atomic_write_text, read_versioned_lines

INDEX_MAGIC = "RAPOIDX1"
DEFAULT_DIMENSION = 256
_NORM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class EmbeddingVector:
    """Fixed-length real vector with an explicit normalization flag."""

    values: np.ndarray
    normalized: bool = False

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError(f"embedding must be 1-D, got shape {arr.shape}")
        object.__setattr__(self, "values", arr)
        if self.normalized:
            norm = float(np.linalg.norm(arr))
            if abs(norm - 1.0) > _NORM_TOL:
                raise ValueError(f"vector flagged normalized but |v| = {norm}")

    @property
    def dimension(self) -> int:
        return int(self.values.shape[0])

    def unit(self) -> "EmbeddingVector":
        """Return an L2-normalized copy."""
        norm = float(np.linalg.norm(self.values))
        if norm == 0.0:
            raise ValueError("cannot normalize a zero vector")
        return EmbeddingVector(self.values / norm, normalized=True)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddingVector):
            return NotImplemented
        return self.normalized == other.normalized and np.array_equal(
            self.values, other.values
        )


class Embedder(Protocol):
    """Contract for anything that turns text into a fixed-dimension vector."""

    name: str
    dimension: int

    def embed(self, text: str) -> EmbeddingVector: ...


class HashedBagEmbedder:
    """Deterministic bag-of-words embedder over hashed token buckets.

    Each lowercase whitespace token is hashed into one of ``dimension``
    buckets with a keyed hash, bucket counts are accumulated, and the count
    vector is L2-normalized. Token order never matters, so overlapping texts
    get meaningfully similar vectors without any model.
    """

    def __init__(self, dimension: int = DEFAULT_DIMENSION, seed: str = T.HASH_SEED):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self.seed = seed
        self.name = f"hashed-bow-{dimension}"

    def embed(self, text: str) -> EmbeddingVector:
        counts = np.zeros(self.dimension, dtype=np.float64)
        for token in T.tokens(text):
            counts[T.token_bucket(token, self.seed, self.dimension)] += 1.0
        norm = float(np.linalg.norm(counts))
        if norm == 0.0:
            raise ValueError("text has no tokens to embed")
        return EmbeddingVector(counts / norm, normalized=True)


def embed(text: str, provider: Embedder) -> EmbeddingVector:
    """Embed ``text`` with ``provider`` and guarantee a normalized result."""
    if not text or not text.strip():
        raise ValueError("cannot embed empty text")
    try:
        vector = provider.embed(text)
    except Exception as exc:
        name = getattr(provider, "name", provider.__class__.__name__)
        raise ProviderCallError(
            f"embedder {name} failed on text {text[:40]!r}: {exc}",
            provider=name, retryable=True,
        ) from exc
    return vector if vector.normalized else vector.unit()


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Standard cosine similarity, clipped into [-1, 1] against float error."""
    if a.dimension != b.dimension:
        raise ValueError(f"dimension mismatch: {a.dimension} vs {b.dimension}")
    na = float(np.linalg.norm(a.values))
    nb = float(np.linalg.norm(b.values))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine is undefined for a zero vector")
    return float(np.clip(np.dot(a.values, b.values) / (na * nb), -1.0, 1.0))


@dataclass(eq=False)
class VectorIndex:
    """Exact nearest-neighbor index: a list of (id, vector) pairs."""

    dimension: int
    provider_name: str = ""
    hash_seed: str = ""
    entries: list[tuple[str, EmbeddingVector]] = field(default_factory=list)
    _ids: set[str] = field(default_factory=set, repr=False)

    def add(self, entry_id: str, vector: EmbeddingVector) -> None:
        if entry_id in self._ids:
            raise ValueError(f"duplicate entry id {entry_id!r}")
        if vector.dimension != self.dimension:
            raise ValueError(
                f"vector dimension {vector.dimension} != index dimension {self.dimension}"
            )
        self._ids.add(entry_id)
        self.entries.append((entry_id, vector))

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VectorIndex):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.provider_name == other.provider_name
            and self.hash_seed == other.hash_seed
            and self.entries == other.entries
        )


def top_k(query: EmbeddingVector, index: VectorIndex, k: int) -> list[tuple[str, float]]:
    """Top-k entries by cosine, descending; ties go to the earlier insertion.

    Returns min(k, len(index)) pairs of (entry id, score).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not index.entries:
        raise ValueError("cannot query an empty index")
    scores = [cosine(query, vector) for _, vector in index.entries]
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return [(index.entries[i][0], scores[i]) for i in order[:k]]


def save_index(index: VectorIndex, path: str | Path) -> None:
    header = {
        "count": len(index.entries),
        "dimension": index.dimension,
        "hash_seed": index.hash_seed,
        "provider_name": index.provider_name,
    }
    lines = [INDEX_MAGIC, json.dumps(header, sort_keys=True)]
    for entry_id, vector in index.entries:
        lines.append(json.dumps(
            {"id": entry_id, "normalized": vector.normalized,
             "values": vector.values.tolist()},
            sort_keys=True,
        ))
    atomic_write_text(path, "".join(line + "\n" for line in lines))


def load_index(path: str | Path) -> VectorIndex:
    lines = read_versioned_lines(path, INDEX_MAGIC)
    if not lines:
        raise FormatError(f"{path}: missing index header")
    try:
        header = json.loads(lines[0])
        index = VectorIndex(
            dimension=int(header["dimension"]),
            provider_name=str(header["provider_name"]),
            hash_seed=str(header["hash_seed"]),
        )
        entry_lines = [line for line in lines[1:] if line.strip()]
        if len(entry_lines) != int(header["count"]):
            raise FormatError(
                f"{path}: header count {header['count']} != {len(entry_lines)} entries"
            )
        for line in entry_lines:
            obj = json.loads(line)
            index.add(obj["id"], EmbeddingVector(
                np.asarray(obj["values"], dtype=np.float64),
                normalized=bool(obj["normalized"]),
            ))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: corrupt index file: {exc}") from exc
    return index
