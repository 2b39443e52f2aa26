"""Tokenization rules and published word lists shared by the offline stack.

The deterministic mock providers, the offline scene extractor, and the
verifier suite all tokenize text the same way. Keeping every constant in one
module means the offline behaviour of the whole pipeline is reproducible
from this file alone.
"""

from __future__ import annotations

import hashlib
import re
import string
import zlib

# Words ignored when deciding what a prompt is "about".
STOP_WORDS = frozenset(
    """
    a an the and or but in on at of to with by for from as is are was were
    be been being it its this that these those there into over under through
    """.split()
)

# Tokens the offline scene extractor treats as verbs.
VERB_TOKENS = frozenset(
    """
    cooking walking running sitting standing playing reading eating drinking
    riding flying jumping dancing swimming watching holding wearing singing
    driving painting fishing climbing sleeping working talking grazing
    surfing skating rowing
    """.split()
)

# Tokens the motion-proxy assessor counts as motion.
MOTION_TOKENS = frozenset(
    """
    run runs running jump jumps jumping fly flies flying ride rides riding
    walk walks walking dance dances dancing swim swims swimming roll rolls
    rolling spin spins spinning race races racing leap leaps leaping gallop
    gallops galloping soar soars soaring dive dives diving surf surfs surfing
    """.split()
)

# The last "in a/the" or "at a/the" starts the scene label.
SCENE_MARKER = re.compile(r"\b(?:in|at)\s+(?:a|the)\b", re.IGNORECASE)

# Offline video generation keeps at most this many content tokens.
DESCRIPTOR_CAPACITY = 32

# Token budget targeted by refactoring and by the concision verifier.
TARGET_TOKEN_COUNT = 60

# Seed for the hashed bag-of-words embedder.
HASH_SEED = "rapo-bow-v1"


def normalize_ws(text: str) -> str:
    """Collapse all whitespace runs to single spaces and trim the ends."""
    return " ".join(text.split())


def tokens(text: str) -> list[str]:
    """Lowercase whitespace tokens, punctuation kept (the embedder's view)."""
    return text.lower().split()


def content_tokens(text: str) -> list[str]:
    """Lowercase tokens with edge punctuation stripped and stop words removed.

    Order is preserved and duplicates are kept; callers that need a set use
    :func:`content_token_set`.
    """
    out = []
    for tok in text.lower().split():
        tok = tok.strip(string.punctuation)
        if tok and tok not in STOP_WORDS:
            out.append(tok)
    return out


def content_token_set(text: str) -> set[str]:
    return set(content_tokens(text))


def unique(seq: list[str]) -> list[str]:
    """Order-preserving dedup."""
    seen: set[str] = set()
    out = []
    for item in seq:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def token_bucket(token: str, seed: str, buckets: int) -> int:
    """Map a token to a bucket index with a keyed, process-independent hash."""
    digest = hashlib.blake2b(
        token.encode("utf-8"), digest_size=8, key=seed.encode("utf-8")
    ).digest()
    return int.from_bytes(digest, "big") % buckets


def stable_int(text: str, salt: str = "") -> int:
    """Deterministic 32-bit integer for seeding RNGs (never built-in hash)."""
    return zlib.crc32(f"{salt}:{text}".encode("utf-8"))


def stable_id(text: str, prefix: str) -> str:
    """Short content-derived identifier, stable across runs and platforms."""
    return f"{prefix}-{hashlib.sha256(text.encode('utf-8')).hexdigest()[:16]}"


def split_scene(text: str) -> tuple[str, str]:
    """Split a prompt into (body, scene label) at the last scene marker.

    Returns an empty scene label when no marker is followed by actual text.
    """
    for match in reversed(list(SCENE_MARKER.finditer(text))):
        scene = text[match.end():].strip().strip(string.punctuation).strip()
        if scene:
            return text[: match.start()].strip(), scene
    return text.strip(), ""
