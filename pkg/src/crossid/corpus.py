"""Pair-file loading, validation, and the minimum-post filter.

A pair file is one JSON document per ground-truth profile pair:

    {"pair_id": str,
     "a": [{"user": str, "text": str, "time": "YYYY-MM-DDThh:mm:ss"}, ...],
     "b": [...]}

UTF-8, LF line endings. Platform A and B are the two sites being linked
(the probe side and the candidate side by default).
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .timestamps import Timestamp, TimestampError, parse_timestamp

logger = logging.getLogger(__name__)

DEFAULT_MIN_POSTS = 20


class DatasetError(ValueError):
    """A pair file violates the dataset schema."""


class Platform(Enum):
    A = "a"
    B = "b"


@dataclass(frozen=True)
class PostRecord:
    platform: Platform
    user_id: str
    text: str
    time: Timestamp


@dataclass(frozen=True)
class ProfileSet:
    """A ground-truth-linked pair of profiles, one per platform."""

    pair_id: str
    posts_a: tuple[PostRecord, ...]
    posts_b: tuple[PostRecord, ...]

    def user_id(self, platform: Platform) -> str:
        posts = self.posts_a if platform is Platform.A else self.posts_b
        return posts[0].user_id if posts else self.pair_id

    def posts(self, platform: Platform) -> tuple[PostRecord, ...]:
        return self.posts_a if platform is Platform.A else self.posts_b


def _parse_posts(raw, platform: Platform, file_name: str) -> tuple[PostRecord, ...]:
    if not isinstance(raw, list):
        raise DatasetError(f"{file_name}: platform {platform.value!r} posts must be a list")
    posts = []
    for i, item in enumerate(raw):
        if not isinstance(item, dict):
            raise DatasetError(f"{file_name}: record {i} on {platform.value!r} is not an object")
        missing = {"user", "text", "time"} - item.keys()
        if missing:
            raise DatasetError(
                f"{file_name}: record {i} on {platform.value!r} missing {sorted(missing)}"
            )
        try:
            time = parse_timestamp(item["time"])
        except TimestampError as exc:
            raise DatasetError(
                f"{file_name}: record {i} on {platform.value!r}: {exc}"
            ) from exc
        if not isinstance(item["user"], str) or not item["user"]:
            raise DatasetError(f"{file_name}: record {i} on {platform.value!r}: bad user id")
        if not isinstance(item["text"], str):
            raise DatasetError(f"{file_name}: record {i} on {platform.value!r}: text not a string")
        posts.append(PostRecord(platform, item["user"], item["text"], time))
    return tuple(posts)


def load_pair_file(path: str | Path) -> ProfileSet:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{path.name}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DatasetError(f"{path.name}: top-level value must be an object")
    missing = {"pair_id", "a", "b"} - doc.keys()
    if missing:
        raise DatasetError(f"{path.name}: missing keys {sorted(missing)}")
    if not isinstance(doc["pair_id"], str) or not doc["pair_id"]:
        raise DatasetError(f"{path.name}: pair_id must be a nonempty string")
    return ProfileSet(
        pair_id=doc["pair_id"],
        posts_a=_parse_posts(doc["a"], Platform.A, path.name),
        posts_b=_parse_posts(doc["b"], Platform.B, path.name),
    )


def load_dataset(path: str | Path) -> list[ProfileSet]:
    """Load every ``*.json`` pair file under ``path``, ordered by pair_id."""
    directory = Path(path)
    if not directory.is_dir():
        raise DatasetError(f"dataset directory does not exist: {directory}")
    sets = []
    for file in sorted(directory.glob("*.json")):
        if file.name == "manifest.json":
            continue
        sets.append(load_pair_file(file))
    sets.sort(key=lambda s: s.pair_id)
    seen: set[str] = set()
    for s in sets:
        if s.pair_id in seen:
            raise DatasetError(f"duplicate pair_id: {s.pair_id}")
        seen.add(s.pair_id)
    return sets


def filter_profiles(
    sets, min_posts: int = DEFAULT_MIN_POSTS
) -> list[ProfileSet]:
    """Drop pairs where either side has fewer than ``min_posts`` posts.

    Exactly ``min_posts`` posts is retained (only strictly fewer are
    discarded). Relative order is preserved; the discard count is logged.
    """
    if min_posts < 1:
        raise ValueError(f"min_posts must be >= 1, got {min_posts}")
    kept = [
        s for s in sets
        if len(s.posts_a) >= min_posts and len(s.posts_b) >= min_posts
    ]
    discarded = len(sets) - len(kept)
    logger.info("filter_profiles: discarded %d of %d sets (min_posts=%d)",
                discarded, len(sets), min_posts)
    return kept


def pair_file_dict(profile_set: ProfileSet) -> dict:
    return {
        "pair_id": profile_set.pair_id,
        "a": [
            {"user": p.user_id, "text": p.text, "time": p.time.isoformat()}
            for p in profile_set.posts_a
        ],
        "b": [
            {"user": p.user_id, "text": p.text, "time": p.time.isoformat()}
            for p in profile_set.posts_b
        ],
    }


def write_pair_file(path: str | Path, profile_set: ProfileSet) -> None:
    """Write one pair file in the canonical (deterministic) serialization."""
    text = json.dumps(pair_file_dict(profile_set), ensure_ascii=False, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8", newline="\n")
