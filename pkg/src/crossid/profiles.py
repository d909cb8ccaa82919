"""Aggregation of topic observations into probability distributions.

Covers whole-span topic distributions, joint topic-sentiment
distributions with their sentiment prior, and the overlapping
sliding-window profiles used by the temporal matchers.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

from .textproc import Polarity, SentimentScore, TopicObservation, dominant_polarity
from .timestamps import Timestamp

_SIMPLEX_TOL = 1e-9

TopicDistribution = dict[str, float]


@dataclass(frozen=True)
class TopicCounter:
    """Occurrence counts per topic; no zero-count entries are stored."""

    counts: dict[str, int]
    total: int

    def __post_init__(self):
        assert all(c >= 1 for c in self.counts.values())
        assert self.total == sum(self.counts.values())


@dataclass(frozen=True)
class JointTopicSentimentDistribution:
    """P(topic, polarity) plus the sentiment prior P(polarity)."""

    joint: dict[tuple[str, Polarity], float]
    prior: dict[Polarity, float]

    def __post_init__(self):
        assert abs(sum(self.joint.values()) - 1.0) <= _SIMPLEX_TOL
        assert abs(sum(self.prior.values()) - 1.0) <= _SIMPLEX_TOL
        assert all(p > 0 for p in self.joint.values())
        marginal: dict[Polarity, float] = {}
        for (_, pol), p in self.joint.items():
            marginal[pol] = marginal.get(pol, 0.0) + p
        for pol, p in marginal.items():
            assert abs(p - self.prior.get(pol, 0.0)) <= _SIMPLEX_TOL


def build_counter(obs) -> TopicCounter:
    counts = Counter(o.topic for o in obs)
    return TopicCounter(dict(counts), sum(counts.values()))


def topic_distribution(counter: TopicCounter) -> TopicDistribution:
    """Normalized topic probabilities: count / total."""
    if counter.total == 0:
        raise ValueError("cannot normalize an empty topic counter: no topics")
    dist = {t: c / counter.total for t, c in counter.counts.items()}
    assert abs(sum(dist.values()) - 1.0) <= _SIMPLEX_TOL
    assert all(0.0 < p <= 1.0 for p in dist.values())
    return dist


def joint_distribution(obs) -> JointTopicSentimentDistribution:
    """Empirical P(topic, dominant polarity) and the polarity prior."""
    obs = list(obs)
    if not obs:
        raise ValueError("cannot build a joint distribution from zero observations")
    n = len(obs)
    joint_counts: Counter = Counter(
        (o.topic, dominant_polarity(o.sentiment)) for o in obs
    )
    prior_counts: Counter = Counter(dominant_polarity(o.sentiment) for o in obs)
    return JointTopicSentimentDistribution(
        joint={k: c / n for k, c in joint_counts.items()},
        prior={k: c / n for k, c in prior_counts.items()},
    )


def topic_sentiment_map(obs) -> dict[str, SentimentScore]:
    """Per-topic mean sentiment over a user's observations of that topic."""
    sums: dict[str, list[float]] = {}
    for o in obs:
        acc = sums.setdefault(o.topic, [0.0, 0.0, 0.0, 0.0])
        acc[0] += o.sentiment.pos
        acc[1] += o.sentiment.neg
        acc[2] += o.sentiment.neu
        acc[3] += 1.0
    return {
        t: SentimentScore(p / n, g / n, u / n) for t, (p, g, u, n) in sums.items()
    }


@dataclass(frozen=True)
class WindowSpec:
    """Overlapping windows of ``w`` days shifted by ``tau`` days."""

    w: float
    tau: float

    def __post_init__(self):
        if self.w <= 0:
            raise ValueError(f"window size must be > 0, got {self.w}")
        if not 0 < self.tau <= self.w:
            raise ValueError(f"shift must satisfy 0 < tau <= w, got tau={self.tau}, w={self.w}")

    def n_windows(self, span_days: float) -> int:
        """Windows start at k*tau for k = 0, 1, ... while k*tau < span; at least one."""
        if span_days <= 0:
            return 1
        return max(1, math.ceil(span_days / self.tau))


@dataclass(frozen=True)
class WindowEntry:
    index: int
    start_day: float
    observations: tuple[TopicObservation, ...]


@dataclass(frozen=True)
class WindowedProfile:
    origin: Timestamp
    span_days: float
    spec: WindowSpec
    windows: tuple[WindowEntry, ...] = field(repr=False)

    def geometry(self) -> tuple[Timestamp, float, int]:
        return (self.origin, self.span_days, len(self.windows))


def _assign(obs, origin: Timestamp, spec: WindowSpec, n: int) -> tuple[WindowEntry, ...]:
    buckets: list[list[TopicObservation]] = [[] for _ in range(n)]
    for o in obs:
        # exact fractional offset, floored only for the membership test
        day = math.floor(o.time.days_since(origin))
        for k in range(n):
            start = k * spec.tau
            if start > day:
                break
            if day < start + spec.w:
                buckets[k].append(o)
    return tuple(
        WindowEntry(k, k * spec.tau, tuple(bucket)) for k, bucket in enumerate(buckets)
    )


def slice_windows(obs_a, obs_b, spec: WindowSpec) -> tuple[WindowedProfile, WindowedProfile]:
    """Bin both observation sequences into a shared overlapping-window geometry.

    The origin is the earliest timestamp across both sequences and the span
    runs to the latest; both returned profiles share identical windows, and
    an observation lands in every window covering its (floored) day offset.
    """
    obs_a, obs_b = list(obs_a), list(obs_b)
    if not obs_a or not obs_b:
        raise ValueError("slice_windows requires nonempty observation sequences")
    times = [o.time for o in obs_a] + [o.time for o in obs_b]
    origin = min(times)
    span = max(times).days_since(origin)
    n = spec.n_windows(span)
    wp_a = WindowedProfile(origin, span, spec, _assign(obs_a, origin, spec, n))
    wp_b = WindowedProfile(origin, span, spec, _assign(obs_b, origin, spec, n))
    return wp_a, wp_b


def counter_cache_dict(counter: TopicCounter) -> dict:
    """Serializable form of a counter for the optional profile cache."""
    return {"counts": dict(sorted(counter.counts.items())), "total": counter.total}


def windowed_profile_cache_dict(profile: WindowedProfile) -> dict:
    """Serializable per-user profile cache: counters plus per-window indices.

    The cache is an optimization for repeated sweeps, not a data contract.
    """
    return {
        "origin": profile.origin.isoformat(),
        "span_days": profile.span_days,
        "window": {"w": profile.spec.w, "tau": profile.spec.tau},
        "windows": [
            {
                "index": entry.index,
                "start_day": entry.start_day,
                "counter": counter_cache_dict(build_counter(entry.observations)),
            }
            for entry in profile.windows
        ],
    }
