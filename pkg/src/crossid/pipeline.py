"""End-to-end runs: extract observations once, sweep all probe/candidate pairs.

The dataset is read-only after extraction, so candidate scorings fan out
to a worker pool when requested; results are always reduced in input
order, keeping runs deterministic regardless of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .corpus import Platform, ProfileSet
from .evaluation import MetricsReport, RankResult, compute_metrics, rank_candidates
from .matchers import MatchParams, Model, ModelScore, score_all
from .textproc import Extractor, ExtractorConfig, TopicObservation

WORKERS_ENV = "CROSSID_WORKERS"


@dataclass(frozen=True)
class ExtractedPair:
    pair_id: str
    user_a: str
    user_b: str
    obs_a: tuple[TopicObservation, ...]
    obs_b: tuple[TopicObservation, ...]


def extract_dataset(
    sets: list[ProfileSet], config: ExtractorConfig | None = None
) -> list[ExtractedPair]:
    extractor = Extractor(config)
    pairs = []
    for s in sets:
        pairs.append(
            ExtractedPair(
                pair_id=s.pair_id,
                user_a=s.user_id(Platform.A),
                user_b=s.user_id(Platform.B),
                obs_a=tuple(extractor.extract_posts(s.posts_a)),
                obs_b=tuple(extractor.extract_posts(s.posts_b)),
            )
        )
    return pairs


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_match(
    pairs: list[ExtractedPair],
    model: Model,
    params: MatchParams = MatchParams(),
    direction: str = "a2b",
) -> tuple[list[RankResult], MetricsReport, list[tuple[str, list[tuple[str, ModelScore]]]]]:
    """Score every probe against all candidates and rank the true counterpart.

    Direction ``a2b`` probes with platform-A profiles against platform-B
    candidates (the default); ``b2a`` is the reverse.
    """
    if direction not in ("a2b", "b2a"):
        raise ValueError(f"direction must be 'a2b' or 'b2a', got {direction!r}")
    if direction == "a2b":
        probes = [(p.user_a, p.obs_a, p.user_b, p.pair_id) for p in pairs]
        candidates = [(p.user_b, list(p.obs_b)) for p in pairs]
    else:
        probes = [(p.user_b, p.obs_b, p.user_a, p.pair_id) for p in pairs]
        candidates = [(p.user_a, list(p.obs_a)) for p in pairs]

    workers = _worker_count()
    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    executor_map = executor.map if executor else map
    try:
        results: list[RankResult] = []
        all_scores: list[tuple[str, list[tuple[str, ModelScore]]]] = []
        for probe_id, probe_obs, true_id, _pair_id in probes:
            scored = score_all(probe_obs, candidates, model, params, executor_map)
            if model is Model.TWO_PHASE:
                # ordering is the contract; synthesize rank from position
                positional = [
                    (cid, _Positional(-i)) for i, (cid, _) in enumerate(scored)
                ]
                results.append(rank_candidates(positional, true_id, probe_id))
            else:
                results.append(rank_candidates(scored, true_id, probe_id))
            all_scores.append((probe_id, scored))
    finally:
        if executor:
            executor.shutdown()
    report = compute_metrics(results)
    return results, report, all_scores


@dataclass(frozen=True)
class _Positional:
    value: float
