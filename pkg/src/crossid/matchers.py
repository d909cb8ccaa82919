"""Candidate-pair scoring models.

All models return a :class:`ModelScore` whose ``value`` is
higher-is-better; where a logarithmic similarity is undefined (zero
overlap) the score is the WORST sentinel, ordered below every finite
value. The distance-based model negates its combined distance
internally so the same convention holds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .profiles import (
    JointTopicSentimentDistribution,
    TopicCounter,
    TopicDistribution,
    WindowedProfile,
    WindowSpec,
    build_counter,
    joint_distribution,
    slice_windows,
    topic_distribution,
    topic_sentiment_map,
)
from .textproc import SentimentScore

WORST = float("-inf")

DEFAULT_EPSILON = 1e-9


class ConfigurationError(ValueError):
    """Invalid model parameters."""


class Model(Enum):
    TOPIC_NT = "topic-nt"
    SENTIMENT_NT = "sentiment-nt"
    COMBINED = "combined"
    TOPIC_TEMPORAL = "topic-temporal"
    SENTIMENT_TEMPORAL = "sentiment-temporal"
    TWO_PHASE = "two-phase"
    DISTANCE = "distance"


class TemporalMode(Enum):
    TOPIC = "topic"
    SENTIMENT = "sentiment"


@dataclass(frozen=True)
class ModelScore:
    model: Model
    value: float
    diagnostics: dict[str, float] = field(default_factory=dict)

    @property
    def is_worst(self) -> bool:
        return self.value == WORST

    def __post_init__(self):
        assert self.value == WORST or math.isfinite(self.value)


@dataclass(frozen=True)
class DistanceWeights:
    """Weights and bonus thresholds for the distance-based model.

    ``bonus_a`` is the per-topic count threshold on the first counter
    argument, ``bonus_b`` on the second; the bonus is subtracted only
    when both are met. The weights need not sum to 1.
    """

    w1: float = 0.75
    w2: float = 0.5
    bonus_a: int = 5
    bonus_b: int = 3

    def __post_init__(self):
        if self.w1 < 0 or self.w2 < 0:
            raise ConfigurationError("distance weights must be nonnegative")


def topic_similarity(d1: TopicDistribution, d2: TopicDistribution) -> ModelScore:
    """Topic-overlap similarity: the ranking value is ln of the dot product.

    The dot product S runs over the union of topics (absent topics
    contribute zero). S = 0 maps to WORST; the literal S*ln(S) form is
    reported in diagnostics only, since it is non-monotone in S.
    """
    s = 0.0
    for topic, p in d1.items():
        q = d2.get(topic)
        if q is not None:
            s += p * q
    diagnostics = {"S_t": s}
    if s <= 0.0:
        return ModelScore(Model.TOPIC_NT, WORST, diagnostics)
    diagnostics["Sim_t"] = s * math.log(s)
    return ModelScore(Model.TOPIC_NT, math.log(s), diagnostics)


def sentiment_similarity(
    j1: JointTopicSentimentDistribution, j2: JointTopicSentimentDistribution
) -> ModelScore:
    """Joint topic-sentiment similarity, weighted by each side's polarity prior."""
    s = 0.0
    for key, p in j1.joint.items():
        q = j2.joint.get(key)
        if q is not None:
            polarity = key[1]
            s += (j1.prior[polarity] * p) * (j2.prior[polarity] * q)
    diagnostics = {"S_s": s}
    if s <= 0.0:
        return ModelScore(Model.SENTIMENT_NT, WORST, diagnostics)
    diagnostics["Sim_s"] = s * math.log(s)
    return ModelScore(Model.SENTIMENT_NT, math.log(s), diagnostics)


def combined_similarity(
    st: ModelScore, ss: ModelScore, w1: float, w2: float
) -> ModelScore:
    """Weighted average of topic and sentiment scores; weights must sum to 1."""
    if w1 < 0 or w2 < 0:
        raise ConfigurationError("combined-model weights must be nonnegative")
    if abs(w1 + w2 - 1.0) > 1e-9:
        raise ConfigurationError(
            f"combined-model weights must sum to 1, got w1={w1}, w2={w2}"
        )
    diagnostics = {"topic_value": st.value, "sentiment_value": ss.value}
    if st.is_worst or ss.is_worst:
        return ModelScore(Model.COMBINED, WORST, diagnostics)
    return ModelScore(Model.COMBINED, w1 * st.value + w2 * ss.value, diagnostics)


def _smooth(dist: TopicDistribution, support, epsilon: float) -> dict[str, float]:
    raw = {t: dist.get(t, 0.0) + epsilon for t in support}
    total = sum(raw.values())
    return {t: v / total for t, v in raw.items()}


def kl_divergence(
    p: TopicDistribution, q: TopicDistribution, epsilon: float = DEFAULT_EPSILON
) -> float:
    """KL(P || Q) in bits after additive-epsilon smoothing on the union support."""
    if epsilon <= 0:
        raise ConfigurationError(f"smoothing epsilon must be > 0, got {epsilon}")
    support = sorted(set(p) | set(q))
    ps = _smooth(p, support, epsilon)
    qs = _smooth(q, support, epsilon)
    return sum(ps[t] * math.log2(ps[t] / qs[t]) for t in support)


def symmetric_kl(
    p: TopicDistribution, q: TopicDistribution, epsilon: float = DEFAULT_EPSILON
) -> float:
    """Bidirectional deviation: KL(P||Q) + KL(Q||P)."""
    return kl_divergence(p, q, epsilon) + kl_divergence(q, p, epsilon)


def _population_variance(values: list[float]) -> float:
    if not values:
        return 0.0
    mean = sum(values) / len(values)
    return sum((v - mean) ** 2 for v in values) / len(values)


def temporal_score(
    wp1: WindowedProfile,
    wp2: WindowedProfile,
    mode: TemporalMode,
    epsilon: float = DEFAULT_EPSILON,
) -> ModelScore:
    """Average per-window similarity over windows where both sides posted.

    Windows empty on either side are skipped; if every window is skipped
    the pair scores WORST. The per-window value variance and the mean
    symmetric KL of the window-local topic distributions are reported as
    diagnostics.
    """
    if wp1.geometry() != wp2.geometry():
        raise RuntimeError("temporal_score requires profiles with shared window geometry")
    model = Model.TOPIC_TEMPORAL if mode is TemporalMode.TOPIC else Model.SENTIMENT_TEMPORAL
    values: list[float] = []
    kls: list[float] = []
    for e1, e2 in zip(wp1.windows, wp2.windows):
        if not e1.observations or not e2.observations:
            continue
        d1 = topic_distribution(build_counter(e1.observations))
        d2 = topic_distribution(build_counter(e2.observations))
        if mode is TemporalMode.TOPIC:
            window_score = topic_similarity(d1, d2)
        else:
            window_score = sentiment_similarity(
                joint_distribution(e1.observations), joint_distribution(e2.observations)
            )
        values.append(window_score.value)
        kls.append(symmetric_kl(d1, d2, epsilon))
    if not values:
        return ModelScore(model, WORST, {"usable_windows": 0.0})
    value = sum(values) / len(values)
    finite = [v for v in values if math.isfinite(v)]
    diagnostics = {
        "usable_windows": float(len(values)),
        "window_variance": _population_variance(finite),
        "mean_symmetric_kl": sum(kls) / len(kls),
    }
    if not math.isfinite(value):
        return ModelScore(model, WORST, diagnostics)
    return ModelScore(model, value, diagnostics)


def distance_score(
    counter_a: TopicCounter,
    counter_b: TopicCounter,
    sent_a: dict[str, SentimentScore],
    sent_b: dict[str, SentimentScore],
    weights: DistanceWeights = DistanceWeights(),
) -> ModelScore:
    """Reward/penalty distance over normalized topic frequencies and sentiments.

    Per union topic: absolute frequency gap when a topic is one-sided,
    squared gap when shared, minus a bonus term when both raw counts meet
    their thresholds. The emotion term averages the mean absolute
    component gap over topics present on both sides. Returns the negated
    weighted sum so that higher is better; an empty side scores 0.
    """
    if counter_a.total == 0 or counter_b.total == 0:
        return ModelScore(Model.DISTANCE, 0.0, {"freq_distance": 0.0, "emotion_distance": 0.0})
    union = sorted(set(counter_a.counts) | set(counter_b.counts))
    freq_distance = 0.0
    for topic in union:
        ca = counter_a.counts.get(topic, 0)
        cb = counter_b.counts.get(topic, 0)
        a_val = ca / counter_a.total
        b_val = cb / counter_b.total
        if a_val == 0.0 or b_val == 0.0:
            freq_distance += abs(a_val - b_val)
        else:
            freq_distance += (a_val - b_val) ** 2
        if ca >= weights.bonus_a and cb >= weights.bonus_b:
            freq_distance -= a_val * b_val * (a_val - b_val) ** 2
    combined = weights.w1 * freq_distance

    emotion_total = 0.0
    contributing = 0
    for topic in union:
        ea = sent_a.get(topic)
        eb = sent_b.get(topic)
        if ea is None or ea.as_tuple() == (0.0, 0.0, 0.0):
            continue
        if eb is None or eb.as_tuple() == (0.0, 0.0, 0.0):
            continue
        gap = (abs(ea.pos - eb.pos) + abs(ea.neg - eb.neg) + abs(ea.neu - eb.neu)) / 3
        emotion_total += gap
        contributing += 1
    emotion_distance = emotion_total / contributing if contributing else 0.0
    combined += weights.w2 * emotion_distance

    return ModelScore(
        Model.DISTANCE,
        -combined,
        {
            "freq_distance": freq_distance,
            "emotion_distance": emotion_distance,
            "emotion_topics": float(contributing),
        },
    )


def rank_order(scored: list[tuple[str, ModelScore]]) -> list[tuple[str, ModelScore]]:
    """Stable descending sort by value; ties keep input order."""
    return sorted(scored, key=lambda item: -item[1].value)


def two_phase_rank(
    probe_obs,
    candidates: list[tuple[str, list]],
    spec,
    shortlist: int = 10,
    epsilon: float = DEFAULT_EPSILON,
) -> list[tuple[str, ModelScore]]:
    """Temporal topic ranking, then sentiment re-ranking of the shortlist.

    Returns the final ordering: the re-ranked top ``shortlist`` followed
    by the remaining candidates in phase-1 order. A candidate outside the
    phase-1 shortlist can never enter the final shortlist.
    """
    if shortlist < 1:
        raise ConfigurationError(f"shortlist must be >= 1, got {shortlist}")
    probe_obs = list(probe_obs)

    def temporal(cand_obs, mode: TemporalMode) -> ModelScore:
        if not probe_obs or not cand_obs:
            return ModelScore(
                Model.TOPIC_TEMPORAL if mode is TemporalMode.TOPIC else Model.SENTIMENT_TEMPORAL,
                WORST,
            )
        wp, wc = slice_windows(probe_obs, cand_obs, spec)
        return temporal_score(wp, wc, mode, epsilon)

    phase1 = [(cid, temporal(obs, TemporalMode.TOPIC)) for cid, obs in candidates]
    phase1_order = rank_order(phase1)
    head = phase1_order[:shortlist]
    tail = phase1_order[shortlist:]

    obs_by_id = {cid: obs for cid, obs in candidates}
    phase2 = [(cid, temporal(obs_by_id[cid], TemporalMode.SENTIMENT)) for cid, _ in head]
    reranked = rank_order(phase2)

    final: list[tuple[str, ModelScore]] = []
    phase1_values = {cid: score.value for cid, score in phase1}
    for cid, score2 in reranked:
        final.append((
            cid,
            ModelScore(
                Model.TWO_PHASE,
                score2.value,
                {"phase1_value": phase1_values[cid], "phase2_value": score2.value},
            ),
        ))
    for cid, score1 in tail:
        final.append((
            cid,
            ModelScore(Model.TWO_PHASE, score1.value, {"phase1_value": score1.value}),
        ))
    return final


@dataclass(frozen=True)
class MatchParams:
    """Shared parameters for an all-candidates scoring sweep."""

    window: WindowSpec | None = None
    w1: float = 0.5
    w2: float = 0.5
    distance: DistanceWeights = DistanceWeights()
    shortlist: int = 10
    epsilon: float = DEFAULT_EPSILON
    rank_key: str = "similarity"  # or "symmetric_kl"

    def __post_init__(self):
        if self.rank_key not in ("similarity", "symmetric_kl"):
            raise ConfigurationError(f"unknown rank key: {self.rank_key!r}")


def _worst(model: Model) -> ModelScore:
    return ModelScore(model, WORST)


def _require_window(params: MatchParams) -> WindowSpec:
    if params.window is None:
        raise ConfigurationError("temporal models require a window spec (w, tau)")
    return params.window


def _rekey_by_kl(score: ModelScore, kl: float) -> ModelScore:
    diagnostics = dict(score.diagnostics)
    diagnostics["similarity_value"] = score.value
    return ModelScore(score.model, -kl, diagnostics)


def score_candidate(probe_obs, cand_obs, model: Model, params: MatchParams) -> ModelScore:
    """Score one candidate against the probe under the chosen model."""
    if model is Model.DISTANCE:
        return distance_score(
            build_counter(cand_obs),
            build_counter(probe_obs),
            topic_sentiment_map(cand_obs),
            topic_sentiment_map(probe_obs),
            params.distance,
        )
    if not probe_obs or not cand_obs:
        return _worst(model)
    if model is Model.TOPIC_NT:
        score = topic_similarity(
            topic_distribution(build_counter(probe_obs)),
            topic_distribution(build_counter(cand_obs)),
        )
        if params.rank_key == "symmetric_kl":
            kl = symmetric_kl(
                topic_distribution(build_counter(probe_obs)),
                topic_distribution(build_counter(cand_obs)),
                params.epsilon,
            )
            score = _rekey_by_kl(score, kl)
        return score
    if model is Model.SENTIMENT_NT:
        return sentiment_similarity(joint_distribution(probe_obs), joint_distribution(cand_obs))
    if model is Model.COMBINED:
        st = topic_similarity(
            topic_distribution(build_counter(probe_obs)),
            topic_distribution(build_counter(cand_obs)),
        )
        ss = sentiment_similarity(joint_distribution(probe_obs), joint_distribution(cand_obs))
        return combined_similarity(st, ss, params.w1, params.w2)
    if model in (Model.TOPIC_TEMPORAL, Model.SENTIMENT_TEMPORAL):
        spec = _require_window(params)
        wp, wc = slice_windows(probe_obs, cand_obs, spec)
        mode = TemporalMode.TOPIC if model is Model.TOPIC_TEMPORAL else TemporalMode.SENTIMENT
        score = temporal_score(wp, wc, mode, params.epsilon)
        if params.rank_key == "symmetric_kl" and "mean_symmetric_kl" in score.diagnostics:
            score = _rekey_by_kl(score, score.diagnostics["mean_symmetric_kl"])
        return score
    raise ConfigurationError(f"model {model} is not scored per-candidate")


def score_all(
    probe_obs,
    candidates: list[tuple[str, list]],
    model: Model,
    params: MatchParams = MatchParams(),
    executor_map=map,
) -> list[tuple[str, ModelScore]]:
    """Score every candidate under the chosen model with shared parameters.

    Pure per candidate, so ``executor_map`` may be a concurrent map; results
    are always returned in input order. The two-phase model produces its
    final ordering directly instead of comparable scalar scores.
    """
    if not candidates:
        raise ConfigurationError("score_all requires at least one candidate")
    probe_obs = list(probe_obs)
    if model is Model.TWO_PHASE:
        return two_phase_rank(
            probe_obs, candidates, _require_window(params), params.shortlist, params.epsilon
        )
    scores = list(
        executor_map(
            lambda item: score_candidate(probe_obs, item[1], model, params), candidates
        )
    )
    return [(cid, score) for (cid, _), score in zip(candidates, scores)]
