"""Topic extraction and lexicon-based sentiment scoring.

Topics are single noun-like tokens found by a deterministic heuristic:
a token capitalized anywhere but sentence-start, or a token listed in a
supplied noun lexicon, minus the stopword/blocklist. The remaining
non-stopword tokens of the sentence form the topic-related word bag fed
to the sentiment scorer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from .timestamps import Timestamp

_SENTENCE_RE = re.compile(r"[.!?]+")
_TOKEN_RE = re.compile(r"\w+", re.UNICODE)

_SIMPLEX_TOL = 1e-9


class Polarity(Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class SentimentScore:
    """A (positive, negative, neutral) probability triple over a word bag."""

    pos: float
    neg: float
    neu: float

    def __post_init__(self):
        total = self.pos + self.neg + self.neu
        assert abs(total - 1.0) <= _SIMPLEX_TOL, f"sentiment mass {total} != 1"
        assert min(self.pos, self.neg, self.neu) >= 0.0, "negative sentiment mass"

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.pos, self.neg, self.neu)


NEUTRAL_SCORE = SentimentScore(0.0, 0.0, 1.0)


@dataclass(frozen=True)
class TopicObservation:
    """One topic occurrence: the topic, its related-word bag's sentiment, and time."""

    topic: str
    related_words: frozenset[str]
    sentiment: SentimentScore
    time: Timestamp

    def __post_init__(self):
        assert self.topic and self.topic == self.topic.lower()
        assert self.topic not in self.related_words


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stopword/blocklist file: one lowercase word per line, '#' comments."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def load_lexicon(path: str | Path) -> dict[str, float]:
    """Read a valence lexicon file: ``word<TAB>valence`` per line, valence in [-1, 1]."""
    lexicon: dict[str, float] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'word<TAB>valence', got {line!r}")
        word, raw = parts
        valence = float(raw)
        if not -1.0 <= valence <= 1.0:
            raise ValueError(f"{path}:{lineno}: valence {valence} outside [-1, 1]")
        lexicon[word.lower()] = valence
    return lexicon


def default_stopwords() -> frozenset[str]:
    with resources.as_file(resources.files("crossid.data") / "stopwords.txt") as p:
        return load_stopwords(p)


def default_lexicon() -> dict[str, float]:
    with resources.as_file(resources.files("crossid.data") / "lexicon.tsv") as p:
        return load_lexicon(p)


@dataclass
class ExtractorConfig:
    """Immutable-by-convention extraction settings shared by all workers."""

    stopwords: frozenset[str] = field(default_factory=default_stopwords)
    noun_lexicon: frozenset[str] = frozenset()
    lexicon: dict[str, float] = field(default_factory=default_lexicon)
    per_topic_sentiment: bool = False
    sentiment_radius: int = 3


def _sentences(text: str) -> list[str]:
    return [s for s in _SENTENCE_RE.split(text) if s.strip()]


def extract_topics(
    text: str,
    stopwords: frozenset[str],
    noun_lexicon: frozenset[str] = frozenset(),
) -> list[tuple[str, frozenset[str]]]:
    """Extract (topic, related_words) pairs, one per topic occurrence per sentence.

    Related words are the sentence's non-stopword tokens minus all topic
    tokens of that sentence, lowercased. Deterministic for fixed config.
    """
    results: list[tuple[str, frozenset[str]]] = []
    for sentence in _sentences(text):
        tokens = _TOKEN_RE.findall(sentence)
        if not tokens:
            continue
        lowered = [t.lower() for t in tokens]
        topic_set: set[str] = set()
        ordered_topics: list[str] = []
        for i, (tok, low) in enumerate(zip(tokens, lowered)):
            if low in stopwords:
                continue
            is_noun = (i > 0 and tok[0].isupper()) or low in noun_lexicon
            if is_noun and low not in topic_set:
                topic_set.add(low)
                ordered_topics.append(low)
        if not ordered_topics:
            continue
        related_pool = frozenset(
            low for low in lowered if low not in stopwords and low not in topic_set
        )
        for topic in ordered_topics:
            results.append((topic, related_pool))
    return results


def _windowed_related(
    tokens_low: list[str], topic_index: int, radius: int,
    stopwords: frozenset[str], topic_set: set[str],
) -> frozenset[str]:
    lo = max(0, topic_index - radius)
    hi = min(len(tokens_low), topic_index + radius + 1)
    return frozenset(
        w for w in tokens_low[lo:hi] if w not in stopwords and w not in topic_set
    )


def score_sentiment(words, lexicon: dict[str, float]) -> SentimentScore:
    """Score a bag of related words against a valence lexicon.

    Positive mass is the sum of positive valences, negative the sum of
    negated negative valences, neutral mass one unit per word absent from
    the lexicon; the three are normalized to sum to 1. An empty bag (or
    one with zero total mass) is fully neutral.
    """
    if not lexicon:
        raise ValueError("sentiment lexicon is empty")
    pos_mass = 0.0
    neg_mass = 0.0
    neu_mass = 0.0
    for word in words:
        valence = lexicon.get(word)
        if valence is None:
            neu_mass += 1.0
        elif valence > 0:
            pos_mass += valence
        elif valence < 0:
            neg_mass += -valence
    total = pos_mass + neg_mass + neu_mass
    if total == 0.0:
        return NEUTRAL_SCORE
    return SentimentScore(pos_mass / total, neg_mass / total, neu_mass / total)


def dominant_polarity(s: SentimentScore) -> Polarity:
    """Argmax of the three components; exact ties resolve to Neutral."""
    if s.pos > s.neg and s.pos > s.neu:
        return Polarity.POSITIVE
    if s.neg > s.pos and s.neg > s.neu:
        return Polarity.NEGATIVE
    return Polarity.NEUTRAL


class Extractor:
    """Stateless topic+sentiment extraction over posts; counts skipped input."""

    def __init__(self, config: ExtractorConfig | None = None):
        self.config = config or ExtractorConfig()
        self.skipped = 0

    def observations(self, text: str, time: Timestamp) -> list[TopicObservation]:
        """All TopicObservations of one post, stamped with the post time."""
        cfg = self.config
        try:
            sentences = _sentences(text)
        except (TypeError, UnicodeError):
            self.skipped += 1
            return []
        out: list[TopicObservation] = []
        for sentence in sentences:
            tokens = _TOKEN_RE.findall(sentence)
            if not tokens:
                continue
            lowered = [t.lower() for t in tokens]
            topic_set: set[str] = set()
            positions: dict[str, int] = {}
            for i, (tok, low) in enumerate(zip(tokens, lowered)):
                if low in cfg.stopwords:
                    continue
                is_noun = (i > 0 and tok[0].isupper()) or low in cfg.noun_lexicon
                if is_noun and low not in topic_set:
                    topic_set.add(low)
                    positions[low] = i
            if not topic_set:
                continue
            sentence_related = frozenset(
                w for w in lowered if w not in cfg.stopwords and w not in topic_set
            )
            sentence_score = score_sentiment(sentence_related, cfg.lexicon)
            for topic in sorted(topic_set, key=positions.get):
                if cfg.per_topic_sentiment:
                    related = _windowed_related(
                        lowered, positions[topic], cfg.sentiment_radius,
                        cfg.stopwords, topic_set,
                    )
                    score = score_sentiment(related, cfg.lexicon)
                else:
                    related, score = sentence_related, sentence_score
                out.append(TopicObservation(topic, related, score, time))
        return out

    def extract_posts(self, posts) -> list[TopicObservation]:
        """Observations for a sequence of PostRecords, in post order."""
        result: list[TopicObservation] = []
        for post in posts:
            result.extend(self.observations(post.text, post.time))
        return result
