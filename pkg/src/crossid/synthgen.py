"""Seeded synthetic datasets of ground-truth profile pairs.

Posts are templated sentences ("The <TopicWord> was <valence word>.")
so topic extraction recovers the generated topics exactly and matcher
tests are not confounded by NLP noise. Generation uses Python's
Mersenne Twister (``random.Random``) with an explicit seed, which is
stable across platforms and Python versions for the calls used here.
"""

from __future__ import annotations

import datetime as _dt
import random
import string
from dataclasses import asdict, dataclass

from .corpus import Platform, PostRecord, ProfileSet
from .timestamps import Timestamp

_POSITIVE_WORDS = ("wonderful", "excellent", "amazing", "brilliant")
_NEGATIVE_WORDS = ("terrible", "awful", "boring", "dreadful")
# deliberately absent from the default lexicon so they score neutral
_NEUTRAL_WORDS = ("ordinary", "routine", "everyday", "typical")

_ORIGIN = _dt.datetime(2014, 1, 1)

_INTERESTS_PER_PAIR = 12
_NOISE_TOPICS_PER_PROFILE = 12


@dataclass(frozen=True)
class GenSpec:
    """Controls for one synthetic dataset."""

    n_pairs: int = 50
    posts_per_profile: tuple[int, int] = (20, 40)
    vocab: int = 300
    overlap: float = 0.8
    sentiment_corr: float = 0.8
    span_days: int = 365
    diurnal: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.n_pairs < 2:
            raise ValueError("n_pairs must be >= 2 (ranking needs competitors)")
        lo, hi = self.posts_per_profile
        if not 1 <= lo <= hi:
            raise ValueError(f"bad posts_per_profile range: {self.posts_per_profile}")
        if self.vocab < 2 * (_INTERESTS_PER_PAIR + _NOISE_TOPICS_PER_PROFILE):
            raise ValueError(f"vocab too small: {self.vocab}")
        for name in ("overlap", "sentiment_corr"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.span_days < 1:
            raise ValueError(f"span_days must be >= 1, got {self.span_days}")


def topic_word(index: int) -> str:
    """Letter-only topic token, capitalized so extraction picks it up mid-sentence."""
    letters = []
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, 26)
        letters.append(string.ascii_lowercase[rem])
    return "T" + "".join(reversed(letters))


def _valence_word(rng: random.Random, polarity: str) -> str:
    pool = {
        "positive": _POSITIVE_WORDS,
        "negative": _NEGATIVE_WORDS,
        "neutral": _NEUTRAL_WORDS,
    }[polarity]
    return rng.choice(pool)


def _timestamp(rng: random.Random, spec: GenSpec, active_hour: int) -> Timestamp:
    day = rng.randrange(spec.span_days)
    if spec.diurnal:
        hour = (active_hour + rng.randrange(6)) % 24
    else:
        hour = rng.randrange(24)
    dt = _ORIGIN + _dt.timedelta(
        days=day, hours=hour, minutes=rng.randrange(60), seconds=rng.randrange(60)
    )
    return Timestamp.from_datetime(dt)


def generate(spec: GenSpec) -> list[ProfileSet]:
    """Deterministic synthetic dataset: one ProfileSet per ground-truth pair.

    Each pair shares a latent interest distribution; with probability
    ``overlap`` a post's topic is drawn from the shared interests, else
    from a platform-local noise pool. With probability ``sentiment_corr``
    a shared-interest post carries the pair's latent polarity for that
    topic on both platforms.
    """
    rng = random.Random(spec.seed)
    polarities = ("positive", "negative", "neutral")
    sets: list[ProfileSet] = []
    for p in range(spec.n_pairs):
        pair_id = f"pair{p:04d}"
        interests = rng.sample(range(spec.vocab), _INTERESTS_PER_PAIR)
        interest_weights = [1.0 / (r + 1) for r in range(len(interests))]
        latent_polarity = {t: rng.choice(polarities) for t in interests}
        active_hour = rng.randrange(24)

        posts_by_platform: dict[Platform, tuple[PostRecord, ...]] = {}
        for platform, uid in ((Platform.A, f"a{p:04d}"), (Platform.B, f"b{p:04d}")):
            noise_pool = rng.sample(range(spec.vocab), _NOISE_TOPICS_PER_PROFILE)
            n_posts = rng.randint(*spec.posts_per_profile)
            posts = []
            for _ in range(n_posts):
                shared = rng.random() < spec.overlap
                if shared:
                    topic_idx = rng.choices(interests, weights=interest_weights, k=1)[0]
                    if rng.random() < spec.sentiment_corr:
                        polarity = latent_polarity[topic_idx]
                    else:
                        polarity = rng.choice(polarities)
                else:
                    topic_idx = rng.choice(noise_pool)
                    polarity = rng.choice(polarities)
                text = f"The {topic_word(topic_idx)} was {_valence_word(rng, polarity)}."
                posts.append(
                    PostRecord(platform, uid, text, _timestamp(rng, spec, active_hour))
                )
            posts_by_platform[platform] = tuple(posts)

        sets.append(ProfileSet(pair_id, posts_by_platform[Platform.A], posts_by_platform[Platform.B]))
    return sets


def manifest_dict(spec: GenSpec, n_files: int) -> dict:
    doc = asdict(spec)
    doc["posts_per_profile"] = list(spec.posts_per_profile)
    return {"generator": "crossid.synthgen", "spec": doc, "n_files": n_files}
