"""crossid: cross-platform social media identity resolution.

Library and CLI for scoring candidate profile pairs with topic-frequency,
sentiment, temporal-window, and distance-based matchers, plus an
evaluation harness and a seeded synthetic data generator.
"""

__version__ = "0.1.0"

from .corpus import (  # noqa: F401
    Platform,
    PostRecord,
    ProfileSet,
    filter_profiles,
    load_dataset,
)
from .evaluation import MetricsReport, RankResult, compute_metrics, rank_candidates  # noqa: F401
from .matchers import (  # noqa: F401
    WORST,
    DistanceWeights,
    MatchParams,
    Model,
    ModelScore,
    combined_similarity,
    distance_score,
    kl_divergence,
    score_all,
    sentiment_similarity,
    symmetric_kl,
    temporal_score,
    topic_similarity,
    two_phase_rank,
)
from .profiles import (  # noqa: F401
    TopicCounter,
    WindowSpec,
    build_counter,
    joint_distribution,
    slice_windows,
    topic_distribution,
)
from .synthgen import GenSpec, generate  # noqa: F401
from .textproc import (  # noqa: F401
    Polarity,
    SentimentScore,
    TopicObservation,
    dominant_polarity,
    extract_topics,
    score_sentiment,
)
from .timestamps import Timestamp, parse_timestamp  # noqa: F401
