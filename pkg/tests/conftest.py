"""Shared helpers for building tiny observation fixtures."""

from __future__ import annotations

import datetime as dt

import pytest

from crossid.textproc import SentimentScore, TopicObservation
from crossid.timestamps import Timestamp

ORIGIN = dt.datetime(2000, 1, 1)

POSITIVE = SentimentScore(1.0, 0.0, 0.0)
NEGATIVE = SentimentScore(0.0, 1.0, 0.0)
NEUTRAL = SentimentScore(0.0, 0.0, 1.0)


def ts(days: float = 0.0) -> Timestamp:
    """Timestamp ``days`` (fractional) after a fixed origin."""
    return Timestamp.from_datetime(ORIGIN + dt.timedelta(days=days))


def obs(topic: str, days: float = 0.0, sentiment: SentimentScore = NEUTRAL) -> TopicObservation:
    return TopicObservation(topic, frozenset(), sentiment, ts(days))


@pytest.fixture
def make_obs():
    return obs


@pytest.fixture
def make_ts():
    return ts
