import datetime as dt

import pytest

from crossid.corpus import filter_profiles
from crossid.synthgen import GenSpec, generate, topic_word
from crossid.textproc import Extractor


def test_same_seed_identical_datasets():
    spec = GenSpec(n_pairs=5, seed=123)
    assert generate(spec) == generate(spec)


def test_different_seeds_differ():
    assert generate(GenSpec(n_pairs=5, seed=1)) != generate(GenSpec(n_pairs=5, seed=2))


def test_topic_word_is_extractable_and_unique():
    words = [topic_word(i) for i in range(600)]
    assert len(set(words)) == len(words)
    assert all(w[0].isupper() and w.isalpha() for w in words)


def test_full_overlap_confines_topics_to_shared_interests():
    spec = GenSpec(n_pairs=4, seed=9, overlap=1.0)
    ext = Extractor()
    for s in generate(spec):
        topics_a = {o.topic for o in ext.extract_posts(s.posts_a)}
        topics_b = {o.topic for o in ext.extract_posts(s.posts_b)}
        # with full overlap both sides draw from the same 12-topic interest set
        assert len(topics_a | topics_b) <= 12
        assert topics_a & topics_b


def test_timestamps_within_span():
    spec = GenSpec(n_pairs=3, seed=5, span_days=30)
    lo = dt.datetime(2014, 1, 1)
    hi = lo + dt.timedelta(days=30)
    for s in generate(spec):
        for post in s.posts_a + s.posts_b:
            assert lo <= post.time.to_datetime() <= hi


def test_diurnal_hours_clustered():
    spec = GenSpec(n_pairs=2, seed=5, diurnal=True)
    for s in generate(spec):
        for posts in (s.posts_a, s.posts_b):
            hours = sorted({p.time.hour for p in posts})
            assert len(hours) <= 6


def test_posts_survive_default_filter():
    spec = GenSpec(n_pairs=5, seed=3, posts_per_profile=(20, 30))
    sets = generate(spec)
    assert filter_profiles(sets, min_posts=20) == sets


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_pairs": 1},
        {"posts_per_profile": (0, 5)},
        {"posts_per_profile": (10, 5)},
        {"overlap": 1.5},
        {"sentiment_corr": -0.1},
        {"span_days": 0},
        {"vocab": 10},
    ],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        GenSpec(seed=0, **kwargs)
