import json

import pytest

from crossid.evaluation import (
    HarnessError,
    MetricsReport,
    RankResult,
    compute_metrics,
    emit_report,
    rank_candidates,
)
from crossid.matchers import WORST, Model, ModelScore


def _scores(pairs):
    return [(cid, ModelScore(Model.TOPIC_NT, v)) for cid, v in pairs]


def _result(rank, n=10, probe="p"):
    scores = tuple((f"c{i}", float(-i)) for i in range(n))
    return RankResult(probe, f"c{rank - 1}", rank, n, scores)


class TestRankCandidates:
    def test_unique_maximum_ranks_first(self):
        r = rank_candidates(_scores([("true", -0.1), ("c2", -0.5)]), "true")
        assert r.rank == 1

    def test_all_tied_ranks_last(self):
        r = rank_candidates(_scores([("true", -1.0), ("c2", -1.0), ("c3", -1.0)]), "true")
        assert r.rank == 3

    def test_comparison_count(self):
        r = rank_candidates(_scores([("c1", -0.5), ("true", -1.0), ("c3", -2.0)]), "true")
        assert r.rank == 2

    def test_worst_ties_pessimistically(self):
        r = rank_candidates(_scores([("true", WORST), ("c2", WORST), ("c3", -1.0)]), "true")
        assert r.rank == 3

    def test_absent_true_id(self):
        with pytest.raises(HarnessError):
            rank_candidates(_scores([("c1", 0.0)]), "missing")

    def test_rising_tie_never_improves_rank(self):
        before = rank_candidates(_scores([("true", -1.0), ("c2", -2.0)]), "true")
        after = rank_candidates(_scores([("true", -1.0), ("c2", -1.0)]), "true")
        assert after.rank >= before.rank


class TestComputeMetrics:
    def test_worked_average_rank(self):
        results = [_result(r, n=5) for r in (3, 4, 1, 4, 2)]
        report = compute_metrics(results)
        assert report.average_rank == pytest.approx(2.8, abs=1e-12)

    def test_accuracy_fraction(self):
        results = [_result(1, n=2500)] * 550 + [_result(2, n=2500)] * 1950
        assert compute_metrics(results).accuracy == pytest.approx(0.22, abs=1e-12)

    def test_top_k_fractions(self):
        results = (
            [_result(1, n=2500)] * 550
            + [_result(3, n=2500)] * 600
            + [_result(5, n=2500)] * 400
            + [_result(10, n=2500)] * 300
            + [_result(11, n=2500)] * 650
        )
        report = compute_metrics(results, ks=(1, 3, 5, 10))
        assert report.top_k[3] == pytest.approx(0.46, abs=1e-12)
        assert report.top_k[5] == pytest.approx(0.62, abs=1e-12)
        assert report.top_k[10] == pytest.approx(0.74, abs=1e-12)

    def test_top_k_monotone(self):
        results = [_result(r) for r in (1, 2, 5, 7, 10)]
        report = compute_metrics(results, ks=(1, 3, 5, 10))
        ks = sorted(report.top_k)
        assert all(report.top_k[a] <= report.top_k[b] for a, b in zip(ks, ks[1:]))
        assert all(report.accuracy <= report.top_k[k] for k in ks)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compute_metrics([])


class TestEmitReport:
    def _report(self):
        return compute_metrics([_result(r, n=5) for r in (1, 2, 3, 4, 5)], ks=(1, 3))

    def test_json_roundtrip(self):
        report = self._report()
        doc = json.loads(emit_report(report, [], "json"))
        assert doc["average_rank"] == report.average_rank
        assert doc["top_k"]["3"] == report.top_k[3]

    def test_csv_columns(self):
        results = [_result(2, n=3, probe="probeX")]
        report = compute_metrics(results, ks=(1,))
        lines = emit_report(report, results, "csv").splitlines()
        assert lines[0] == "probe_id,rank,n_candidates,score"
        assert lines[1].startswith("probeX,2,3,")

    def test_empty_top_k(self):
        report = compute_metrics([_result(1, n=5)], ks=())
        text = emit_report(report, [], "human")
        assert "average rank" in text and "accuracy" in text
        assert "top-" not in text

    def test_deterministic(self):
        results = [_result(r, n=5) for r in (1, 3)]
        report = compute_metrics(results)
        assert emit_report(report, results, "json") == emit_report(report, results, "json")
        assert emit_report(report, results, "csv") == emit_report(report, results, "csv")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            emit_report(self._report(), [], "xml")
