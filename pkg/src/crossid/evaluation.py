"""Rankings and dataset-level metrics: average rank, accuracy, Top-K.

Tie handling is pessimistic: the true candidate ranks below every
candidate that ties its score, so reported numbers never flatter the
matcher and are deterministic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field


class HarnessError(ValueError):
    """The evaluation harness was fed inconsistent inputs."""


@dataclass(frozen=True)
class RankResult:
    probe_id: str
    true_candidate_id: str
    rank: int
    n_candidates: int
    scores: tuple[tuple[str, float], ...] = field(repr=False)

    def __post_init__(self):
        assert 1 <= self.rank <= self.n_candidates


@dataclass(frozen=True)
class MetricsReport:
    average_rank: float
    accuracy: float
    top_k: dict[int, float]
    top_k_counts: dict[int, int]
    n: int


def rank_candidates(scores, true_id: str, probe_id: str = "") -> RankResult:
    """Pessimistic rank of the true candidate among scored candidates.

    rank = 1 + #{strictly better} + #{tied, excluding the true candidate};
    WORST-sentinel scores tie with each other the same way.
    """
    values = [(cid, s.value if hasattr(s, "value") else float(s)) for cid, s in scores]
    true_values = [v for cid, v in values if cid == true_id]
    if not true_values:
        raise HarnessError(f"true candidate {true_id!r} absent from scores")
    if len(true_values) > 1:
        raise HarnessError(f"true candidate {true_id!r} scored more than once")
    tv = true_values[0]
    better = sum(1 for _, v in values if v > tv)
    tied = sum(1 for cid, v in values if v == tv and cid != true_id)
    return RankResult(
        probe_id=probe_id,
        true_candidate_id=true_id,
        rank=1 + better + tied,
        n_candidates=len(values),
        scores=tuple(values),
    )


def compute_metrics(results, ks=(1, 3, 5, 10)) -> MetricsReport:
    """Average rank, accuracy (rank 1), and Top-K fractions over probes."""
    results = list(results)
    if not results:
        raise ValueError("compute_metrics requires at least one rank result")
    n = len(results)
    ranks = [r.rank for r in results]
    top_k_counts = {k: sum(1 for r in ranks if r <= k) for k in sorted(set(ks))}
    return MetricsReport(
        average_rank=sum(ranks) / n,
        accuracy=sum(1 for r in ranks if r == 1) / n,
        top_k={k: c / n for k, c in top_k_counts.items()},
        top_k_counts=top_k_counts,
        n=n,
    )


def _report_dict(report: MetricsReport) -> dict:
    return {
        "n": report.n,
        "average_rank": report.average_rank,
        "accuracy": report.accuracy,
        "top_k": {str(k): v for k, v in sorted(report.top_k.items())},
        "top_k_counts": {str(k): v for k, v in sorted(report.top_k_counts.items())},
    }


def emit_report(report: MetricsReport, results, format: str = "human") -> str:
    """Serialize a metrics report; deterministic for fixed inputs.

    Formats: ``human`` (table-style summary), ``csv`` (one row per probe:
    probe_id, rank, n_candidates, score of the true candidate), ``json``
    (the MetricsReport fields).
    """
    if format == "json":
        return json.dumps(_report_dict(report), indent=2, sort_keys=True) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["probe_id", "rank", "n_candidates", "score"])
        for r in results:
            true_score = dict(r.scores)[r.true_candidate_id]
            writer.writerow([r.probe_id, r.rank, r.n_candidates, repr(true_score)])
        return buf.getvalue()
    if format == "human":
        lines = [
            f"probes evaluated : {report.n}",
            f"average rank     : {report.average_rank:.4f}",
            f"accuracy (rank=1): {report.accuracy:.4%} "
            f"({report.top_k_counts.get(1, round(report.accuracy * report.n))}/{report.n})",
        ]
        for k in sorted(report.top_k):
            lines.append(
                f"top-{k:<3}          : {report.top_k[k]:.4%} "
                f"({report.top_k_counts[k]}/{report.n})"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format: {format!r}")
