"""Command-line interface: synth, ingest, match, sweep, report.

All configuration is accepted both as flags and via ``--config FILE``
(a flat JSON object keyed by flag name); flags win. Every command is
deterministic given its flags and inputs. Exit code 0 means no errors
and no skipped-with-warning items.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import corpus, synthgen
from .evaluation import emit_report
from .matchers import (
    ConfigurationError,
    DistanceWeights,
    MatchParams,
    Model,
)
from .pipeline import extract_dataset, run_match
from .profiles import WindowSpec
from .textproc import ExtractorConfig, default_lexicon, default_stopwords, load_lexicon, load_stopwords

logger = logging.getLogger("crossid")


def _load_config_defaults(argv: list[str]) -> dict:
    """Pre-scan for --config and return its JSON contents as flag defaults."""
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = Path(argv[i + 1])
            doc = json.loads(path.read_text(encoding="utf-8"))
            if not isinstance(doc, dict):
                raise ConfigurationError(f"{path}: config must be a JSON object")
            return doc
        if arg.startswith("--config="):
            path = Path(arg.split("=", 1)[1])
            doc = json.loads(path.read_text(encoding="utf-8"))
            if not isinstance(doc, dict):
                raise ConfigurationError(f"{path}: config must be a JSON object")
            return doc
    return {}


def _extractor_config(args) -> ExtractorConfig:
    stopwords = (
        load_stopwords(args.stopwords) if args.stopwords else default_stopwords()
    )
    lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    return ExtractorConfig(
        stopwords=stopwords,
        lexicon=lexicon,
        per_topic_sentiment=args.per_topic_sentiment,
    )


def _match_params(args) -> MatchParams:
    window = None
    if args.w is not None or args.tau is not None:
        if args.w is None or args.tau is None:
            raise ConfigurationError("temporal windows need both --w and --tau")
        window = WindowSpec(args.w, args.tau)
    return MatchParams(
        window=window,
        w1=args.w1,
        w2=args.w2,
        distance=DistanceWeights(
            w1=args.distance_w1,
            w2=args.distance_w2,
            bonus_a=args.bonus_a,
            bonus_b=args.bonus_b,
        ),
        shortlist=args.shortlist,
        epsilon=args.epsilon,
        rank_key=args.rank_key,
    )


def _load_filtered(args) -> list:
    sets = corpus.load_dataset(args.data)
    return corpus.filter_profiles(sets, args.min_posts)


def cmd_synth(args) -> int:
    spec = synthgen.GenSpec(
        n_pairs=args.pairs,
        posts_per_profile=(args.posts_min, args.posts_max),
        vocab=args.vocab,
        overlap=args.overlap,
        sentiment_corr=args.sentiment_corr,
        span_days=args.span_days,
        diurnal=args.diurnal,
        seed=args.seed,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sets = synthgen.generate(spec)
    for s in sets:
        corpus.write_pair_file(out / f"{s.pair_id}.json", s)
    manifest = synthgen.manifest_dict(spec, len(sets))
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(sets)} pair files to {out}")
    return 0


def cmd_ingest(args) -> int:
    sets = corpus.load_dataset(args.data)
    kept = corpus.filter_profiles(sets, args.min_posts)
    summary = {
        "loaded": len(sets),
        "retained": len(kept),
        "discarded": len(sets) - len(kept),
        "min_posts": args.min_posts,
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def _write_match_outputs(out_dir: Path, results, report, fmt_human: bool) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "ranks.csv").write_text(
        emit_report(report, results, "csv"), encoding="utf-8", newline="\n"
    )
    (out_dir / "metrics.json").write_text(
        emit_report(report, results, "json"), encoding="utf-8", newline="\n"
    )
    if fmt_human:
        print(emit_report(report, results, "human"), end="")


def cmd_match(args) -> int:
    model = Model(args.model)
    params = _match_params(args)
    sets = _load_filtered(args)
    if not sets:
        raise ConfigurationError("no profile pairs survive filtering")
    pairs = extract_dataset(sets, _extractor_config(args))
    results, report, _scores = run_match(pairs, model, params, args.direction)
    _write_match_outputs(Path(args.out), results, report, fmt_human=True)
    return 0


def cmd_sweep(args) -> int:
    model = Model(args.model)
    if model not in (Model.TOPIC_TEMPORAL, Model.SENTIMENT_TEMPORAL, Model.TWO_PHASE):
        raise ConfigurationError(f"sweep requires a temporal model, got {model.value}")
    combos = []
    skipped = 0
    for combo in args.combo:
        try:
            w_str, tau_str = combo.split(":")
            spec = WindowSpec(float(w_str), float(tau_str))
        except ValueError as exc:
            logger.warning("skipping combo %r: %s", combo, exc)
            skipped += 1
            continue
        combos.append(spec)
    if not combos:
        raise ConfigurationError("no valid (w, tau) combos")

    sets = _load_filtered(args)
    if not sets:
        raise ConfigurationError("no profile pairs survive filtering")
    pairs = extract_dataset(sets, _extractor_config(args))

    rows = ["w,tau,n,average_rank,accuracy,top_3,top_5,top_10"]
    for spec in combos:
        params = MatchParams(
            window=spec,
            w1=args.w1,
            w2=args.w2,
            shortlist=args.shortlist,
            epsilon=args.epsilon,
            rank_key=args.rank_key,
        )
        _results, report, _scores = run_match(pairs, model, params, args.direction)
        rows.append(
            f"{spec.w:g},{spec.tau:g},{report.n},{report.average_rank!r},"
            f"{report.accuracy!r},{report.top_k[3]!r},{report.top_k[5]!r},{report.top_k[10]!r}"
        )
    text = "\n".join(rows) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    else:
        print(text, end="")
    return 1 if skipped else 0


def cmd_report(args) -> int:
    doc = json.loads(Path(args.metrics).read_text(encoding="utf-8"))
    lines = [
        f"probes evaluated : {doc['n']}",
        f"average rank     : {doc['average_rank']:.4f}",
        f"accuracy (rank=1): {doc['accuracy']:.4%} ({doc['top_k_counts'].get('1', '?')}/{doc['n']})",
    ]
    for k in sorted(doc["top_k"], key=int):
        lines.append(
            f"top-{k:<3}          : {doc['top_k'][k]:.4%} ({doc['top_k_counts'][k]}/{doc['n']})"
        )
    print("\n".join(lines))
    return 0


def _add_common_match_flags(parser: argparse.ArgumentParser, defaults: dict) -> None:
    parser.add_argument("--data", required="data" not in defaults, help="dataset directory of pair files")
    parser.add_argument("--min-posts", type=int, default=defaults.get("min-posts", corpus.DEFAULT_MIN_POSTS))
    parser.add_argument("--direction", choices=["a2b", "b2a"], default=defaults.get("direction", "a2b"))
    parser.add_argument("--w", type=float, default=defaults.get("w"), help="window size in days")
    parser.add_argument("--tau", type=float, default=defaults.get("tau"), help="window shift in days")
    parser.add_argument("--w1", type=float, default=defaults.get("w1", 0.5), help="combined-model topic weight")
    parser.add_argument("--w2", type=float, default=defaults.get("w2", 0.5), help="combined-model sentiment weight")
    parser.add_argument("--distance-w1", type=float, default=defaults.get("distance-w1", 0.75))
    parser.add_argument("--distance-w2", type=float, default=defaults.get("distance-w2", 0.5))
    parser.add_argument("--bonus-a", type=int, default=defaults.get("bonus-a", 5))
    parser.add_argument("--bonus-b", type=int, default=defaults.get("bonus-b", 3))
    parser.add_argument("--shortlist", type=int, default=defaults.get("shortlist", 10))
    parser.add_argument("--epsilon", type=float, default=defaults.get("epsilon", 1e-9))
    parser.add_argument("--rank-key", choices=["similarity", "symmetric_kl"],
                        default=defaults.get("rank-key", "similarity"))
    parser.add_argument("--stopwords", default=defaults.get("stopwords"), help="custom stopword file")
    parser.add_argument("--lexicon", default=defaults.get("lexicon"), help="custom valence lexicon file")
    parser.add_argument("--per-topic-sentiment", action="store_true",
                        default=defaults.get("per-topic-sentiment", False))
    parser.add_argument("--config", help="JSON config file; explicit flags win")


def build_parser(defaults: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crossid",
                                     description="Cross-platform identity resolution toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="generate a seeded synthetic dataset")
    p_synth.add_argument("--out", required=True)
    p_synth.add_argument("--pairs", type=int, default=defaults.get("pairs", 50))
    p_synth.add_argument("--seed", type=int, required="seed" not in defaults,
                         default=defaults.get("seed"),
                         help="explicit seed (mandatory: reproducibility contract)")
    p_synth.add_argument("--posts-min", type=int, default=defaults.get("posts-min", 20))
    p_synth.add_argument("--posts-max", type=int, default=defaults.get("posts-max", 40))
    p_synth.add_argument("--vocab", type=int, default=defaults.get("vocab", 300))
    p_synth.add_argument("--overlap", type=float, default=defaults.get("overlap", 0.8))
    p_synth.add_argument("--sentiment-corr", type=float, default=defaults.get("sentiment-corr", 0.8))
    p_synth.add_argument("--span-days", type=int, default=defaults.get("span-days", 365))
    p_synth.add_argument("--diurnal", action="store_true", default=defaults.get("diurnal", False))
    p_synth.add_argument("--config", help="JSON config file; explicit flags win")
    p_synth.set_defaults(func=cmd_synth)

    p_ingest = sub.add_parser("ingest", help="load, validate and filter a dataset")
    p_ingest.add_argument("--data", required=True)
    p_ingest.add_argument("--min-posts", type=int, default=defaults.get("min-posts", corpus.DEFAULT_MIN_POSTS))
    p_ingest.add_argument("--config", help="JSON config file; explicit flags win")
    p_ingest.set_defaults(func=cmd_ingest)

    p_match = sub.add_parser("match", help="score all candidates and rank the true pair")
    p_match.add_argument("--model", required=True, choices=[m.value for m in Model])
    p_match.add_argument("--out", required=True, help="output directory for ranks.csv and metrics.json")
    _add_common_match_flags(p_match, defaults)
    p_match.set_defaults(func=cmd_match)

    p_sweep = sub.add_parser("sweep", help="metrics over a grid of (w, tau) windows")
    p_sweep.add_argument("--model", default=defaults.get("model", "topic-temporal"),
                         choices=["topic-temporal", "sentiment-temporal", "two-phase"])
    p_sweep.add_argument("--combo", action="append", required="combo" not in defaults,
                         default=defaults.get("combo"),
                         help="window combo 'w:tau' in days; repeatable")
    p_sweep.add_argument("--out", help="sweep CSV path (default: stdout)")
    _add_common_match_flags(p_sweep, defaults)
    p_sweep.set_defaults(func=cmd_sweep)

    p_report = sub.add_parser("report", help="render a metrics.json in human form")
    p_report.add_argument("--metrics", required=True)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        defaults = _load_config_defaults(argv)
        parser = build_parser(defaults)
        args = parser.parse_args(argv)
        return args.func(args)
    except (ConfigurationError, corpus.DatasetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
