import json
from pathlib import Path

import pytest

from crossid.cli import main


def _read_tree(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


@pytest.fixture
def dataset(tmp_path):
    out = tmp_path / "data"
    assert main(["synth", "--out", str(out), "--pairs", "6", "--seed", "11"]) == 0
    return out


class TestSynth:
    def test_repeat_run_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            assert main(["synth", "--out", str(out), "--pairs", "4", "--seed", "7"]) == 0
        assert _read_tree(a) == _read_tree(b)

    def test_seed_is_mandatory(self, tmp_path, capsys):
        with pytest.raises(SystemExit):
            main(["synth", "--out", str(tmp_path / "x"), "--pairs", "4"])
        assert "--seed" in capsys.readouterr().err

    def test_manifest_records_resolved_spec(self, dataset):
        manifest = json.loads((dataset / "manifest.json").read_text())
        assert manifest["spec"]["seed"] == 11
        assert manifest["spec"]["n_pairs"] == 6
        assert manifest["spec"]["posts_per_profile"] == [20, 40]
        assert manifest["n_files"] == 6


class TestIngest:
    def test_summary(self, dataset, capsys):
        assert main(["ingest", "--data", str(dataset)]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary == {"loaded": 6, "retained": 6, "discarded": 0, "min_posts": 20}

    def test_min_posts_flag(self, dataset, capsys):
        assert main(["ingest", "--data", str(dataset), "--min-posts", "41"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["retained"] == 0


class TestMatch:
    def test_topic_nt_writes_reports(self, dataset, tmp_path):
        out = tmp_path / "run"
        assert main(["match", "--model", "topic-nt", "--data", str(dataset),
                     "--out", str(out)]) == 0
        metrics = json.loads((out / "metrics.json").read_text())
        assert metrics["n"] == 6
        assert set(metrics["top_k"]) == {"1", "3", "5", "10"}
        ranks = (out / "ranks.csv").read_text().splitlines()
        assert ranks[0] == "probe_id,rank,n_candidates,score"
        assert len(ranks) == 7

    def test_combined_weight_sum_error(self, dataset, tmp_path, capsys):
        code = main(["match", "--model", "combined", "--w1", "0.75", "--w2", "0.5",
                     "--data", str(dataset), "--out", str(tmp_path / "x")])
        assert code == 2
        assert "sum to 1" in capsys.readouterr().err
        assert not (tmp_path / "x").exists()

    def test_distance_uses_default_weights(self, dataset, tmp_path):
        out = tmp_path / "run"
        assert main(["match", "--model", "distance", "--data", str(dataset),
                     "--out", str(out)]) == 0
        assert (out / "metrics.json").exists()

    def test_temporal_needs_window(self, dataset, tmp_path, capsys):
        code = main(["match", "--model", "topic-temporal", "--data", str(dataset),
                     "--out", str(tmp_path / "x")])
        assert code == 2
        assert "window" in capsys.readouterr().err

    def test_config_file_defaults_flags_win(self, dataset, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"w": 365, "tau": 365, "min-posts": 5}))
        out = tmp_path / "run"
        assert main(["match", "--model", "topic-temporal", "--data", str(dataset),
                     "--out", str(out), "--config", str(config)]) == 0
        assert (out / "metrics.json").exists()

    def test_direction_b2a(self, dataset, tmp_path):
        out = tmp_path / "run"
        assert main(["match", "--model", "topic-nt", "--direction", "b2a",
                     "--data", str(dataset), "--out", str(out)]) == 0

    def test_match_deterministic(self, dataset, tmp_path):
        outs = []
        for name in ("r1", "r2"):
            out = tmp_path / name
            assert main(["match", "--model", "topic-nt", "--data", str(dataset),
                         "--out", str(out)]) == 0
            outs.append(_read_tree(out))
        assert outs[0] == outs[1]


class TestSweep:
    def test_paper_grid_accepted(self, dataset, tmp_path):
        combos = ["365:365", "365:180", "365:90", "180:90", "730:365", "730:180", "1460:730"]
        args = ["sweep", "--data", str(dataset), "--out", str(tmp_path / "sweep.csv")]
        for c in combos:
            args += ["--combo", c]
        assert main(args) == 0
        lines = (tmp_path / "sweep.csv").read_text().splitlines()
        assert len(lines) == 1 + len(combos)
        assert lines[0].startswith("w,tau,")

    def test_single_combo(self, dataset, tmp_path):
        assert main(["sweep", "--data", str(dataset), "--combo", "365:180",
                     "--out", str(tmp_path / "s.csv")]) == 0
        assert len((tmp_path / "s.csv").read_text().splitlines()) == 2

    def test_invalid_combo_skipped_with_nonzero_exit(self, dataset, tmp_path):
        code = main(["sweep", "--data", str(dataset), "--combo", "90:365",
                     "--combo", "365:90", "--out", str(tmp_path / "s.csv")])
        assert code == 1
        assert len((tmp_path / "s.csv").read_text().splitlines()) == 2


class TestReport:
    def test_render_metrics(self, dataset, tmp_path, capsys):
        out = tmp_path / "run"
        main(["match", "--model", "topic-nt", "--data", str(dataset), "--out", str(out)])
        capsys.readouterr()
        assert main(["report", "--metrics", str(out / "metrics.json")]) == 0
        text = capsys.readouterr().out
        assert "average rank" in text and "top-3" in text
