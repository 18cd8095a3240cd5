"""End-to-end command-line tests."""

import json
import os

import numpy as np
import pytest

from alclust import fileio
from alclust.cli import main


def run_cli(*argv):
    return main([str(a) for a in argv])


def read_bytes(path):
    with open(path, "rb") as handle:
        return handle.read()


@pytest.fixture
def planted_files(tmp_path):
    data = tmp_path / "data.csv"
    code = run_cli(
        "generate", "--sizes", "6x3", "--g", "1.0", "--length", "600",
        "--seed", "3", "--out", data,
    )
    assert code == 0
    return data, tmp_path / "data_labels.csv"


class TestGenerate:
    def test_planted_outputs(self, planted_files):
        data, labels = planted_files
        matrix = fileio.read_matrix_csv(data)
        assert matrix.shape == (18, 600)
        ids, tokens = fileio.read_labels_csv(labels)
        assert len(ids) == 18
        assert len(set(tokens)) == 3
        manifest = fileio.read_json(data.parent / "data.manifest.json")
        assert manifest["command"] == "generate"
        assert manifest["params"]["seed"] == 3

    def test_repeat_invocation_identical(self, tmp_path):
        args = ["generate", "--sizes", "4x2", "--g", "0.5", "--length", "50",
                "--seed", "9"]
        assert run_cli(*args, "--out", tmp_path / "a.csv") == 0
        assert run_cli(*args, "--out", tmp_path / "b.csv") == 0
        assert read_bytes(tmp_path / "a.csv") == read_bytes(tmp_path / "b.csv")

    def test_white_noise_has_no_labels(self, tmp_path):
        out = tmp_path / "noise.csv"
        assert run_cli("generate", "--white-noise", "--n", "12", "--length", "30",
                       "--df", "3", "--seed", "1", "--out", out) == 0
        assert out.exists()
        assert not (tmp_path / "noise_labels.csv").exists()

    def test_conflicting_modes_rejected(self, tmp_path, capsys):
        code = run_cli("generate", "--white-noise", "--sizes", "3x2",
                       "--n", "5", "--length", "10", "--out", tmp_path / "x.csv")
        assert code == 2
        assert "conflict" in capsys.readouterr().err

    def test_sizes_comma_list(self, tmp_path):
        out = tmp_path / "mix.csv"
        assert run_cli("generate", "--sizes", "3,5", "--g", "0.2,0.8",
                       "--length", "40", "--out", out) == 0
        assert fileio.read_matrix_csv(out).shape == (8, 40)


class TestCluster:
    def test_series_round_trip(self, planted_files, tmp_path):
        data, truth = planted_files
        out = tmp_path / "result.json"
        assert run_cli("cluster", "--series", data, "--seed", "4", "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["schema_version"] == 1
        assert payload["n_objects"] == 18
        assert payload["n_clusters"] == 3
        assert sorted(payload["clusters"]) == ["0", "1", "2"]
        assert payload["likelihood"] > 0
        labels_path = tmp_path / "result_labels.csv"
        assert labels_path.exists()
        # recovered blocks match the planted ones exactly on clean data
        code = run_cli("evaluate", truth, labels_path)
        assert code == 0

    def test_identity_corr_input(self, tmp_path):
        corr = tmp_path / "corr.csv"
        fileio.write_matrix_csv(corr, np.eye(5))
        out = tmp_path / "result.json"
        assert run_cli("cluster", "--corr", corr, "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["n_clusters"] == 5
        assert payload["likelihood"] == 0.0
        assert payload["merges"] == 0

    def test_duplicate_series_clamp_warning(self, tmp_path):
        data = tmp_path / "dup.csv"
        fileio.write_matrix_csv(data, np.array([[1.0, 2.0, 3.0, 4.0],
                                                [1.0, 2.0, 3.0, 4.0]]))
        out = tmp_path / "result.json"
        assert run_cli("cluster", "--series", data, "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["n_clusters"] == 1
        assert any("clamp" in w for w in payload["warnings"])

    def test_malformed_cell_names_location(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("1.0,2.0\n3.0,oops\n", encoding="utf-8")
        code = run_cli("cluster", "--series", bad, "--out", tmp_path / "r.json")
        assert code == 2
        err = capsys.readouterr().err
        assert "row 2" in err and "column 2" in err

    def test_ragged_row_rejected(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("1.0,2.0\n3.0\n", encoding="utf-8")
        assert run_cli("cluster", "--series", bad, "--out", tmp_path / "r.json") == 2
        assert "row 2" in capsys.readouterr().err

    def test_nan_cell_rejected(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("1.0,2.0,1.5\nnan,1.0,2.0\n", encoding="utf-8")
        assert run_cli("cluster", "--series", bad, "--out", tmp_path / "r.json") == 2
        assert "row 2, column 1" in capsys.readouterr().err

    def test_zero_variance_series_rejected(self, tmp_path, capsys):
        bad = tmp_path / "flat.csv"
        fileio.write_matrix_csv(bad, np.array([[1.0, 1.0, 1.0], [1.0, 2.0, 3.0]]))
        assert run_cli("cluster", "--series", bad, "--out", tmp_path / "r.json") == 2
        assert "series 0" in capsys.readouterr().err

    def test_requires_exactly_one_input(self, tmp_path):
        assert run_cli("cluster", "--out", tmp_path / "r.json") == 2

    def test_log_returns_requires_positive(self, tmp_path, capsys):
        bad = tmp_path / "prices.csv"
        fileio.write_matrix_csv(bad, np.array([[1.0, -2.0, 3.0], [1.0, 2.0, 3.0]]))
        code = run_cli("cluster", "--series", bad, "--log-returns",
                       "--out", tmp_path / "r.json")
        assert code == 2
        assert "positive" in capsys.readouterr().err

    def test_log_returns_transform(self, tmp_path):
        rng = np.random.default_rng(8)
        returns = rng.normal(0, 0.01, size=(6, 120))
        prices = 100 * np.exp(np.cumsum(returns, axis=1))
        series = tmp_path / "prices.csv"
        fileio.write_matrix_csv(series, prices)
        out = tmp_path / "r.json"
        assert run_cli("cluster", "--series", series, "--log-returns",
                       "--out", out) == 0
        assert json.loads(out.read_text())["n_objects"] == 6


class TestEvaluate:
    def test_same_file_twice(self, planted_files, capsys):
        _, labels = planted_files
        assert run_cli("evaluate", labels, labels) == 0
        assert "ARI 1.000000" in capsys.readouterr().out

    def test_shuffled_label_names(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        a.write_text("object_id,label\n0,0\n1,0\n2,1\n3,1\n", encoding="utf-8")
        b.write_text("object_id,label\n2,7\n3,7\n1,9\n0,9\n", encoding="utf-8")
        assert run_cli("evaluate", a, b) == 0
        assert "ARI 1.000000" in capsys.readouterr().out

    def test_report_file(self, planted_files, tmp_path):
        _, labels = planted_files
        out = tmp_path / "report.json"
        assert run_cli("evaluate", labels, labels, "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["ari"] == 1.0
        assert (tmp_path / "report.manifest.json").exists()

    def test_random_partition_near_zero(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        fileio.write_labels_csv(a, np.repeat(np.arange(10), 40))
        fileio.write_labels_csv(b, rng.integers(0, 10, size=400))
        assert run_cli("evaluate", a, b) == 0
        ari = float(capsys.readouterr().out.split()[-1])
        assert abs(ari) < 0.05


class TestBootstrap:
    def test_small_run_outputs(self, tmp_path):
        data = tmp_path / "data.csv"
        assert run_cli("generate", "--sizes", "5x3", "--g", "1.0", "--length", "2000",
                       "--seed", "2", "--out", data) == 0
        out = tmp_path / "boot.json"
        code = run_cli(
            "bootstrap", "--series", data, "--n", "12", "--omega", "0.75",
            "--max-iter", "40", "--record-every", "10", "--seed", "6",
            "--truth", tmp_path / "data_labels.csv", "--out", out,
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["sample_size"] == 12
        assert payload["stop_reason"] in ("ari_stop", "max_iterations")
        trajectory = (tmp_path / "boot_trajectory.csv").read_text().splitlines()
        assert trajectory[0] == "iteration,ari,edge_count,cluster_count"
        assert len(trajectory) >= 2
        assert (tmp_path / "boot.png").exists()

    def test_omega_one_gives_singletons(self, tmp_path):
        data = tmp_path / "data.csv"
        assert run_cli("generate", "--sizes", "4x2", "--g", "1.0", "--length", "500",
                       "--seed", "5", "--out", data) == 0
        out = tmp_path / "boot.json"
        assert run_cli("bootstrap", "--series", data, "--n", "6", "--omega", "1.0",
                       "--max-iter", "5", "--no-plot", "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["n_clusters"] == 8

    def test_single_iteration(self, tmp_path):
        data = tmp_path / "data.csv"
        assert run_cli("generate", "--sizes", "4x2", "--g", "1.0", "--length", "500",
                       "--seed", "5", "--out", data) == 0
        out = tmp_path / "boot.json"
        assert run_cli("bootstrap", "--series", data, "--n", "8", "--omega", "0.75",
                       "--max-iter", "1", "--no-plot", "--out", out) == 0
        payload = json.loads(out.read_text())
        assert payload["iterations_done"] == 1

    def test_invalid_omega_rejected(self, tmp_path):
        data = tmp_path / "data.csv"
        fileio.write_matrix_csv(data, np.random.default_rng(1).normal(size=(6, 30)))
        assert run_cli("bootstrap", "--series", data, "--n", "4", "--omega", "1.5",
                       "--out", tmp_path / "b.json") == 2

    def test_oversized_sample_rejected(self, tmp_path):
        data = tmp_path / "data.csv"
        fileio.write_matrix_csv(data, np.random.default_rng(1).normal(size=(6, 30)))
        assert run_cli("bootstrap", "--series", data, "--n", "10",
                       "--out", tmp_path / "b.json") == 2


class TestReports:
    def test_mst_two_by_two(self, tmp_path):
        corr = tmp_path / "corr.csv"
        fileio.write_matrix_csv(corr, np.array([[1.0, 0.4], [0.4, 1.0]]))
        out = tmp_path / "edges.csv"
        assert run_cli("mst", "--corr", corr, "--out", out) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "i,j,distance"
        assert len(lines) == 2
        assert lines[1].startswith("0,1,")
        assert (tmp_path / "edges.png").exists()

    def test_mst_with_truth_colors(self, planted_files, tmp_path):
        data, labels = planted_files
        out = tmp_path / "edges.csv"
        assert run_cli("mst", "--series", data, "--truth", labels, "--out", out) == 0
        assert len(out.read_text().splitlines()) == 18  # header + 17 edges

    def test_bench_smoke(self, tmp_path):
        out = tmp_path / "scaling.csv"
        code = run_cli("bench", "--sizes", "30,60", "--clusters", "3",
                       "--length", "60", "--reps", "2", "--seed", "3", "--out", out)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "size,median_seconds,rep1,rep2"
        assert len(lines) == 3
        summary = fileio.read_json(tmp_path / "scaling_summary.json")
        assert summary["consistent_repetitions"] is True
        assert np.isfinite(summary["fitted_exponent"])
        assert (tmp_path / "scaling.png").exists()

    def test_noise_smoke(self, tmp_path):
        out = tmp_path / "noise.csv"
        code = run_cli("noise", "--sizes", "30,60", "--length", "40", "--runs", "2",
                       "--seed", "1", "--out", out)
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "size,run,clusters,normalized"
        assert len(lines) == 5
        histogram = (tmp_path / "noise_histogram.csv").read_text().splitlines()
        assert histogram[0] == "cluster_size,count"
        summary = fileio.read_json(tmp_path / "noise_summary.json")
        assert "mode_cluster_size" in summary
        assert (tmp_path / "noise.png").exists()


class TestManifestRerun:
    def test_generate_rerun_byte_identical(self, planted_files, tmp_path):
        data, labels = planted_files
        rerun_dir = tmp_path / "rerun"
        assert run_cli("rerun", data.parent / "data.manifest.json",
                       "--out-dir", rerun_dir) == 0
        assert read_bytes(rerun_dir / "data.csv") == read_bytes(data)
        assert read_bytes(rerun_dir / "data_labels.csv") == read_bytes(labels)

    def test_cluster_rerun_byte_identical_labels(self, planted_files, tmp_path):
        data, _ = planted_files
        out = tmp_path / "result.json"
        assert run_cli("cluster", "--series", data, "--seed", "11", "--out", out) == 0
        rerun_dir = tmp_path / "rerun"
        assert run_cli("rerun", tmp_path / "result.manifest.json",
                       "--out-dir", rerun_dir) == 0
        assert read_bytes(rerun_dir / "result_labels.csv") == read_bytes(
            tmp_path / "result_labels.csv"
        )

    def test_unusable_manifest_rejected(self, tmp_path):
        bogus = tmp_path / "m.json"
        bogus.write_text("{\"command\": \"nope\"}", encoding="utf-8")
        assert run_cli("rerun", bogus) == 2


class TestSeedEnvironment:
    def test_env_seed_used_when_flag_absent(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ALCLUST_SEED", "77")
        out = tmp_path / "env.csv"
        assert run_cli("generate", "--sizes", "3x2", "--g", "0.5", "--length", "20",
                       "--out", out) == 0
        manifest = fileio.read_json(tmp_path / "env.manifest.json")
        assert manifest["params"]["seed"] == 77

    def test_flag_overrides_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ALCLUST_SEED", "77")
        out = tmp_path / "flag.csv"
        assert run_cli("generate", "--sizes", "3x2", "--g", "0.5", "--length", "20",
                       "--seed", "5", "--out", out) == 0
        manifest = fileio.read_json(tmp_path / "flag.manifest.json")
        assert manifest["params"]["seed"] == 5

    def test_bad_env_seed_rejected(self, tmp_path, monkeypatch):
        monkeypatch.setenv("ALCLUST_SEED", "soup")
        assert run_cli("generate", "--sizes", "3x2", "--g", "0.5", "--length", "20",
                       "--out", tmp_path / "x.csv") == 2
