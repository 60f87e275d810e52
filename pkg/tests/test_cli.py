import json
import os
import shutil
from pathlib import Path

import numpy as np
import pytest

from ssaforecast.cli import main
from ssaforecast.mlp import network_from_dict
from ssaforecast.forecast import one_step_predict
from ssaforecast.series import load_csv, standardize

GOLDEN_FILES = ("summary.json", "network.json", "trace.csv", "forecast.csv", "forecast.json")


@pytest.fixture
def workdir(tmp_path, fixtures_dir, monkeypatch):
    """Fresh directory holding the tiny fixture + golden config, as cwd."""
    shutil.copy(fixtures_dir / "tiny_series.csv", tmp_path / "tiny_series.csv")
    shutil.copy(fixtures_dir / "golden_config.json", tmp_path / "golden_config.json")
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read(path) -> bytes:
    return Path(path).read_bytes()


# -- decompose -----------------------------------------------------------------

def test_decompose_outputs(workdir, capsys):
    assert main(["decompose", "--config", "golden_config.json"]) == 0
    assert "completeness" in capsys.readouterr().out
    spectrum = json.loads(read("out/spectrum.json"))
    assert spectrum["M"] == 8 and spectrum["N"] == 120
    assert len(spectrum["eigenvalues"]) == 8
    assert len(spectrum["lags"]) == 8
    assert spectrum["completeness_error"] < 1e-8
    assert spectrum["config_echo"]["seed"] == 3
    header = read("out/components.csv").decode().splitlines()[0]
    assert header == "series," + ",".join(f"rc_{k}" for k in range(1, 9))
    plot_lines = read("out/singular_spectrum.csv").decode().splitlines()
    assert plot_lines[0] == "k,log10_eigenvalue,clamped"
    assert len(plot_lines) == 9


def test_decompose_window_one(workdir):
    assert main(["decompose", "--config", "golden_config.json", "--set", "window=1",
                 "--set", "output_dir=out1"]) == 0
    spectrum = json.loads(read("out1/spectrum.json"))
    assert spectrum["completeness_error"] < 1e-10
    rows = read("out1/components.csv").decode().splitlines()[1:]
    series, rc = zip(*(map(float, r.split(",")) for r in rows))
    np.testing.assert_allclose(rc, series, atol=1e-10)


def test_decompose_rerun_bitwise_identical(workdir):
    assert main(["decompose", "--config", "golden_config.json"]) == 0
    first = {n: read(f"out/{n}") for n in ("spectrum.json", "components.csv", "singular_spectrum.csv")}
    assert main(["decompose", "--config", "golden_config.json"]) == 0
    for name, blob in first.items():
        assert read(f"out/{name}") == blob


# -- train ----------------------------------------------------------------------

def test_train_golden_files(workdir, fixtures_dir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    for name in ("summary.json", "network.json", "trace.csv"):
        assert read(f"out/{name}") == read(fixtures_dir / "golden" / name), name


def test_train_modes_share_initial_weights(workdir):
    assert main(["train", "--config", "golden_config.json", "--mode", "curriculum"]) == 0
    assert main(["train", "--config", "golden_config.json", "--mode", "baseline",
                 "--set", "output_dir=out_base"]) == 0
    cur = json.loads(read("out/summary.json"))
    base = json.loads(read("out_base/summary.json"))
    assert cur["initial_network_sha256"] == base["initial_network_sha256"]
    assert base["mode"] == "baseline"
    assert base["stage_boundaries"] == [base["total_epochs"]]


def test_train_trace_schema(workdir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    lines = read("out/trace.csv").decode().splitlines()
    assert lines[0] == "stage,epoch,train_mse,validation_mse"
    stages = {int(line.split(",")[0]) for line in lines[1:]}
    assert stages == {1, 2, 3, 4}  # p = 2, 5, 8, raw


def test_train_summary_per_stage_errors(workdir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    summary = json.loads(read("out/summary.json"))
    assert [s["source"] for s in summary["stages"]] == [2, 5, 8, "raw"]
    assert all(s["epochs_run"] == 80 for s in summary["stages"])
    assert summary["stages"][-1]["validation_mse"] == summary["final_validation_mse"]
    assert summary["stages"][-1]["train_mse"] == summary["final_train_mse"]


def test_unknown_config_key_exit_2(workdir, capsys):
    cfg = json.loads(read("golden_config.json"))
    cfg["learning_rate_typo"] = 0.1
    Path("bad.json").write_text(json.dumps(cfg))
    assert main(["train", "--config", "bad.json"]) == 2
    assert "learning_rate_typo" in capsys.readouterr().err


def test_unknown_override_key_exit_2(workdir, capsys):
    assert main(["train", "--config", "golden_config.json", "--set", "nope=1"]) == 2
    assert "nope" in capsys.readouterr().err


# -- predict ---------------------------------------------------------------------

def test_predict_golden_files(workdir, fixtures_dir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    assert main(["predict", "--config", "golden_config.json",
                 "--network", "out/network.json"]) == 0
    for name in ("forecast.csv", "forecast.json"):
        assert read(f"out/{name}") == read(fixtures_dir / "golden" / name), name


def test_predict_horizon_one_matches_one_step(workdir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    assert main(["predict", "--config", "golden_config.json",
                 "--network", "out/network.json", "--horizon", "1"]) == 0
    lines = read("out/forecast.csv").decode().splitlines()
    assert len(lines) == 2
    predicted = float(lines[1].split(",")[1])
    net = network_from_dict(json.loads(read("out/network.json")))
    raw = load_csv("tiny_series.csv", "value", "time")
    std = standardize(raw)
    expected = one_step_predict(net, std.values[-4:]) * std.scale + std.mean
    assert predicted == pytest.approx(expected, rel=1e-12)


def test_predict_mismatched_embedding_exit_2(workdir, capsys):
    assert main(["train", "--config", "golden_config.json"]) == 0
    code = main(["predict", "--config", "golden_config.json",
                 "--network", "out/network.json", "--set", "embedding=5"])
    assert code == 2
    assert "DimensionMismatch" in capsys.readouterr().err


def test_predict_emits_peak(workdir):
    assert main(["train", "--config", "golden_config.json"]) == 0
    assert main(["predict", "--config", "golden_config.json",
                 "--network", "out/network.json"]) == 0
    doc = json.loads(read("out/forecast.json"))
    assert doc["peak_prediction"] == max(doc["predictions"])
    idx = doc["predictions"].index(doc["peak_prediction"])
    assert doc["peak_timestamp"] == doc["timestamps"][idx]
    assert len(doc["predictions"]) == doc["horizon"] == 6


# -- compare ----------------------------------------------------------------------

def test_compare_singleton_seed(workdir):
    assert main(["compare", "--config", "golden_config.json",
                 "--set", "seeds=1", "--set", "compare_horizon=20",
                 "--set", "stage_epochs=40"]) == 0
    doc = json.loads(read("out/comparison.json"))
    assert len(doc["per_seed"]) == 1
    rec = doc["per_seed"][0]
    assert doc["medians"]["curriculum_validation_mse"] == rec["curriculum_validation_mse"]
    assert doc["medians"]["baseline_forecast_rmse"] == rec["baseline_forecast_rmse"]
    assert rec["curriculum_epochs"] == rec["baseline_epochs"]
    curve_rows = read("out/curve.csv").decode().splitlines()
    assert curve_rows[0] == "p,train_mse,validation_mse,baseline_mse"
    assert len(curve_rows) - 1 == 8 - 1  # window - 1 points


# -- error paths at the CLI boundary ------------------------------------------------

def test_zero_variance_exit_1(workdir, capsys):
    Path("const.csv").write_text(
        "time,value\n" + "\n".join(f"{i},5.0" for i in range(40)) + "\n"
    )
    code = main(["decompose", "--config", "golden_config.json", "--set", "input_csv=const.csv"])
    assert code == 1
    assert "ZeroVariance" in capsys.readouterr().err


def test_window_too_large_exit_2(workdir, capsys):
    code = main(["decompose", "--config", "golden_config.json", "--set", "window=100"])
    assert code == 2
    assert "WindowTooLarge" in capsys.readouterr().err


def test_embedding_too_large_exit_2(workdir, capsys):
    code = main(["train", "--config", "golden_config.json", "--set", "embedding=200"])
    assert code == 2
    assert "EmbeddingTooLarge" in capsys.readouterr().err


def test_divergence_exit_1_with_partial_trace(workdir, capsys):
    code = main(["train", "--config", "golden_config.json",
                 "--set", "stage_lr=1000000.0", "--set", "patience=0"])
    assert code == 1
    assert "DivergenceDetected" in capsys.readouterr().err
    assert Path("out/trace.csv").exists()


def test_corrupt_network_length_mismatch_exit_1(workdir, capsys):
    assert main(["train", "--config", "golden_config.json"]) == 0
    payload = json.loads(read("out/network.json"))
    payload["hidden_biases"] = payload["hidden_biases"][:-1]
    Path("corrupt.json").write_text(json.dumps(payload))
    code = main(["predict", "--config", "golden_config.json", "--network", "corrupt.json"])
    assert code == 1
    assert "LengthMismatch" in capsys.readouterr().err


def test_missing_input_file_exit_1(workdir):
    assert main(["decompose", "--config", "golden_config.json",
                 "--set", "input_csv=missing.csv"]) == 1


def test_parse_error_exit_1(workdir, capsys):
    Path("bad.csv").write_text("time,value\n0,1.0\n1,oops\n2,2.0\n")
    code = main(["decompose", "--config", "golden_config.json", "--set", "input_csv=bad.csv"])
    assert code == 1
    assert "ParseError" in capsys.readouterr().err


def test_non_monotonic_time_exit_1(workdir, capsys):
    Path("bad.csv").write_text("time,value\n0,1.0\n2,2.0\n1,3.0\n")
    code = main(["decompose", "--config", "golden_config.json", "--set", "input_csv=bad.csv"])
    assert code == 1
    assert "NonMonotonicTime" in capsys.readouterr().err


def test_bad_fraction_exit_2(workdir):
    assert main(["train", "--config", "golden_config.json",
                 "--set", "validation_fraction=1.5"]) == 2
