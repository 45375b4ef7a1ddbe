"""Command-line interface: exit codes, output text, and the files each
subcommand leaves behind."""

import json

import numpy as np
import pytest

from loadcast.cli import main
from loadcast.meter_ingest import read_long_csv, write_long_csv, MeterSeries
from loadcast.synth import SynthProfile, synth_household
from loadcast.workbench import write_predictions_csv


@pytest.fixture()
def synth_csv(tmp_path):
    path = tmp_path / "house.csv"
    write_long_csv(synth_household(SynthProfile(days=20, seed=5)), path)
    return path


def test_no_arguments_is_a_usage_error(capsys):
    assert main([]) == 1
    assert "usage" in capsys.readouterr().err.lower()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for name in ("ingest", "synth", "train", "evaluate", "compare", "adf", "search-order"):
        assert name in out


def test_synth_writes_a_csv_and_summarizes(tmp_path, capsys):
    out = tmp_path / "synth.csv"
    assert main(["synth", "--out", str(out), "--days", "10", "--seed", "7"]) == 0
    printed = capsys.readouterr().out
    assert "240" in printed  # reading count
    series = read_long_csv(out)
    assert len(series) == 240


def test_ingest_drops_zeros_by_default(tmp_path, capsys):
    spiky = SynthProfile(days=10, seed=11, noise_std=0.6)  # guarantees clipped zeros
    raw = tmp_path / "raw.csv"
    write_long_csv(synth_household(spiky), raw)
    n_zero = int(np.sum(read_long_csv(raw).values == 0.0))
    assert n_zero > 0

    cleaned = tmp_path / "clean.csv"
    assert main(["ingest", "--in", str(raw), "--out", str(cleaned)]) == 0
    assert len(read_long_csv(cleaned)) == 240 - n_zero

    kept = tmp_path / "kept.csv"
    assert main(["ingest", "--in", str(raw), "--out", str(kept), "--keep-zeros"]) == 0
    assert len(read_long_csv(kept)) == 240
    capsys.readouterr()


def test_adf_prints_the_report(synth_csv, capsys):
    assert main(["adf", "--in", str(synth_csv)]) == 0
    out = capsys.readouterr().out
    assert "Results of Dickey-Fuller Test:" in out
    assert "Test Statistic" in out


def test_search_order_prints_a_trace(synth_csv, capsys):
    assert main(["search-order", "--in", str(synth_csv), "--max-fits", "5"]) == 0
    out = capsys.readouterr().out
    assert "stepwise search" in out
    assert "Best model:" in out


def test_evaluate_text_and_json(tmp_path, capsys):
    path = tmp_path / "predictions_demo_test.csv"
    actual = np.array([1.0, 2.0])
    predicted = np.array([1.1, 1.8])
    write_predictions_csv(path, [0, 1], actual, predicted, actual * 3, predicted * 3)

    assert main(["evaluate", "--predictions", str(path)]) == 0
    text = capsys.readouterr().out
    assert "predictions_demo_test" in text
    assert "MAE" in text and "0.1500" in text

    assert main(["evaluate", "--predictions", str(path), "--json", "--name", "demo"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["demo"]["mae"] == pytest.approx(0.15)
    assert payload["demo"]["scale_note"] == "normalized"

    assert main(["evaluate", "--predictions", str(path), "--scale", "kwh", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    (report,) = payload.values()
    assert report["mae"] == pytest.approx(0.45)
    assert report["scale_note"] == "kWh"


def test_compare_two_files(tmp_path, capsys):
    rng = np.random.default_rng(3)
    actual = rng.normal(size=20)
    names = []
    for label, sigma in (("close", 0.05), ("far", 0.5)):
        path = tmp_path / f"{label}.csv"
        write_predictions_csv(
            path, np.arange(20), actual, actual + rng.normal(0, sigma, 20), actual, actual
        )
        names.append(f"{label}={path}")
    assert main(["compare", *names]) == 0
    out = capsys.readouterr().out
    assert "close" in out and "far" in out and "R-squared" in out

    assert main(["compare", "nopath"]) == 1
    assert "NAME=PATH" in capsys.readouterr().err


def test_missing_input_file_is_exit_one(tmp_path, capsys):
    assert main(["adf", "--in", str(tmp_path / "nope.csv")]) == 1
    assert capsys.readouterr().err.strip() != ""


def test_unknown_config_key_is_exit_one(tmp_path, capsys):
    assert main(["train", "--out", str(tmp_path / "r"), "windoww=6"]) == 1
    assert "windoww" in capsys.readouterr().err


def test_bad_flag_is_exit_one(capsys):
    assert main(["synth", "--no-such-flag"]) == 1
    capsys.readouterr()


def test_train_arima_only_smoke(tmp_path, capsys):
    run_dir = tmp_path / "run"
    code = main(
        [
            "train",
            "--out",
            str(run_dir),
            "model=arima",
            "days=15",
            "epochs=1",
            "seed=4",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert str(run_dir) in out
    assert "ARIMA" in out
    assert (run_dir / "metrics.json").is_file()


def test_corrupt_meter_csv_is_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("definitely,not,a,meter,file\n1,2,3,4,5\n", encoding="utf-8")
    assert main(["adf", "--in", str(bad)]) == 1
    capsys.readouterr()
