"""Acceptance gate: eleven checks certifying the package end to end.

Every check prints one [PASS]/[FAIL] line naming the criterion (run
pytest with ``-s`` to watch them). The three expensive checks share one
full-scale benchmark run (seed 42, 88 days, 100 epochs, all models);
the determinism check performs an independent second run.
"""

import csv
import time
import warnings

import numpy as np
import pytest

from oracles import brute_force_metrics, scalar_gru_step, scalar_lstm_step

from loadcast.arima import (
    fit_arima,
    information_criteria,
    mackinnon_crit,
    simulate_arma,
    stepwise_search,
)
from loadcast.evaluation import evaluate
from loadcast.neural_core import (
    NetworkSpec,
    gradient_check,
    gru_step,
    init_params,
    load_model,
    lstm_step,
)
from loadcast.preprocess import make_windows, split_samples
from loadcast.workbench import RunConfig, run_pipeline

# Coefficients of the reference household ARIMA fit, used as the ground
# truth for the simulation-recovery checks.
_REF_AR = (0.7689, -0.0986)
_REF_MA = (-0.0958,)
_REF_CONST = 0.6016
_REF_SIGMA2 = 0.159
_REF_N = 1672


def _verdict(tag: str, ok, detail: str) -> None:
    ok = bool(ok)
    print(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
    assert ok, f"{tag}: {detail}"


@pytest.fixture(scope="module")
def benchmark(tmp_path_factory):
    """One full-scale run shared by the training-behavior checks."""
    config = RunConfig()  # the reference setup: seed 42, 88 days, 100 epochs
    t0 = time.time()
    result = run_pipeline(config, tmp_path_factory.mktemp("bench") / "run")
    return result, time.time() - t0


def _read_history(path):
    with open(path, newline="", encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    return {
        "train_loss": np.array([float(r["train_loss"]) for r in rows]),
        "val_loss": np.array([float(r["val_loss"]) for r in rows]),
    }


def test_criterion_01_information_criteria():
    aic, bic, hqic = information_criteria(-835.531, 5, 1672)
    ok = (
        abs(aic - 1681.061) <= 0.01
        and abs(bic - 1708.170) <= 0.01
        and abs(hqic - 1691.105) <= 0.01
    )
    _verdict(
        "criterion 1 (information criteria)",
        ok,
        f"AIC={aic:.4f} BIC={bic:.4f} HQIC={hqic:.4f}",
    )


def test_criterion_02_adf_critical_values():
    crit = mackinnon_crit(2066)
    targets = {"1%": -3.4335, "5%": -2.8629, "10%": -2.5675}
    ok = all(abs(crit[level] - want) <= 0.001 for level, want in targets.items())
    _verdict(
        "criterion 2 (ADF critical values)",
        ok,
        " ".join(f"{level}={crit[level]:.4f}" for level in targets),
    )


def test_criterion_03_shape_reproduction():
    values = np.sin(np.arange(2090) * 0.1)
    windows = make_windows(values, 6)
    split = split_samples(windows.x, windows.y, raw_len=windows.raw_len)
    ok = windows.x.shape[0] == 2084 and split.sizes == (1672, 209, 203)
    _verdict(
        "criterion 3 (window/split shapes)",
        ok,
        f"samples={windows.x.shape[0]} sizes={split.sizes}",
    )


def test_criterion_04_gradient_correctness():
    t0 = time.time()
    worst = 0.0
    for kind in ("lstm", "gru"):
        for units in (4, 8, 16):
            spec = NetworkSpec(
                kind=kind, window=6, units=units, dense_units=max(2, units // 2),
                dropout=0.0,
            )
            for seed in range(10):
                rng = np.random.default_rng(seed)
                params = init_params(spec, rng)
                sample = rng.uniform(-1.0, 1.0, size=(6, 1))
                worst = max(worst, gradient_check(spec, params, sample, step=1e-5))
    seconds = time.time() - t0
    ok = worst < 1e-5 and seconds < 60
    _verdict(
        "criterion 4 (gradient checks)",
        ok,
        f"worst relative error {worst:.3e} over 60 specs in {seconds:.1f}s",
    )


def test_criterion_05_cell_equation_fidelity():
    rng = np.random.default_rng(9)
    worst = 0.0
    for _ in range(100):
        units = int(rng.integers(1, 10))
        in_size = int(rng.integers(1, 5))
        x = rng.normal(size=in_size)
        h_prev = rng.normal(size=units)
        c_prev = rng.normal(size=units)

        lstm = init_params(
            NetworkSpec(kind="lstm", window=6, units=units, input_size=in_size,
                        dense_units=2),
            rng,
        ).layer1
        h, c, _ = lstm_step(lstm, x, h_prev, c_prev)
        h_ref, c_ref = scalar_lstm_step(lstm, x, h_prev, c_prev)
        worst = max(worst, np.max(np.abs(h - h_ref)), np.max(np.abs(c - c_ref)))

        gru = init_params(
            NetworkSpec(kind="gru", window=6, units=units, input_size=in_size,
                        dense_units=2),
            rng,
        ).layer1
        c2, _ = gru_step(gru, x, c_prev)
        c2_ref = scalar_gru_step(gru, x, c_prev)
        worst = max(worst, np.max(np.abs(c2 - c2_ref)))
    ok = worst <= 1e-12
    _verdict(
        "criterion 5 (cell fidelity)", ok, f"worst |vectorized - scalar| = {worst:.3e}"
    )


def test_criterion_06_arima_recovery():
    t0 = time.time()
    ar1_estimates = []
    sigma2_estimates = []
    for seed in range(50):
        series = simulate_arma(
            _REF_N, ar=_REF_AR, ma=_REF_MA, const=_REF_CONST,
            sigma2=_REF_SIGMA2, seed=seed,
        )
        fit = fit_arima(series, (2, 0, 1))
        ar1_estimates.append(fit.ar[0])
        sigma2_estimates.append(fit.sigma2)
    seconds = time.time() - t0
    med_ar1 = float(np.median(ar1_estimates))
    med_s2 = float(np.median(sigma2_estimates))
    ok = (
        abs(med_ar1 - _REF_AR[0]) <= 0.15
        and abs(med_s2 - _REF_SIGMA2) <= 0.10 * _REF_SIGMA2
        and seconds < 120
    )
    _verdict(
        "criterion 6 (ARIMA recovery)",
        ok,
        f"median ar1={med_ar1:.4f} (truth {_REF_AR[0]}), "
        f"median sigma2={med_s2:.4f} (truth {_REF_SIGMA2}) in {seconds:.1f}s",
    )


def test_criterion_07_stepwise_sanity():
    t0 = time.time()
    near = 0
    for seed in range(20):
        series = simulate_arma(
            _REF_N, ar=_REF_AR, ma=_REF_MA, const=_REF_CONST,
            sigma2=_REF_SIGMA2, seed=seed,
        )
        result = stepwise_search(series)
        order = result.best_order
        if order.d == 0 and abs(order.p - 2) <= 1 and abs(order.q - 1) <= 1:
            near += 1

    flat_wins = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        noise = rng.normal(1.0, 0.5, size=_REF_N)
        result = stepwise_search(noise)
        if result.best_order.as_tuple() == (0, 0, 0):
            flat_wins += 1
    seconds = time.time() - t0
    ok = near >= 16 and flat_wins > 10 and seconds < 180
    _verdict(
        "criterion 7 (stepwise sanity)",
        ok,
        f"near-(2,0,1) {near}/20, white-noise (0,0,0) {flat_wins}/20 in {seconds:.0f}s",
    )


def test_criterion_08_benchmark_ordering(benchmark):
    result, seconds = benchmark
    mse = {name: result.reports[name].mse for name in ("LSTM", "GRU", "ARIMA", "persistence")}
    best_neural = min(mse["LSTM"], mse["GRU"])
    worst_neural = max(mse["LSTM"], mse["GRU"])
    ok = (
        mse["LSTM"] < mse["persistence"]
        and mse["GRU"] < mse["persistence"]
        and worst_neural <= 1.05 * best_neural
        and mse["ARIMA"] > best_neural
        and seconds < 600
    )
    _verdict(
        "criterion 8 (benchmark ordering)",
        ok,
        "MSE " + " ".join(f"{k}={v:.5f}" for k, v in mse.items()) + f"; {seconds:.0f}s",
    )


def test_criterion_09_training_behavior(benchmark):
    result, _ = benchmark
    details = []
    ok = True
    for kind in ("lstm", "gru"):
        hist = _read_history(result.run_dir / f"history_{kind}.csv")
        train = hist["train_loss"]
        ratio = train[-1] / train[0]
        tail = train[49:]
        band = (tail.max() - tail.min()) / tail.min()

        _, _, _, extra = load_model(result.run_dir / f"model_{kind}.json")
        exact = extra["best_val_loss"] == hist["val_loss"].min()

        ok = ok and ratio < 0.2 and band < 0.2 and exact
        details.append(f"{kind}: ratio={ratio:.3f} band={band:.3f} checkpoint_exact={exact}")
    _verdict("criterion 9 (training behavior)", ok, "; ".join(details))


def test_criterion_10_metric_oracle_equivalence():
    rng = np.random.default_rng(4)
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for _ in range(1000):
            n = int(rng.integers(2, 40))
            actual = rng.normal(1.0, 1.0, size=n)
            predicted = actual + rng.normal(0.0, 0.5, size=n)
            report = evaluate(predicted, actual)
            ref = brute_force_metrics(actual, predicted)
            for key in ("mse", "rmse", "r2", "mae", "mape"):
                worst = max(worst, abs(getattr(report, key) - ref[key]))

    actual = np.array([1.0, 2.0])
    predicted = np.array([1.1, 1.8])
    report = evaluate(predicted, actual)
    ref = brute_force_metrics(actual, predicted)
    exact = (
        report.mae == ref["mae"]
        and report.mape == ref["mape"]
        and report.mse == ref["mse"]
        and abs(report.mae - 0.15) < 1e-12
        and abs(report.mape - 0.10) < 1e-12
        and abs(report.mse - 0.025) < 1e-12
    )
    ok = worst <= 1e-12 and exact
    _verdict(
        "criterion 10 (metric oracle)",
        ok,
        f"worst gap {worst:.3e} over 1000 pairs; hand case exact={exact}",
    )


def test_criterion_11_determinism(benchmark, tmp_path):
    result, _ = benchmark
    again = run_pipeline(result.config, tmp_path / "again")
    first = (result.run_dir / "metrics.json").read_bytes()
    second = (again.run_dir / "metrics.json").read_bytes()
    ok = first == second
    _verdict(
        "criterion 11 (determinism)",
        ok,
        f"metrics.json identical across runs: {ok} ({len(first)} bytes)",
    )
