#!/usr/bin/env python3
"""Train the from-scratch LSTM and GRU forecasters on a small problem.

Both networks share one six-layer layout: two stacked recurrent layers
of equal width, each followed by dropout, then a ReLU dense layer and a
linear output. Everything — the cells, backpropagation through time,
dropout, Adam — is plain numpy, so a finite-difference gradient check
can certify the backward pass directly.

The sizes here are deliberately tiny (8 hidden units, 15 epochs) so the
demo finishes in seconds; the defaults used for real runs are 140 units
and 100 epochs.
"""

from pathlib import Path

import numpy as np

from loadcast.evaluation import compare_models, evaluate, persistence_baseline
from loadcast.neural_core import (
    NetworkSpec,
    gradient_check,
    init_params,
    load_model,
    save_model,
)
from loadcast.preprocess import make_windows, normalize_series, split_samples
from loadcast.seeding import substream
from loadcast.synth import SynthProfile, synth_household
from loadcast.trainer import TrainConfig, predict, train

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- data ------------------------------------------------------------------
series = synth_household(SynthProfile(days=25, seed=1))
scaled, scaler = normalize_series(series.values)
windows = make_windows(scaled, window=6)
split = split_samples(windows.x, windows.y, raw_len=windows.raw_len)
print(f"samples: train/val/test = {split.sizes}")

# --- gradient check --------------------------------------------------------
# Before trusting training, verify the analytic gradients against
# central finite differences on one random sample.
check_rng = substream(0, "init")
sample = check_rng.uniform(size=(6, 1))
for kind in ("lstm", "gru"):
    spec = NetworkSpec(kind=kind, window=6, units=8, dense_units=4, dropout=0.0)
    params = init_params(spec, check_rng)
    err = gradient_check(spec, params, sample)
    print(f"{kind} gradient check: max relative error {err:.2e}")
    assert err < 1e-5

# --- training --------------------------------------------------------------
config = TrainConfig(epochs=15, batch_size=32, learning_rate=3e-3, seed=5)
results = {}
for kind in ("lstm", "gru"):
    spec = NetworkSpec(kind=kind, window=6, units=8, dense_units=4, dropout=0.1)
    result = train(spec, split.x_train, split.y_train, split.x_val, split.y_val, config)
    results[kind] = result
    hist = result.history
    print(f"{kind}: val RMSE {hist.val_rmse[0]:.4f} -> {hist.val_rmse[-1]:.4f}, "
          f"best epoch {result.best_epoch}")

    # The checkpoint keeps the parameters from the best validation epoch,
    # which need not be the final epoch.
    assert result.best_val_loss == min(hist.val_loss)

# --- scoring ---------------------------------------------------------------
# Score each model on the held-out test split, next to the naive
# "tomorrow equals today" persistence forecast.
reports = {}
for kind, result in results.items():
    preds = predict(result.spec, result.params, split.x_test)
    reports[kind.upper()] = evaluate(preds, split.y_test)
naive = persistence_baseline(split.x_test)
reports["persistence"] = evaluate(naive, split.y_test)
print()
print(compare_models(reports).to_text())

# --- persistence of the model itself ---------------------------------------
best = results["lstm"]
path = OUT / "demo_lstm.json"
save_model(path, best.spec, best.params, scaler=scaler)
spec2, params2, scaler2, _ = load_model(path)
same = predict(spec2, params2, split.x_test)
assert np.array_equal(same, predict(best.spec, best.params, split.x_test))
print(f"\nsaved the LSTM to {path} and reloaded it with identical predictions")
