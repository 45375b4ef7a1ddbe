#!/usr/bin/env python3
"""Scale a series to [0, 1], cut it into supervised windows, and split it.

A recurrent forecaster learns from (window, next value) pairs: six
consecutive hourly loads in, the seventh out. This demo shows the
min-max scaler, the sliding-window construction, the chronological
80/10/10 split, and the two splitting conventions the workbench
supports (exact floor-based sizes versus fractions of the window count).
"""

import numpy as np

from loadcast.preprocess import (
    MinMaxScaler,
    make_windows,
    normalize_series,
    split_samples,
)
from loadcast.synth import SynthProfile, synth_household

series = synth_household(SynthProfile(days=88, seed=42))
values = series.values
print(f"raw series: n={len(values)}, min={values.min():.3f}, max={values.max():.3f}")

# --- scaling ---------------------------------------------------------------
# The default fit uses the whole series, so train/val/test share one scale.
scaled, scaler = normalize_series(values)
print(f"scaled to [{scaled.min():.3f}, {scaled.max():.3f}] "
      f"using span [{scaler.data_min:.3f}, {scaler.data_max:.3f}]")

# Inversion recovers the original kWh values exactly (up to float error).
assert np.allclose(scaler.invert(scaled), values, atol=1e-12)

# strict=True fits the scaler on the training prefix only, which avoids
# leaking the test range into the transform (test values may then fall
# slightly outside [0, 1]).
strict_scaled, strict_scaler = normalize_series(values, strict=True, train_fraction=0.8)
outside = np.sum((strict_scaled < 0) | (strict_scaled > 1))
print(f"strict scaler: fitted on the first 80%, "
      f"{int(outside)} later readings fall outside [0, 1]")

# The scaler serializes, so a stored model can reuse the training scale.
restored = MinMaxScaler.from_dict(scaler.to_dict())
assert restored.data_min == scaler.data_min and restored.data_max == scaler.data_max

# --- windows ---------------------------------------------------------------
window = 6
windows = make_windows(scaled, window)
print(f"window={window}: x{windows.x.shape}, y{windows.y.shape} "
      f"({len(values)} readings -> {windows.x.shape[0]} samples)")

# Each target is simply the reading that follows its window.
k = 100
assert np.array_equal(windows.x[k, :, 0], scaled[k : k + window])
assert windows.y[k, 0] == scaled[k + window]
print("sample k holds readings [k, k+window) with reading k+window as target")

# --- splits ----------------------------------------------------------------
# The default split sizes train and validation as floors of the *raw*
# length (here 0.8*2112 and 0.1*2112) and gives the remainder to test.
split = split_samples(windows.x, windows.y, fractions=(0.8, 0.1, 0.1),
                      raw_len=windows.raw_len)
print(f"raw-length split sizes: {split.sizes}")

# Passing raw_len=None sizes the splits from the window count instead.
alt = split_samples(windows.x, windows.y, fractions=(0.8, 0.1, 0.1), raw_len=None)
print(f"window-count split sizes: {alt.sizes}")

# Either way the split is chronological: validation follows training,
# test follows validation, with no shuffling across the boundaries.
n_train = split.sizes[0]
assert np.array_equal(split.x_train[-1], windows.x[n_train - 1])
assert np.array_equal(split.x_val[0], windows.x[n_train])
print("splits are chronological slices, never shuffled")
