"""Scaling, windowing, and chronological splitting of an hourly series.

The canonical recipe: min-max normalize the cleaned series, slice it into
sliding windows of 6 hourly values each predicting the next hour, then cut
train/validation/test chronologically at 80/10/10.

Two faithfulness knobs matter here:

* ``normalize_series`` fits the scaler on the *full* series by default,
  which leaks validation/test extremes into training. That is deliberate
  (it reproduces the reference workflow); ``strict=True`` fits on the
  training prefix only.
* ``split_samples`` with ``raw_len`` computes the 80%/90% boundaries from
  the raw series length and applies them as sample counts, so a 2090-value
  series with window 6 yields 1672/209/203 samples. Without ``raw_len`` the
  boundaries come from the sample count itself (1667/208/209).
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import timedelta

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


@dataclass(frozen=True)
class MinMaxScaler:
    """Affine map of ``[data_min, data_max]`` onto ``[0, 1]``.

    A constant series (``data_max == data_min``) transforms to all zeros
    and inverts back to the constant.
    """

    data_min: float
    data_max: float

    @classmethod
    def fit(cls, values: np.ndarray) -> "MinMaxScaler":
        values = np.asarray(values, dtype=np.float64)
        if values.size == 0:
            raise ValueError("cannot fit a scaler on an empty array")
        if not np.all(np.isfinite(values)):
            raise ValueError("cannot fit a scaler on non-finite values")
        return cls(float(values.min()), float(values.max()))

    @property
    def span(self) -> float:
        return self.data_max - self.data_min

    def transform(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        if self.span == 0.0:
            return np.zeros_like(values)
        return (values - self.data_min) / self.span

    def invert(self, scaled: np.ndarray) -> np.ndarray:
        scaled = np.asarray(scaled, dtype=np.float64)
        if self.span == 0.0:
            return np.full_like(scaled, self.data_min)
        return scaled * self.span + self.data_min

    def to_dict(self) -> dict:
        return {"data_min": self.data_min, "data_max": self.data_max}

    @classmethod
    def from_dict(cls, payload: dict) -> "MinMaxScaler":
        return cls(float(payload["data_min"]), float(payload["data_max"]))


def normalize_series(
    values: np.ndarray, *, strict: bool = False, train_fraction: float = 0.8
) -> tuple[np.ndarray, MinMaxScaler]:
    """Scale a series to [0, 1]; returns ``(scaled, scaler)``.

    Default fits the scaler on the whole series (leaks future extremes;
    kept for faithfulness to the reference workflow). ``strict=True`` fits
    on the first ``floor(train_fraction * len)`` values only.
    """
    values = np.asarray(values, dtype=np.float64)
    if strict:
        cut = int(len(values) * train_fraction)
        if cut < 1:
            raise ValueError("strict scaling needs at least one training value")
        scaler = MinMaxScaler.fit(values[:cut])
    else:
        scaler = MinMaxScaler.fit(values)
    return scaler.transform(values), scaler


@dataclass(frozen=True)
class WindowSet:
    """Supervised samples: ``x[i]`` is ``window`` consecutive values, ``y[i]`` the next one.

    ``target_index[i]`` is the raw-series index of ``y[i]``; ``raw_len`` is
    the length of the series the windows were cut from.
    """

    x: np.ndarray  # (n_samples, window, 1)
    y: np.ndarray  # (n_samples, 1)
    target_index: np.ndarray  # (n_samples,), int
    raw_len: int


def make_windows(values, window: int, timestamps=None) -> WindowSet:
    """Cut sliding windows; each window of ``window`` values predicts the next.

    With ``timestamps`` given, windows whose span (window plus target)
    contains any step other than exactly one hour are discarded, so no
    sample straddles a gap left by removed readings.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"values must be 1-D; got shape {values.shape}")
    if window < 1:
        raise ValueError(f"window must be >= 1; got {window}")
    if len(values) <= window:
        raise ValueError(
            f"need more than window={window} values to form one sample; got {len(values)}"
        )
    x = sliding_window_view(values, window)[:-1]  # (n, window)
    y = values[window:]
    target_index = np.arange(window, len(values))
    if timestamps is not None:
        if len(timestamps) != len(values):
            raise ValueError("timestamps and values must have the same length")
        deltas = np.array(
            [timestamps[i + 1] - timestamps[i] for i in range(len(timestamps) - 1)]
        )
        hourly = deltas == timedelta(hours=1)
        # window i spans steps i .. i+window-1 (through the target point)
        step_ok = sliding_window_view(hourly, window).all(axis=1)
        x, y, target_index = x[step_ok], y[step_ok], target_index[step_ok]
        if len(x) == 0:
            raise ValueError("no gap-free windows available")
    x = np.ascontiguousarray(x, dtype=np.float64)[:, :, np.newaxis]
    return WindowSet(x, y.reshape(-1, 1).copy(), target_index, len(values))


@dataclass(frozen=True)
class SplitSamples:
    """Chronological train/validation/test sample arrays."""

    x_train: np.ndarray
    y_train: np.ndarray
    x_val: np.ndarray
    y_val: np.ndarray
    x_test: np.ndarray
    y_test: np.ndarray

    @property
    def sizes(self) -> tuple[int, int, int]:
        return len(self.x_train), len(self.x_val), len(self.x_test)


def split_samples(
    x: np.ndarray,
    y: np.ndarray,
    fractions: tuple[float, float, float] = (0.8, 0.1, 0.1),
    raw_len: int | None = None,
) -> SplitSamples:
    """Cut samples chronologically into train/validation/test.

    With ``raw_len`` the boundaries are ``floor(f1*raw_len)`` and
    ``floor((f1+f2)*raw_len)`` applied as sample counts (faithful mode);
    otherwise the same floors of ``len(x)``. Fractions must be
    non-negative, sum to 1, and leave a non-empty training split.
    """
    if len(x) != len(y):
        raise ValueError(f"x and y lengths differ: {len(x)} vs {len(y)}")
    if len(fractions) != 3 or any(f < 0 for f in fractions):
        raise ValueError(f"fractions must be three non-negative numbers; got {fractions}")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise ValueError(f"fractions must sum to 1; got {fractions} (sum {sum(fractions)})")
    base = raw_len if raw_len is not None else len(x)
    b1 = int(fractions[0] * base)
    b2 = int((fractions[0] + fractions[1]) * base)
    b1 = min(b1, len(x))
    b2 = min(max(b2, b1), len(x))
    if b1 == 0:
        raise ValueError("training split is empty; increase data or the train fraction")
    return SplitSamples(
        x[:b1], y[:b1], x[b1:b2], y[b1:b2], x[b2:], y[b2:]
    )
