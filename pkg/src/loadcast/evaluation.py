"""Forecast scoring: five regression metrics, a persistence baseline, and
a side-by-side model comparison table.

``evaluate`` computes MSE, RMSE, R-squared, MAE, and MAPE over a pair of
vectors. MAPE is reported as a *fraction* (0.10, not 10%) and its
denominator is floored at ``epsilon`` so targets near zero do not blow the
score up. ``compare_models`` lays reports out one column per model, one
row per metric, rendered as aligned text, CSV, or JSON.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

DEFAULT_EPSILON = 1e-8

_METRIC_ROWS = (
    ("MSE", "mse"),
    ("RMSE", "rmse"),
    ("R-squared", "r2"),
    ("MAE", "mae"),
    ("MAPE", "mape"),
)


@dataclass(frozen=True)
class EvalReport:
    """Scores of one prediction vector against its targets."""

    mse: float
    rmse: float
    r2: float
    mae: float
    mape: float
    n: int
    scale_note: str = "normalized"

    def to_dict(self) -> dict:
        return {
            "mse": self.mse,
            "rmse": self.rmse,
            "r2": self.r2,
            "mae": self.mae,
            "mape": self.mape,
            "n": self.n,
            "scale_note": self.scale_note,
        }


def _as_vector(values, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 2 and array.shape[1] == 1:
        array = array[:, 0]
    if array.ndim != 1:
        raise ValueError(f"{name} must be a vector; got shape {array.shape}")
    if len(array) == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} must be finite")
    return array


def evaluate(
    pred,
    actual,
    epsilon: float = DEFAULT_EPSILON,
    scale_note: str = "normalized",
) -> EvalReport:
    """Score predictions against targets.

    When the targets have zero variance R-squared is undefined; it comes
    back as NaN (with a warning) while the other metrics are still
    computed.
    """
    pred = _as_vector(pred, "pred")
    actual = _as_vector(actual, "actual")
    if len(pred) != len(actual):
        raise ValueError(
            f"pred and actual must have equal lengths; got {len(pred)} and {len(actual)}"
        )
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0; got {epsilon}")
    err = actual - pred
    mse = float(np.mean(err**2))
    mae = float(np.mean(np.abs(err)))
    mape = float(np.mean(np.abs(err) / np.maximum(np.abs(actual), epsilon)))
    ss_tot = float(np.sum((actual - actual.mean()) ** 2))
    if ss_tot == 0.0:
        warnings.warn("targets have zero variance; R-squared is undefined", stacklevel=2)
        r2 = float("nan")
    else:
        r2 = 1.0 - float(np.sum(err**2)) / ss_tot
    return EvalReport(
        mse=mse,
        rmse=math.sqrt(mse),
        r2=r2,
        mae=mae,
        mape=mape,
        n=len(actual),
        scale_note=scale_note,
    )


def persistence_baseline(windows) -> np.ndarray:
    """Naive reference predictions: the next hour equals the current hour.

    Accepts a window set (uses its inputs) or the input array itself,
    shaped ``(n, window)`` or ``(n, window, 1)``; returns the last value
    of each window as a length-``n`` vector.
    """
    x = getattr(windows, "x", windows)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim == 3 and x.shape[2] == 1:
        x = x[:, :, 0]
    if x.ndim != 2 or x.shape[1] < 1:
        raise ValueError(f"expected windowed inputs (n, window); got shape {x.shape}")
    return x[:, -1].copy()


@dataclass(frozen=True)
class ComparisonTable:
    """Per-model reports plus renderers mirroring the usual metric table."""

    reports: dict[str, EvalReport] = field(default_factory=dict)

    @property
    def comparability_note(self) -> str | None:
        """Explains when columns are not directly comparable, else None."""
        notes = []
        counts = {name: r.n for name, r in self.reports.items()}
        if len(set(counts.values())) > 1:
            listing = ", ".join(f"{name}: n={n}" for name, n in counts.items())
            notes.append(f"sample counts differ ({listing})")
        scales = {name: r.scale_note for name, r in self.reports.items()}
        if len(set(scales.values())) > 1:
            listing = ", ".join(f"{name}: {s}" for name, s in scales.items())
            notes.append(f"scores are on mixed scales ({listing})")
        if not notes:
            return None
        return "columns are not directly comparable: " + "; ".join(notes)

    def to_text(self) -> str:
        names = list(self.reports)
        width = max(12, max(len(n) for n in names) + 2)
        lines = ["Metric".ljust(14) + "".join(name.rjust(width) for name in names)]
        for label, attr in _METRIC_ROWS:
            cells = []
            for name in names:
                value = getattr(self.reports[name], attr)
                cells.append(("nan" if not np.isfinite(value) else f"{value:.4f}").rjust(width))
            lines.append(label.ljust(14) + "".join(cells))
        note = self.comparability_note
        if note:
            lines.append(f"note: {note}")
        return "\n".join(lines)

    def to_csv(self) -> str:
        names = list(self.reports)
        lines = ["metric," + ",".join(names)]
        for label, attr in _METRIC_ROWS:
            cells = [repr(getattr(self.reports[name], attr)) for name in names]
            lines.append(label + "," + ",".join(cells))
        lines.append("n," + ",".join(str(self.reports[name].n) for name in names))
        lines.append("scale," + ",".join(self.reports[name].scale_note for name in names))
        note = self.comparability_note
        if note:
            lines.append(f"# note: {note}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload: dict = {}
        for name, report in self.reports.items():
            entry = report.to_dict()
            # non-finite floats are not valid JSON scalars
            for key, value in entry.items():
                if isinstance(value, float) and not math.isfinite(value):
                    entry[key] = None
            payload[name] = entry
        note = self.comparability_note
        if note:
            payload["_note"] = note
        return json.dumps(payload, indent=2, sort_keys=True)


def compare_models(reports: dict[str, EvalReport]) -> ComparisonTable:
    """Bundle named reports into a table; needs at least one report."""
    if not reports:
        raise ValueError("need at least one report to build a comparison table")
    for name, report in reports.items():
        if not isinstance(report, EvalReport):
            raise TypeError(f"report {name!r} is not an EvalReport")
    return ComparisonTable(reports=dict(reports))
