"""End-to-end forecasting runs and their on-disk artifacts.

``run_pipeline`` drives ingest → clean → normalize → window → split →
train/predict for the recurrent models and ADF → order search → fit →
one-step predict for the ARIMA baseline, then scores everything on the
test split and writes a run directory:

    run_dir/
      config.json                 resolved configuration (re-runnable)
      model_{lstm,gru}.json       checkpointed parameters + scaler
      history_{lstm,gru}.csv      per-epoch train/validation losses
      adf.txt, search_trace.txt   unit-root listing and order search trace
      arima_fit.json, arima_summary.txt
      predictions_*.csv           index,actual,predicted,actual_kwh,predicted_kwh
      metrics.json                per-model test scores (byte-deterministic)
      comparison.txt / .csv       the side-by-side metric table
      plots/*.svg                 loss curves and actual-vs-predicted charts

Any stage failure is re-raised as :class:`PipelineError` carrying the
stage name, and the run directory keeps an ``INCOMPLETE`` marker naming
the failed stage. Reruns from the same resolved config reproduce
``metrics.json`` byte-identically: all randomness flows from the config
seed through named substreams, and floats are serialized via ``repr``.

Comparison scales: by default every model is scored on the normalized
scale (ARIMA's kWh predictions are mapped through the shared scaler), so
columns are directly comparable. ``paper_faithful_scales`` instead scores
ARIMA on raw kWh while the neural models stay normalized — the historical
mixed-scale layout — and the table flags the mismatch.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .arima import (
    adf_test,
    fit_arima,
    one_step_predictions,
    render_adf,
    render_fit_summary,
    render_trace,
    stepwise_search,
)
from .errors import ConfigError, PipelineError
from .evaluation import ComparisonTable, EvalReport, compare_models, evaluate, persistence_baseline
from .meter_ingest import drop_zero_readings, load_meter_csv
from .neural_core import NetworkSpec, save_model
from .preprocess import make_windows, normalize_series, split_samples
from .svgplot import emit_plot, line_plot_svg
from .synth import SynthProfile, synth_household
from .trainer import TrainConfig, predict, train

ENV_OUTPUT_ROOT = "LOADCAST_RUNS"
INCOMPLETE_MARKER = "INCOMPLETE"

_MODEL_CHOICES = ("lstm", "gru", "arima", "all")


@dataclass(frozen=True)
class RunConfig:
    """Everything a pipeline run depends on; defaults are the reference setup."""

    input: str | None = None  # meter CSV path; None generates synthetic data
    days: int = 88  # synthetic profile length when input is None
    model: str = "all"
    window: int = 6
    train_fraction: float = 0.8
    val_fraction: float = 0.1
    test_fraction: float = 0.1
    epochs: int = 100
    batch_size: int = 64
    learning_rate: float = 1e-4
    hidden_units: int = 140
    dense_units: int = 32
    dropout: float = 0.4
    paper_faithful_split: bool = True
    paper_faithful_scales: bool = False
    strict_scaler: bool = False
    gap_respecting_windows: bool = False
    search_slice: str = "full"  # series fed to the ARIMA order search
    seed: int = 42
    output_dir: str | None = None

    def __post_init__(self):
        if self.model not in _MODEL_CHOICES:
            raise ConfigError(f"model must be one of {_MODEL_CHOICES}; got {self.model!r}")
        if self.window < 1:
            raise ConfigError(f"window must be >= 1; got {self.window}")
        if self.days < 1:
            raise ConfigError(f"days must be >= 1; got {self.days}")
        frac = (self.train_fraction, self.val_fraction, self.test_fraction)
        if any(f < 0 for f in frac) or abs(sum(frac) - 1.0) > 1e-9:
            raise ConfigError(
                f"split fractions must be non-negative and sum to 1; got {frac}"
            )
        if self.epochs < 1 or self.batch_size < 1:
            raise ConfigError("epochs and batch_size must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be > 0; got {self.learning_rate}")
        if not 0.0 <= self.dropout < 1.0:
            raise ConfigError(f"dropout must be in [0, 1); got {self.dropout}")
        if self.hidden_units < 1 or self.dense_units < 1:
            raise ConfigError("hidden_units and dense_units must be >= 1")
        if self.search_slice not in ("full", "train"):
            raise ConfigError(
                f"search_slice must be 'full' or 'train'; got {self.search_slice!r}"
            )

    @property
    def fractions(self) -> tuple[float, float, float]:
        return (self.train_fraction, self.val_fraction, self.test_fraction)

    @property
    def requested_models(self) -> tuple[str, ...]:
        if self.model == "all":
            return ("lstm", "gru", "arima")
        return (self.model,)

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_optional_str(text: str):
    return None if text.strip().lower() in ("", "none", "null") else text.strip()


_CASTERS = {
    "input": _parse_optional_str,
    "days": int,
    "model": str.strip,
    "window": int,
    "train_fraction": float,
    "val_fraction": float,
    "test_fraction": float,
    "epochs": int,
    "batch_size": int,
    "learning_rate": float,
    "hidden_units": int,
    "dense_units": int,
    "dropout": float,
    "paper_faithful_split": _parse_bool,
    "paper_faithful_scales": _parse_bool,
    "strict_scaler": _parse_bool,
    "gap_respecting_windows": _parse_bool,
    "search_slice": str.strip,
    "seed": int,
    "output_dir": _parse_optional_str,
}


def _coerce(key: str, value) -> object:
    if key not in _CASTERS:
        raise ConfigError(f"unknown config key {key!r}")
    if isinstance(value, str):
        try:
            return _CASTERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}") from None
    # JSON documents carry typed values already; normalize integral floats
    if _CASTERS[key] is int and isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def parse_config(text: str | None = None, overrides=None) -> RunConfig:
    """Build a :class:`RunConfig` from a document plus overrides.

    ``text`` is either a JSON object (as echoed to ``config.json``) or a
    ``key=value`` document, one pair per line, with ``#`` comments.
    ``overrides`` are ``key=value`` strings (or a mapping) applied on top;
    unknown keys and out-of-range values raise :class:`ConfigError`.
    """
    settings: dict[str, object] = {}

    def absorb(key: str, value):
        settings[key.strip()] = _coerce(key.strip(), value)

    if text:
        stripped = text.strip()
        if stripped.startswith("{"):
            try:
                document = json.loads(stripped)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config is not valid JSON: {exc}") from None
            if not isinstance(document, dict):
                raise ConfigError("JSON config must be an object of key/value pairs")
            for key, value in document.items():
                absorb(key, value)
        else:
            for line_no, line in enumerate(stripped.splitlines(), start=1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ConfigError(f"config line {line_no} is not key=value: {line!r}")
                key, value = line.split("=", 1)
                absorb(key, value.strip())

    if overrides:
        pairs = overrides.items() if hasattr(overrides, "items") else None
        if pairs is None:
            pairs = []
            for item in overrides:
                if "=" not in item:
                    raise ConfigError(f"override is not key=value: {item!r}")
                key, value = item.split("=", 1)
                pairs.append((key, value))
        for key, value in pairs:
            absorb(key, value)

    return RunConfig(**settings)


# ---------------------------------------------------------------------------
# Prediction CSVs


def write_predictions_csv(path, index, actual, predicted, actual_kwh, predicted_kwh) -> None:
    """Write one split's predictions; floats use ``repr`` for exact re-reads."""
    columns = [np.asarray(c) for c in (actual, predicted, actual_kwh, predicted_kwh)]
    index = np.asarray(index)
    if any(len(c) != len(index) for c in columns):
        raise ValueError("prediction columns must share one length")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("index,actual,predicted,actual_kwh,predicted_kwh\n")
        for i in range(len(index)):
            cells = ",".join(repr(float(c[i])) for c in columns)
            handle.write(f"{int(index[i])},{cells}\n")


def read_predictions_csv(path) -> dict[str, np.ndarray]:
    """Read a file written by :func:`write_predictions_csv`."""
    with open(path, encoding="utf-8") as handle:
        lines = [ln.rstrip("\n") for ln in handle if ln.strip()]
    header = "index,actual,predicted,actual_kwh,predicted_kwh"
    if not lines or lines[0] != header:
        raise ValueError(f"{path}: expected header {header!r}")
    names = header.split(",")
    rows = [line.split(",") for line in lines[1:]]
    if any(len(row) != len(names) for row in rows):
        raise ValueError(f"{path}: malformed prediction row")
    out: dict[str, np.ndarray] = {
        "index": np.array([int(row[0]) for row in rows], dtype=np.int64)
    }
    for col, name in enumerate(names[1:], start=1):
        out[name] = np.array([float(row[col]) for row in rows], dtype=np.float64)
    return out


# ---------------------------------------------------------------------------
# The pipeline


@dataclass
class PipelineResult:
    run_dir: Path
    config: RunConfig
    reports: dict[str, EvalReport]
    table: ComparisonTable


def resolve_run_dir(config: RunConfig, run_dir=None) -> Path:
    """Pick the output directory: explicit arg, config, or env-rooted default."""
    if run_dir is not None:
        return Path(run_dir)
    if config.output_dir is not None:
        return Path(config.output_dir)
    root = Path(os.environ.get(ENV_OUTPUT_ROOT, "runs"))
    base = f"{config.model}-seed{config.seed}"
    candidate = root / base
    counter = 2
    while candidate.exists():
        candidate = root / f"{base}-{counter}"
        counter += 1
    return candidate


def _mark_incomplete(run_dir: Path, stage: str, exc: Exception) -> None:
    try:
        (run_dir / INCOMPLETE_MARKER).write_text(
            f"failed during stage {stage!r}: {exc}\n", encoding="utf-8"
        )
    except OSError:
        pass  # the original failure matters more than the marker


def run_pipeline(config: RunConfig, run_dir=None) -> PipelineResult:
    """Execute the configured run end to end; see the module docstring."""
    run_dir = resolve_run_dir(config, run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    plots_dir = run_dir / "plots"
    (run_dir / INCOMPLETE_MARKER).write_text("run in progress\n", encoding="utf-8")
    (run_dir / "config.json").write_text(config.to_json(), encoding="utf-8")

    stages = _StageTracker()
    try:
        reports, table = _run_stages(config, run_dir, plots_dir, stages)
    except PipelineError as exc:
        _mark_incomplete(run_dir, exc.stage, exc)
        raise
    except Exception as exc:  # bookkeeping failed outside a stage body
        _mark_incomplete(run_dir, stages.name, exc)
        raise PipelineError(stages.name, str(exc)) from exc
    (run_dir / INCOMPLETE_MARKER).unlink(missing_ok=True)
    return PipelineResult(run_dir=run_dir, config=config, reports=reports, table=table)


class _StageTracker:
    """Runs stage bodies and converts their failures to PipelineError."""

    def __init__(self):
        self.name = "ingest"

    def run(self, name: str, body):
        self.name = name
        try:
            return body()
        except PipelineError:
            raise
        except Exception as exc:
            raise PipelineError(name, str(exc)) from exc


def _run_stages(config: RunConfig, run_dir: Path, plots_dir: Path, stages: _StageTracker):
    def ingest():
        if config.input is not None:
            return load_meter_csv(config.input)
        return synth_household(SynthProfile(days=config.days, seed=config.seed))

    series = stages.run("ingest", ingest)

    def clean():
        cleaned = drop_zero_readings(series)
        if len(cleaned) == 0:
            raise ValueError("every reading was zero; nothing to model")
        return cleaned

    cleaned = stages.run("clean", clean)

    scaled, scaler = stages.run(
        "normalize",
        lambda: normalize_series(
            cleaned.values, strict=config.strict_scaler, train_fraction=config.train_fraction
        ),
    )

    windows = stages.run(
        "window",
        lambda: make_windows(
            scaled,
            config.window,
            timestamps=cleaned.timestamps if config.gap_respecting_windows else None,
        ),
    )

    splits = stages.run(
        "split",
        lambda: split_samples(
            windows.x,
            windows.y,
            config.fractions,
            raw_len=windows.raw_len if config.paper_faithful_split else None,
        ),
    )
    n_train, n_val, n_test = splits.sizes
    if n_val == 0 or n_test == 0:
        raise PipelineError("split", f"validation/test splits are empty: sizes {splits.sizes}")
    index_train = windows.target_index[:n_train]
    index_val = windows.target_index[n_train : n_train + n_val]
    index_test = windows.target_index[n_train + n_val :]

    plots_dir.mkdir(exist_ok=True)
    reports: dict[str, EvalReport] = {}

    for kind in ("lstm", "gru"):
        if kind not in config.requested_models:
            continue
        name = kind.upper()

        def train_model(kind=kind):
            spec = NetworkSpec(
                kind=kind,
                window=config.window,
                units=config.hidden_units,
                dropout=config.dropout,
                dense_units=config.dense_units,
            )
            trained = train(
                spec,
                splits.x_train,
                splits.y_train,
                splits.x_val,
                splits.y_val,
                TrainConfig(
                    epochs=config.epochs,
                    batch_size=config.batch_size,
                    learning_rate=config.learning_rate,
                    seed=config.seed,
                ),
            )
            save_model(
                run_dir / f"model_{kind}.json",
                spec,
                trained.params,
                scaler=scaler,
                extra={"best_epoch": trained.best_epoch, "best_val_loss": trained.best_val_loss},
            )
            trained.history.to_csv(run_dir / f"history_{kind}.csv")
            for split_name, x, y, idx in (
                ("train", splits.x_train, splits.y_train, index_train),
                ("val", splits.x_val, splits.y_val, index_val),
                ("test", splits.x_test, splits.y_test, index_test),
            ):
                preds = predict(spec, trained.params, x)[:, 0]
                actual = y[:, 0]
                write_predictions_csv(
                    run_dir / f"predictions_{kind}_{split_name}.csv",
                    idx,
                    actual,
                    preds,
                    scaler.invert(actual),
                    scaler.invert(preds),
                )
            return trained

        trained = stages.run(f"train_{kind}", train_model)

        def score(kind=kind):
            stored = read_predictions_csv(run_dir / f"predictions_{kind}_test.csv")
            return evaluate(stored["predicted"], stored["actual"], scale_note="normalized")

        reports[name] = stages.run(f"evaluate_{kind}", score)

        def plot_model(kind=kind, trained=trained):
            history = trained.history
            (plots_dir / f"loss_{kind}.svg").write_text(
                line_plot_svg(
                    {
                        "train loss": np.asarray(history.train_loss),
                        "validation loss": np.asarray(history.val_loss),
                    },
                    title=f"{kind.upper()} training loss (MSE)",
                    x_label="epoch",
                    y_label="mse",
                ),
                encoding="utf-8",
            )
            stored_train = read_predictions_csv(run_dir / f"predictions_{kind}_train.csv")
            tail = slice(-min(300, len(stored_train["actual"])), None)
            emit_plot(
                stored_train["actual"][tail],
                stored_train["predicted"][tail],
                f"{kind.upper()} train fit (last {len(stored_train['actual'][tail])} hours)",
                plots_dir / f"train_tail_{kind}.svg",
            )
            stored_test = read_predictions_csv(run_dir / f"predictions_{kind}_test.csv")
            emit_plot(
                stored_test["actual"],
                stored_test["predicted"],
                f"{kind.upper()} test predictions",
                plots_dir / f"test_{kind}.svg",
            )

        stages.run(f"plot_{kind}", plot_model)

    if "arima" in config.requested_models:

        def run_arima():
            raw = cleaned.values
            m = len(raw)
            b1 = int(config.train_fraction * m)
            b2 = int((config.train_fraction + config.val_fraction) * m)
            search_series = raw if config.search_slice == "full" else raw[:b1]
            (run_dir / "adf.txt").write_text(
                render_adf(adf_test(search_series)) + "\n", "utf-8"
            )
            search = stepwise_search(search_series)
            (run_dir / "search_trace.txt").write_text(render_trace(search) + "\n", "utf-8")
            refit = fit_arima(raw[:b1], search.best_order, include_const=search.best_with_const)
            payload = refit.to_dict()
            payload["search"] = {
                "order": list(search.best_order.as_tuple()),
                "with_const": search.best_with_const,
                "aic": search.best_aic,
                "d": search.d,
                "n_fits": len(search.trace),
            }
            (run_dir / "arima_fit.json").write_text(
                json.dumps(payload, indent=2, sort_keys=True) + "\n", "utf-8"
            )
            (run_dir / "arima_summary.txt").write_text(
                render_fit_summary(refit) + "\n", "utf-8"
            )
            preds_kwh = one_step_predictions(refit, values=raw)[b2:]
            actual_kwh = raw[b2:]
            if not np.all(np.isfinite(preds_kwh)):
                raise ValueError("one-step predictions are undefined on the test slice")
            write_predictions_csv(
                run_dir / "predictions_arima_test.csv",
                np.arange(b2, m),
                scaler.transform(actual_kwh),
                scaler.transform(preds_kwh),
                actual_kwh,
                preds_kwh,
            )

        stages.run("arima", run_arima)

        def score_arima():
            stored = read_predictions_csv(run_dir / "predictions_arima_test.csv")
            if config.paper_faithful_scales:
                return evaluate(stored["predicted_kwh"], stored["actual_kwh"], scale_note="kWh")
            return evaluate(stored["predicted"], stored["actual"], scale_note="normalized")

        reports["ARIMA"] = stages.run("evaluate_arima", score_arima)

        def plot_arima():
            stored = read_predictions_csv(run_dir / "predictions_arima_test.csv")
            emit_plot(
                stored["actual_kwh"],
                stored["predicted_kwh"],
                "ARIMA one-step test predictions (kWh)",
                plots_dir / "test_arima.svg",
            )

        stages.run("plot_arima", plot_arima)

    def run_persistence():
        preds = persistence_baseline(splits.x_test)
        actual = splits.y_test[:, 0]
        write_predictions_csv(
            run_dir / "predictions_persistence_test.csv",
            index_test,
            actual,
            preds,
            scaler.invert(actual),
            scaler.invert(preds),
        )
        stored = read_predictions_csv(run_dir / "predictions_persistence_test.csv")
        return evaluate(stored["predicted"], stored["actual"], scale_note="normalized")

    reports["persistence"] = stages.run("persistence", run_persistence)

    def report():
        table = compare_models(reports)
        (run_dir / "metrics.json").write_text(table.to_json() + "\n", "utf-8")
        (run_dir / "comparison.txt").write_text(table.to_text() + "\n", "utf-8")
        (run_dir / "comparison.csv").write_text(table.to_csv(), "utf-8")
        return table

    table = stages.run("report", report)
    return reports, table
