"""Short-term electricity-load forecasting workbench.

Hourly smart-meter ingestion, from-scratch LSTM/GRU forecasters, an ARIMA
baseline with its own unit-root test and order search, and a comparison
pipeline tying them together.
"""

from . import arima
from .errors import (
    ConfigError,
    ConvergenceError,
    LoadcastError,
    MeterFormatError,
    PipelineError,
    SingularRegressionError,
)
from .evaluation import (
    ComparisonTable,
    EvalReport,
    compare_models,
    evaluate,
    persistence_baseline,
)
from .meter_ingest import (
    MeterSeries,
    drop_zero_readings,
    load_meter_csv,
    parse_wide_csv,
    read_long_csv,
    to_hourly_series,
    write_long_csv,
)
from .neural_core import (
    NetworkSpec,
    forward,
    gradient_check,
    init_params,
    load_model,
    save_model,
)
from .preprocess import (
    MinMaxScaler,
    WindowSet,
    make_windows,
    normalize_series,
    split_samples,
)
from .svgplot import emit_plot, line_plot_svg
from .synth import SynthProfile, daily_pattern, synth_household
from .trainer import TrainConfig, TrainResult, predict, train
from .workbench import RunConfig, parse_config, resolve_run_dir, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "arima",
    "LoadcastError",
    "MeterFormatError",
    "SingularRegressionError",
    "ConvergenceError",
    "ConfigError",
    "PipelineError",
    "EvalReport",
    "ComparisonTable",
    "evaluate",
    "compare_models",
    "persistence_baseline",
    "MeterSeries",
    "parse_wide_csv",
    "to_hourly_series",
    "drop_zero_readings",
    "read_long_csv",
    "write_long_csv",
    "load_meter_csv",
    "NetworkSpec",
    "init_params",
    "forward",
    "gradient_check",
    "save_model",
    "load_model",
    "MinMaxScaler",
    "WindowSet",
    "normalize_series",
    "make_windows",
    "split_samples",
    "line_plot_svg",
    "emit_plot",
    "SynthProfile",
    "daily_pattern",
    "synth_household",
    "TrainConfig",
    "TrainResult",
    "train",
    "predict",
    "RunConfig",
    "parse_config",
    "resolve_run_dir",
    "run_pipeline",
    "__version__",
]
