"""Command-line front door.

Subcommands::

    loadcast ingest --in meter.csv --out hourly.csv     # wide/long CSV -> clean long CSV
    loadcast synth --out synth.csv --days 88 --seed 42  # generate the synthetic benchmark
    loadcast train --out rundir [--config file] [key=value ...]
    loadcast evaluate --predictions rundir/predictions_lstm_test.csv
    loadcast compare LSTM=...csv GRU=...csv [--scale normalized|kwh]
    loadcast adf --in hourly.csv                        # unit-root test listing
    loadcast search-order --in hourly.csv               # stepwise ARIMA order search

Exit codes: 0 success, 1 validation/configuration error, 2 runtime or
numeric error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .arima import stepwise_search, adf_test, render_adf, render_trace
from .errors import ConfigError, ConvergenceError, MeterFormatError, PipelineError, SingularRegressionError
from .evaluation import compare_models, evaluate
from .meter_ingest import drop_zero_readings, load_meter_csv, write_long_csv
from .synth import SynthProfile, synth_household
from .workbench import parse_config, read_predictions_csv, run_pipeline


def _load_series(path: str, keep_zeros: bool):
    series = load_meter_csv(path)
    dropped = 0
    if not keep_zeros:
        before = len(series)
        series = drop_zero_readings(series)
        dropped = before - len(series)
    return series, dropped


def _cmd_ingest(args) -> int:
    series, dropped = _load_series(args.input, args.keep_zeros)
    write_long_csv(series, args.output)
    print(f"wrote {len(series)} hourly readings to {args.output} (dropped {dropped} zeros)")
    return 0


def _cmd_synth(args) -> int:
    profile = SynthProfile(
        days=args.days,
        seed=args.seed,
        base_load=args.base_load,
        morning_amplitude=args.morning_amplitude,
        evening_amplitude=args.evening_amplitude,
        noise_std=args.noise_std,
        spike_probability=args.spike_probability,
        spike_amplitude=args.spike_amplitude,
    )
    series = synth_household(profile)
    write_long_csv(series, args.output)
    zeros = int(np.sum(series.values == 0.0))
    print(
        f"wrote {len(series)} synthetic hourly readings to {args.output} "
        f"(max {series.values.max():.3f} kWh, {zeros} zero readings)"
    )
    return 0


def _cmd_train(args) -> int:
    text = Path(args.config).read_text(encoding="utf-8") if args.config else None
    config = parse_config(text, args.overrides)
    result = run_pipeline(config, args.out)
    print(f"run directory: {result.run_dir}")
    print(result.table.to_text())
    return 0


def _scored_columns(stored, scale: str):
    if scale == "kwh":
        return stored["predicted_kwh"], stored["actual_kwh"], "kWh"
    return stored["predicted"], stored["actual"], "normalized"


def _cmd_evaluate(args) -> int:
    stored = read_predictions_csv(args.predictions)
    pred, actual, note = _scored_columns(stored, args.scale)
    report = evaluate(pred, actual, scale_note=note)
    name = args.name or Path(args.predictions).stem
    table = compare_models({name: report})
    print(table.to_json() if args.json else table.to_text())
    return 0


def _cmd_compare(args) -> int:
    reports = {}
    for pair in args.pairs:
        if "=" not in pair:
            raise ConfigError(f"expected NAME=PATH; got {pair!r}")
        name, path = pair.split("=", 1)
        stored = read_predictions_csv(path)
        pred, actual, note = _scored_columns(stored, args.scale)
        reports[name] = evaluate(pred, actual, scale_note=note)
    table = compare_models(reports)
    print(table.to_json() if args.json else table.to_text())
    return 0


def _cmd_adf(args) -> int:
    series, _ = _load_series(args.input, args.keep_zeros)
    print(render_adf(adf_test(series.values)))
    return 0


def _cmd_search_order(args) -> int:
    series, _ = _load_series(args.input, args.keep_zeros)
    result = stepwise_search(
        series.values,
        d=args.d,
        max_p=args.max_p,
        max_q=args.max_q,
        max_fits=args.max_fits,
    )
    print(render_trace(result))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loadcast",
        description="Short-term electricity-load forecasting workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="convert a meter CSV to a clean long CSV")
    ingest.add_argument("--in", dest="input", required=True, help="wide or long meter CSV")
    ingest.add_argument("--out", dest="output", required=True, help="output long CSV")
    ingest.add_argument("--keep-zeros", action="store_true", help="keep exact-zero readings")
    ingest.set_defaults(handler=_cmd_ingest)

    synth = sub.add_parser("synth", help="generate the synthetic household benchmark")
    synth.add_argument("--out", dest="output", required=True)
    synth.add_argument("--days", type=int, default=SynthProfile.days)
    synth.add_argument("--seed", type=int, default=SynthProfile.seed)
    synth.add_argument("--base-load", type=float, default=SynthProfile.base_load)
    synth.add_argument(
        "--morning-amplitude", type=float, default=SynthProfile.morning_amplitude
    )
    synth.add_argument(
        "--evening-amplitude", type=float, default=SynthProfile.evening_amplitude
    )
    synth.add_argument("--noise-std", type=float, default=SynthProfile.noise_std)
    synth.add_argument(
        "--spike-probability", type=float, default=SynthProfile.spike_probability
    )
    synth.add_argument(
        "--spike-amplitude", type=float, default=SynthProfile.spike_amplitude
    )
    synth.set_defaults(handler=_cmd_synth)

    train = sub.add_parser("train", help="run a full forecasting pipeline")
    train.add_argument("--out", default=None, help="run directory (default: under $LOADCAST_RUNS)")
    train.add_argument("--config", default=None, help="JSON or key=value config document")
    train.add_argument(
        "overrides", nargs="*", metavar="key=value", help="config overrides, e.g. model=lstm"
    )
    train.set_defaults(handler=_cmd_train)

    ev = sub.add_parser("evaluate", help="score one stored predictions CSV")
    ev.add_argument("--predictions", required=True)
    ev.add_argument("--scale", choices=("normalized", "kwh"), default="normalized")
    ev.add_argument("--name", default=None, help="column label (default: file stem)")
    ev.add_argument("--json", action="store_true")
    ev.set_defaults(handler=_cmd_evaluate)

    comp = sub.add_parser("compare", help="score several predictions CSVs side by side")
    comp.add_argument("pairs", nargs="+", metavar="NAME=PATH")
    comp.add_argument("--scale", choices=("normalized", "kwh"), default="normalized")
    comp.add_argument("--json", action="store_true")
    comp.set_defaults(handler=_cmd_compare)

    adf = sub.add_parser("adf", help="augmented Dickey-Fuller test on a meter CSV")
    adf.add_argument("--in", dest="input", required=True)
    adf.add_argument("--keep-zeros", action="store_true")
    adf.set_defaults(handler=_cmd_adf)

    search = sub.add_parser("search-order", help="stepwise ARIMA order search on a meter CSV")
    search.add_argument("--in", dest="input", required=True)
    search.add_argument("--keep-zeros", action="store_true")
    search.add_argument("--d", type=int, default=None, help="pin the differencing order")
    search.add_argument("--max-p", type=int, default=5)
    search.add_argument("--max-q", type=int, default=5)
    search.add_argument("--max-fits", type=int, default=25)
    search.set_defaults(handler=_cmd_search_order)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return 0 if (exc.code or 0) == 0 else 1
    try:
        return args.handler(args)
    except (ConfigError, MeterFormatError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PipelineError, ConvergenceError, SingularRegressionError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
