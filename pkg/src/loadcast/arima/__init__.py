"""ARIMA baseline: unit-root testing, exact MLE, and stepwise order search."""

from .adf import AdfResult, adf_test, mackinnon_crit, mackinnon_p, render_adf
from .model import (
    ArimaFit,
    ArimaOrder,
    build_state_space,
    difference,
    fit_arima,
    forecast_out,
    information_criteria,
    integrate,
    one_step_predictions,
    psi_weights,
    render_fit_summary,
    simulate_arma,
)
from .search import SearchResult, TraceEntry, choose_d, render_trace, stepwise_search

__all__ = [
    "AdfResult",
    "adf_test",
    "mackinnon_crit",
    "mackinnon_p",
    "render_adf",
    "ArimaFit",
    "ArimaOrder",
    "build_state_space",
    "difference",
    "fit_arima",
    "forecast_out",
    "information_criteria",
    "integrate",
    "one_step_predictions",
    "psi_weights",
    "render_fit_summary",
    "simulate_arma",
    "SearchResult",
    "TraceEntry",
    "choose_d",
    "render_trace",
    "stepwise_search",
]
