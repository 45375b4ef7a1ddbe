"""Stepwise order search: differencing-order choice via repeated unit-root
tests, AIC hill climbing with a full trace, near-unit-root candidate
rejection, and the rendered listing."""

import numpy as np
import pytest

import loadcast.arima.search as search_mod
from loadcast.arima.model import ArimaFit, ArimaOrder, simulate_arma
from loadcast.arima.search import (
    _ROOT_REJECT_MARGIN,
    _roots_admissible,
    choose_d,
    render_trace,
    stepwise_search,
)
from loadcast.errors import ConvergenceError

_ROOT_REJECT_MESSAGE = "fitted roots within 1% of the unit circle"


def _white_noise(seed=31, n=400):
    return np.random.default_rng(seed).normal(loc=1.0, scale=0.5, size=n)


# ---------------------------------------------------------------------------
# Differencing order


def test_choose_d_stationary_series():
    rng = np.random.default_rng(2)
    y = np.zeros(300)
    for t in range(1, 300):
        y[t] = 0.5 * y[t - 1] + rng.normal()
    assert choose_d(y) == 0


def test_choose_d_random_walk():
    rw = np.random.default_rng(1).normal(size=400).cumsum()
    assert choose_d(rw) == 1


def test_choose_d_double_integrated():
    rw = np.random.default_rng(1).normal(size=400).cumsum()
    assert choose_d(rw.cumsum()) == 2


def test_choose_d_respects_cap():
    rw = np.random.default_rng(1).normal(size=400).cumsum()
    assert choose_d(rw, max_d=0) == 0


# ---------------------------------------------------------------------------
# Search behavior on known processes


def test_search_recovers_simulated_arma_order():
    values = simulate_arma(
        1000, ar=[0.7689, -0.0986], ma=[-0.0958], const=0.6016, sigma2=0.159, seed=2
    )
    result = stepwise_search(values)
    assert result.d == 0
    assert result.best_order.as_tuple() == (2, 0, 1)
    assert result.best_with_const
    assert result.best_fit.order == result.best_order
    assert np.isfinite(result.best_aic)
    assert not result.exhausted_budget


def test_search_prefers_white_noise_on_white_noise():
    result = stepwise_search(_white_noise())
    assert result.best_order.as_tuple() == (0, 0, 0)
    assert result.best_with_const


def test_near_unit_root_candidates_are_rejected():
    # on near-white data an over-parameterized candidate can fake a
    # likelihood gain by pushing a canceling AR/MA root pair onto the
    # unit circle; such fits must land in the trace as failures
    result = stepwise_search(_white_noise())
    rejected = [e for e in result.trace if e.message == _ROOT_REJECT_MESSAGE]
    assert rejected
    for entry in rejected:
        assert entry.failed
        assert entry.aic == float("inf")
    assert result.best_order.as_tuple() != rejected[0].order.as_tuple()


def test_roots_admissible_margin():
    def fit_with(ar, ma):
        values = np.zeros(50)
        return ArimaFit(
            order=ArimaOrder(len(ar), 0, len(ma)),
            include_const=True,
            const=0.0,
            ar=np.asarray(ar, dtype=np.float64),
            ma=np.asarray(ma, dtype=np.float64),
            sigma2=1.0,
            loglik=0.0,
            aic=0.0,
            bic=0.0,
            hqic=0.0,
            n_obs=50,
            se={},
            values=values,
        )

    assert _ROOT_REJECT_MARGIN == 0.01
    assert _roots_admissible(fit_with([0.9], []))
    assert _roots_admissible(fit_with([], [-0.9]))
    # root at ~1.005 sits within the 1% exclusion band
    assert not _roots_admissible(fit_with([0.995], []))
    assert not _roots_admissible(fit_with([], [-0.995]))


# ---------------------------------------------------------------------------
# Trace bookkeeping


def test_trace_starts_with_the_four_standard_corners():
    result = stepwise_search(_white_noise())
    head = [e.order.as_tuple() for e in result.trace[:4]]
    assert head == [(2, 0, 2), (0, 0, 0), (1, 0, 0), (0, 0, 1)]
    assert all(e.with_const for e in result.trace[:4])


def test_trace_has_no_duplicate_candidates():
    result = stepwise_search(_white_noise())
    keys = [(e.order.as_tuple(), e.with_const) for e in result.trace]
    assert len(keys) == len(set(keys))
    assert all(e.seconds >= 0.0 for e in result.trace)


def test_trace_includes_the_constant_toggle():
    result = stepwise_search(_white_noise())
    assert any(not e.with_const for e in result.trace)


def test_best_aic_is_the_trace_minimum():
    result = stepwise_search(_white_noise())
    finite = [e.aic for e in result.trace if not e.failed]
    assert result.best_aic == min(finite)


def test_fit_budget_is_respected():
    result = stepwise_search(_white_noise(), max_fits=4)
    assert len(result.trace) <= 4
    assert result.exhausted_budget
    assert result.best_order.as_tuple() == (0, 0, 0)


def test_search_with_pinned_d():
    rng = np.random.default_rng(6)
    values = rng.normal(size=300).cumsum()
    result = stepwise_search(values, d=1, max_fits=6)
    assert result.d == 1
    assert result.best_order.d == 1
    assert all(e.order.d == 1 for e in result.trace)


def test_search_validation():
    with pytest.raises(ValueError, match="max_fits"):
        stepwise_search(_white_noise(), max_fits=0)


def test_search_raises_when_nothing_fits(monkeypatch):
    def always_fails(*args, **kwargs):
        raise ConvergenceError("stubbed failure")

    monkeypatch.setattr(search_mod, "fit_arima", always_fails)
    with pytest.raises(ConvergenceError, match="no candidate"):
        stepwise_search(_white_noise(), d=0)


# ---------------------------------------------------------------------------
# Rendering


def test_render_trace_layout():
    result = stepwise_search(_white_noise())
    text = render_trace(result)
    lines = text.splitlines()
    assert lines[0] == "Performing stepwise search to minimize aic"
    assert " ARIMA(2,0,2)(0,0,0)[0] intercept" in text
    assert "AIC=inf" in text  # the rejected near-unit-root candidate
    assert "Best model:  ARIMA(0,0,0)(0,0,0)[0] intercept" in text
    assert lines[-1].startswith("Total fit time:")
    # one listing line per trace entry
    listing = [ln for ln in lines if ln.startswith(" ARIMA")]
    assert len(listing) == len(result.trace)
