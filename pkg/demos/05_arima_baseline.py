#!/usr/bin/env python3
"""Fit the linear baseline: unit-root testing, order search, forecasting.

The statistical side of the workbench is a full ARIMA stack built on a
state-space representation with a Kalman filter for the exact Gaussian
likelihood: an augmented Dickey-Fuller stationarity test, a stepwise
AIC search over (p, d, q) orders, maximum-likelihood fitting, one-step
in-sample predictions, and multi-step forecasts with standard errors.
"""

import numpy as np

from loadcast.arima import (
    adf_test,
    fit_arima,
    forecast_out,
    one_step_predictions,
    render_adf,
    render_fit_summary,
    render_trace,
    simulate_arma,
    stepwise_search,
)

# --- a series with known structure ----------------------------------------
# Simulate an ARMA(2,1) process so we can check the machinery recovers
# what we put in: phi = (1.2, -0.5), theta = 0.4, process mean 0.375.
true_ar = [1.2, -0.5]
true_ma = [0.4]
series = simulate_arma(1500, ar=true_ar, ma=true_ma, const=0.375, sigma2=0.4, seed=1)
print(f"simulated {len(series)} observations, mean {series.mean():.3f}")

# --- stationarity ----------------------------------------------------------
# The ADF test regresses the differenced series on its lagged level; a
# statistic far below the 5% critical value rejects a unit root.
adf = adf_test(series)
print()
print(render_adf(adf))
assert adf.stationary_at_5pct

# --- order search ----------------------------------------------------------
# Stepwise AIC search: start from a handful of seed orders, then walk to
# neighboring (p, q) orders while the information criterion improves.
result = stepwise_search(series, max_fits=20)
print()
print(render_trace(result))
assert result.d == 0

# --- the fitted model ------------------------------------------------------
fit = result.best_fit
print(render_fit_summary(fit))
if result.best_order.p == 2 and result.best_order.q == 1:
    gap = np.max(np.abs(np.asarray(fit.ar) - true_ar))
    print(f"largest AR coefficient error vs the truth: {gap:.3f}")

# Refitting a pinned order gives the same answer as the search found it.
again = fit_arima(series, result.best_order, include_const=result.best_with_const)
assert abs(again.loglik - fit.loglik) < 1e-6

# --- prediction ------------------------------------------------------------
# One-step predictions use only the past of each point (the Kalman
# filter's innovations), so they are honest in-sample forecasts.
preds = one_step_predictions(fit, series)
resid = series - preds
print(f"one-step RMSE {np.sqrt(np.mean(resid**2)):.4f} "
      f"(innovation variance suggests {np.sqrt(fit.sigma2):.4f})")

# Multi-step forecasts revert to the process mean as the horizon grows,
# and their variances widen toward the unconditional variance.
means, variances = forecast_out(fit, horizon=12)
se = np.sqrt(variances)
print("h=1 forecast %.3f +/- %.3f;  h=12 forecast %.3f +/- %.3f"
      % (means[0], se[0], means[-1], se[-1]))
assert se[-1] > se[0]
