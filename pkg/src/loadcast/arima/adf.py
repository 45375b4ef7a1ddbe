"""Augmented Dickey-Fuller unit-root test (constant-only regression).

The regression is ``dy_t = alpha + gamma * y_{t-1} + sum_i phi_i dy_{t-i} +
e_t``; the test statistic is the t-statistic of ``gamma``. The lag count is
chosen by AIC over ``0..max_lag`` on a common sample (all regressions see
the same rows), then the chosen lag is refit on the longest sample it
allows. Default ``max_lag = floor(12 * (n/100)^0.25)``.

P-values and finite-sample critical values come from MacKinnon's response
surfaces for the constant-only case; the coefficient tables are embedded
below so the test needs no external statistics package.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from ..errors import SingularRegressionError

# MacKinnon (2010) response-surface coefficients, constant-only case, for
# the 1% / 5% / 10% critical values: cv = c0 + c1/n + c2/n^2 + c3/n^3.
TAU_C_2010 = np.array(
    [
        [-3.43035, -6.5393, -16.786, -79.433],
        [-2.86154, -2.8903, -4.234, -40.040],
        [-2.56677, -1.5384, -2.809, 0.0],
    ]
)

# MacKinnon (1994) asymptotic p-value polynomials, constant-only case.
# p = Phi(poly(stat)); the small-p polynomial covers stat <= TAU_STAR_C.
TAU_C_SMALLP = np.array([2.1659, 1.4412, 3.8269e-2])
TAU_C_LARGEP = np.array([1.7339, 0.93202, -0.12745, -0.010368])
TAU_STAR_C = -1.61
TAU_MIN_C = -18.83
TAU_MAX_C = 2.74


def mackinnon_p(statistic: float) -> float:
    """Asymptotic p-value of an ADF statistic (constant-only case)."""
    if statistic > TAU_MAX_C:
        return 1.0
    if statistic < TAU_MIN_C:
        return 0.0
    coeffs = TAU_C_SMALLP if statistic <= TAU_STAR_C else TAU_C_LARGEP
    poly = 0.0
    for power, coef in enumerate(coeffs):
        poly += coef * statistic**power
    return float(norm.cdf(poly))


def mackinnon_crit(n_obs: int) -> dict[str, float]:
    """Finite-sample 1%/5%/10% critical values at ``n_obs`` observations."""
    if n_obs < 1:
        raise ValueError(f"n_obs must be >= 1; got {n_obs}")
    levels = ("1%", "5%", "10%")
    out = {}
    for level, row in zip(levels, TAU_C_2010):
        out[level] = float(
            row[0] + row[1] / n_obs + row[2] / n_obs**2 + row[3] / n_obs**3
        )
    return out


@dataclass(frozen=True)
class AdfResult:
    statistic: float
    p_value: float
    used_lags: int
    n_obs: int
    critical_values: dict[str, float]

    @property
    def stationary_at_5pct(self) -> bool:
        return self.p_value < 0.05


def _ols(x: np.ndarray, y: np.ndarray):
    """OLS with a singularity check; returns (beta, ssr, t_stats)."""
    rows, cols = x.shape
    if np.linalg.matrix_rank(x) < cols:
        raise SingularRegressionError(
            "ADF regression design matrix is singular (constant series?)"
        )
    xtx = x.T @ x
    beta = np.linalg.solve(xtx, x.T @ y)
    resid = y - x @ beta
    ssr = float(resid @ resid)
    dof = rows - cols
    if dof <= 0:
        raise SingularRegressionError("ADF regression has no residual degrees of freedom")
    cov = (ssr / dof) * np.linalg.inv(xtx)
    t_stats = beta / np.sqrt(np.diag(cov))
    return beta, ssr, t_stats


def _design(y: np.ndarray, dy: np.ndarray, lag: int, first_row: int):
    """Rows s = first_row..n-1 of the ADF regression with ``lag`` lagged diffs.

    Response is dy[s-1] (= y_s - y_{s-1}); regressors are y[s-1], the
    lagged differences dy[s-2]..dy[s-1-lag], and a constant.
    """
    n = len(y)
    rows = np.arange(first_row, n)
    columns = [y[rows - 1]]
    for j in range(1, lag + 1):
        columns.append(dy[rows - 1 - j])
    columns.append(np.ones(len(rows)))
    return np.column_stack(columns), dy[rows - 1]


def adf_test(values, max_lag: int | None = None) -> AdfResult:
    """Run the test on a series; lag chosen by AIC unless ``max_lag`` pins the search cap."""
    y = np.asarray(values, dtype=np.float64)
    if y.ndim != 1:
        raise ValueError(f"values must be 1-D; got shape {y.shape}")
    if not np.all(np.isfinite(y)):
        raise ValueError("values must be finite")
    n = len(y)
    if n < 12:
        raise ValueError(f"need at least 12 observations for the ADF test; got {n}")
    dy = np.diff(y)
    if max_lag is None:
        max_lag = int(12.0 * (n / 100.0) ** 0.25)
    if max_lag < 0:
        raise ValueError(f"max_lag must be >= 0; got {max_lag}")
    # keep enough common-sample rows to estimate the largest regression
    max_lag = min(max_lag, (n - 1) // 2 - 2)
    max_lag = max(max_lag, 0)

    # lag selection on the common sample: every candidate sees rows
    # s = max_lag+1 .. n-1, so AICs are comparable
    common_first = max_lag + 1
    common_rows = n - common_first
    best_lag, best_aic = 0, np.inf
    for lag in range(max_lag + 1):
        x_mat, response = _design(y, dy, lag, common_first)
        _, ssr, _ = _ols(x_mat, response)
        n_params = x_mat.shape[1]
        aic = common_rows * np.log(ssr / common_rows) + 2.0 * n_params
        if aic < best_aic:
            best_aic, best_lag = aic, lag

    # refit the chosen lag on the longest sample it allows
    x_mat, response = _design(y, dy, best_lag, best_lag + 1)
    _, _, t_stats = _ols(x_mat, response)
    statistic = float(t_stats[0])
    n_obs = n - best_lag - 1
    return AdfResult(
        statistic=statistic,
        p_value=mackinnon_p(statistic),
        used_lags=best_lag,
        n_obs=n_obs,
        critical_values=mackinnon_crit(n_obs),
    )


def render_adf(result: AdfResult) -> str:
    """Text listing of the result in the conventional layout."""
    lines = ["Results of Dickey-Fuller Test:"]
    entries = [
        ("Test Statistic", result.statistic),
        ("p-value", result.p_value),
        ("#Lags Used", float(result.used_lags)),
        ("Number of Observations Used", float(result.n_obs)),
    ]
    entries.extend(
        (f"Critical Value ({level})", value)
        for level, value in result.critical_values.items()
    )
    width = max(len(label) for label, _ in entries)
    for label, value in entries:
        lines.append(f"{label:<{width}}    {value: .6e}")
    return "\n".join(lines)
