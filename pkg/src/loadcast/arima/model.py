"""ARIMA(p,d,q) with constant: exact Gaussian MLE via a state-space filter.

The ARMA part uses Harvey's companion state space with state dimension
``r = max(p, q+1)``: transition ``T`` holds the AR coefficients in its
first column and an identity superdiagonal, the shock loads through
``R = [1, theta_1, ..., theta_{r-1}]``, and the observation picks the
first state component. The innovations (Kalman) filter started from the
exact stationary state covariance yields the exact likelihood; the
innovation variance scale is concentrated out, leaving ``mu`` and the
ARMA coefficients for a derivative-free Nelder-Mead search (with one
restart) started from Hannan-Rissanen estimates.

Conventions: the constant is the process MEAN of the d-times differenced
series (not an intercept), and ``d`` is handled by explicit differencing
before the ARMA machinery sees the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.stats import norm

from ..errors import ConvergenceError

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an install-time dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@dataclass(frozen=True)
class ArimaOrder:
    p: int
    d: int
    q: int

    def __post_init__(self):
        for name in ("p", "d", "q"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer; got {value!r}")

    def __str__(self) -> str:
        return f"({self.p},{self.d},{self.q})"

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.p, self.d, self.q)


def difference(values, d: int) -> np.ndarray:
    """Apply the difference operator ``d`` times."""
    values = np.asarray(values, dtype=np.float64)
    if d < 0:
        raise ValueError(f"d must be >= 0; got {d}")
    if d >= len(values):
        raise ValueError(f"cannot difference a length-{len(values)} series {d} times")
    for _ in range(d):
        values = np.diff(values)
    return values


def integrate(diffed, d: int, anchors) -> np.ndarray:
    """Invert :func:`difference`; ``anchors`` are the first ``d`` original values.

    ``integrate(difference(s, d), d, s[:d])`` reproduces ``s``.
    """
    diffed = np.asarray(diffed, dtype=np.float64)
    anchors = np.atleast_1d(np.asarray(anchors, dtype=np.float64))
    if d < 0:
        raise ValueError(f"d must be >= 0; got {d}")
    if len(anchors) != d:
        raise ValueError(f"need exactly d={d} anchor values; got {len(anchors)}")
    if d == 0:
        return diffed.copy()
    # rebuild level by level: the anchor stack holds the first value of each
    # differencing stage, deepest stage last
    stages = [np.asarray(anchors, dtype=np.float64)]
    for k in range(1, d):
        stages.append(np.diff(stages[-1]))
    current = diffed
    for k in range(d - 1, -1, -1):
        start = stages[k][0]
        current = np.concatenate([[start], start + np.cumsum(current)])
    return current


def ar_roots_stationary(ar, margin: float = 0.0) -> bool:
    """True when all roots of ``1 - phi_1 z - ... - phi_p z^p`` lie outside the unit circle."""
    ar = np.atleast_1d(np.asarray(ar, dtype=np.float64))
    if len(ar) == 0:
        return True
    poly = np.concatenate([[1.0], -ar])  # ascending powers
    roots = np.roots(poly[::-1])
    if len(roots) == 0:
        return True
    return bool(np.min(np.abs(roots)) > 1.0 + margin)


def ma_roots_invertible(ma, margin: float = 0.0) -> bool:
    """True when all roots of ``1 + theta_1 z + ... + theta_q z^q`` lie outside the unit circle."""
    ma = np.atleast_1d(np.asarray(ma, dtype=np.float64))
    if len(ma) == 0:
        return True
    poly = np.concatenate([[1.0], ma])
    roots = np.roots(poly[::-1])
    if len(roots) == 0:
        return True
    return bool(np.min(np.abs(roots)) > 1.0 + margin)


def information_criteria(loglik: float, n_params: int, n_obs: int) -> tuple[float, float, float]:
    """(AIC, BIC, HQIC) from a log-likelihood.

    AIC = 2k - 2ll; BIC = k ln(n) - 2ll; HQIC = 2k ln(ln n) - 2ll.
    """
    if n_obs < 3:
        raise ValueError(f"information criteria need n_obs >= 3; got {n_obs}")
    if n_params < 0:
        raise ValueError(f"n_params must be >= 0; got {n_params}")
    aic = 2.0 * n_params - 2.0 * loglik
    bic = n_params * math.log(n_obs) - 2.0 * loglik
    hqic = 2.0 * n_params * math.log(math.log(n_obs)) - 2.0 * loglik
    return aic, bic, hqic


# ---------------------------------------------------------------------------
# State space machinery


def build_state_space(ar, ma) -> tuple[np.ndarray, np.ndarray]:
    """Harvey companion form: returns ``(T, R)`` with ``r = max(p, q+1)``."""
    ar = np.atleast_1d(np.asarray(ar, dtype=np.float64))
    ma = np.atleast_1d(np.asarray(ma, dtype=np.float64))
    r = max(len(ar), len(ma) + 1)
    T = np.zeros((r, r))
    T[: len(ar), 0] = ar
    T[:-1, 1:] = np.eye(r - 1)
    R = np.zeros(r)
    R[0] = 1.0
    R[1 : 1 + len(ma)] = ma
    return T, R


def stationary_state_cov(T: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Solve ``P = T P T' + R R'`` (unit shock variance) via vectorization."""
    r = T.shape[0]
    rr = np.outer(R, R)
    lhs = np.eye(r * r) - np.kron(T, T)
    vec = np.linalg.solve(lhs, rr.reshape(-1))
    P = vec.reshape(r, r)
    return 0.5 * (P + P.T)


@njit(cache=True)
def _kalman_core(y, T, R, P):  # pragma: no cover - exercised via wrappers
    """Innovations filter; returns (sum log F, sum v^2/F, one-step preds, final state)."""
    n = y.shape[0]
    r = T.shape[0]
    a = np.zeros(r)
    preds = np.empty(n)
    RR = np.outer(R, R)
    K = np.empty(r)
    Ta = np.empty(r)
    TP = np.empty((r, r))
    slf = 0.0
    sv = 0.0
    for t in range(n):
        preds[t] = a[0]
        v = y[t] - a[0]
        F = P[0, 0]
        if F < 1e-12:
            F = 1e-12
        slf += np.log(F)
        sv += v * v / F
        for i in range(r):
            acc = 0.0
            for j in range(r):
                acc += T[i, j] * P[j, 0]
            K[i] = acc / F
        for i in range(r):
            acc = 0.0
            for j in range(r):
                acc += T[i, j] * a[j]
            Ta[i] = acc
        for i in range(r):
            a[i] = Ta[i] + K[i] * v
        for i in range(r):
            for j in range(r):
                acc = 0.0
                for k in range(r):
                    acc += T[i, k] * P[k, j]
                TP[i, j] = acc
        for i in range(r):
            for j in range(i, r):
                acc = RR[i, j] - K[i] * F * K[j]
                for k in range(r):
                    acc += TP[i, k] * T[j, k]
                P[i, j] = acc
                P[j, i] = acc
    return slf, sv, preds, a


def _filter(centered: np.ndarray, ar, ma):
    """Run the filter on a mean-centered series; returns (slf, sv, preds, final state)."""
    T, R = build_state_space(ar, ma)
    P0 = stationary_state_cov(T, R)
    return _kalman_core(
        np.ascontiguousarray(centered, dtype=np.float64),
        np.ascontiguousarray(T),
        np.ascontiguousarray(R),
        np.ascontiguousarray(P0),
    )


def concentrated_negloglik(centered: np.ndarray, ar, ma) -> float:
    """Negative exact log-likelihood with the innovation variance concentrated out."""
    n = len(centered)
    slf, sv, _, _ = _filter(centered, ar, ma)
    sigma2 = sv / n
    if sigma2 <= 0 or not np.isfinite(sigma2):
        return _BIG
    return 0.5 * (n * math.log(2.0 * math.pi) + n * math.log(sigma2) + n + slf)


_BIG = 1e10
_ROOT_MARGIN = 1e-7


# ---------------------------------------------------------------------------
# Fitting


@dataclass
class ArimaFit:
    """A fitted model plus everything needed to predict from it."""

    order: ArimaOrder
    include_const: bool
    const: float
    ar: np.ndarray
    ma: np.ndarray
    sigma2: float
    loglik: float
    aic: float
    bic: float
    hqic: float
    n_obs: int
    se: dict[str, float]
    values: np.ndarray  # the training series (levels, before differencing)
    converged: bool = True

    def param_labels(self) -> list[str]:
        labels = ["const"] if self.include_const else []
        labels += [f"ar.L{i}" for i in range(1, self.order.p + 1)]
        labels += [f"ma.L{i}" for i in range(1, self.order.q + 1)]
        labels.append("sigma2")
        return labels

    def param_values(self) -> list[float]:
        out = [self.const] if self.include_const else []
        out += [float(v) for v in self.ar]
        out += [float(v) for v in self.ma]
        out.append(self.sigma2)
        return out

    def to_dict(self) -> dict:
        return {
            "order": list(self.order.as_tuple()),
            "include_const": self.include_const,
            "const": self.const,
            "ar": [float(v) for v in self.ar],
            "ma": [float(v) for v in self.ma],
            "sigma2": self.sigma2,
            "loglik": self.loglik,
            "aic": self.aic,
            "bic": self.bic,
            "hqic": self.hqic,
            "n_obs": self.n_obs,
            "se": dict(self.se),
            "values": [float(v) for v in self.values],
            "converged": self.converged,
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "ArimaFit":
        return cls(
            order=ArimaOrder(*payload["order"]),
            include_const=payload["include_const"],
            const=payload["const"],
            ar=np.asarray(payload["ar"], dtype=np.float64),
            ma=np.asarray(payload["ma"], dtype=np.float64),
            sigma2=payload["sigma2"],
            loglik=payload["loglik"],
            aic=payload["aic"],
            bic=payload["bic"],
            hqic=payload["hqic"],
            n_obs=payload["n_obs"],
            se=dict(payload["se"]),
            values=np.asarray(payload["values"], dtype=np.float64),
            converged=payload.get("converged", True),
        )


def _hannan_rissanen(w: np.ndarray, p: int, q: int, include_const: bool):
    """Regression-based starting values (long-AR residuals as shock proxies)."""
    mu = float(w.mean()) if include_const else 0.0
    z = w - mu
    n = len(z)
    if p == 0 and q == 0:
        return mu, np.zeros(0), np.zeros(0)
    try:
        if q == 0:
            phi = _ols_ar(z, p)
            theta = np.zeros(0)
        else:
            m = min(max(2 * (p + q), int(round(12.0 * (n / 100.0) ** 0.25))), max(n // 5, p + q + 1))
            long_ar = _ols_ar(z, m)
            resid = np.zeros(n)
            for t in range(m, n):
                resid[t] = z[t] - long_ar @ z[t - m : t][::-1]
            first = m + q
            rows = np.arange(max(first, p), n)
            cols = [z[rows - i] for i in range(1, p + 1)]
            cols += [resid[rows - j] for j in range(1, q + 1)]
            x_mat = np.column_stack(cols) if cols else np.zeros((len(rows), 0))
            beta, *_ = np.linalg.lstsq(x_mat, z[rows], rcond=None)
            phi, theta = beta[:p].copy(), beta[p:].copy()
    except np.linalg.LinAlgError:
        phi, theta = np.zeros(p), np.zeros(q)
    # pull the start strictly inside the stationary/invertible region
    for _ in range(100):
        if ar_roots_stationary(phi, margin=1e-3):
            break
        phi *= 0.95
    else:
        phi = np.zeros(p)
    for _ in range(100):
        if ma_roots_invertible(theta, margin=1e-3):
            break
        theta *= 0.95
    else:
        theta = np.zeros(q)
    return mu, phi, theta


def _ols_ar(z: np.ndarray, order: int) -> np.ndarray:
    rows = np.arange(order, len(z))
    x_mat = np.column_stack([z[rows - i] for i in range(1, order + 1)])
    beta, *_ = np.linalg.lstsq(x_mat, z[rows], rcond=None)
    return beta


def fit_arima(
    values,
    order,
    include_const: bool = True,
    *,
    max_iter: int = 2000,
    tol: float = 1e-8,
) -> ArimaFit:
    """Exact-MLE fit of an ARIMA(p,d,q) (+ mean) to a series.

    Raises :class:`ConvergenceError` (carrying the best fit so far) when
    neither the Nelder-Mead run nor its restart converges within
    ``max_iter`` iterations.
    """
    if not isinstance(order, ArimaOrder):
        order = ArimaOrder(*order)
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1:
        raise ValueError(f"values must be 1-D; got shape {values.shape}")
    if not np.all(np.isfinite(values)):
        raise ValueError("values must be finite")
    p, d, q = order.as_tuple()
    w = difference(values, d)
    n = len(w)
    if n < p + q + 10:
        raise ValueError(
            f"series too short to fit ARIMA{order}: {n} observations after differencing"
        )

    if p == 0 and q == 0:
        # white noise (+ mean): the MLE is closed-form
        mu = float(w.mean()) if include_const else 0.0
        resid = w - mu
        sigma2 = float(np.mean(resid**2))
        loglik = -0.5 * n * (math.log(2.0 * math.pi) + math.log(sigma2) + 1.0)
        return _finish_fit(
            values, order, include_const, mu, np.zeros(0), np.zeros(0), sigma2, loglik, n, True
        )

    mu0, phi0, theta0 = _hannan_rissanen(w, p, q, include_const)
    x0 = _pack(mu0, phi0, theta0, include_const)

    def objective(x):
        mu, phi, theta = _unpack(x, p, q, include_const)
        if not ar_roots_stationary(phi, margin=_ROOT_MARGIN):
            return _BIG
        if not ma_roots_invertible(theta, margin=_ROOT_MARGIN):
            return _BIG
        try:
            return concentrated_negloglik(w - mu, phi, theta)
        except np.linalg.LinAlgError:
            return _BIG

    options = {"maxiter": max_iter, "maxfev": 2 * max_iter, "xatol": tol, "fatol": tol}
    first = minimize(objective, x0, method="Nelder-Mead", options=options)
    second = minimize(objective, first.x, method="Nelder-Mead", options=options)
    best = second if second.fun <= first.fun else first
    converged = bool(first.success or second.success)

    mu, phi, theta = _unpack(best.x, p, q, include_const)
    slf, sv, _, _ = _filter(w - mu, phi, theta)
    sigma2 = float(sv / n)
    loglik = -0.5 * (n * math.log(2.0 * math.pi) + n * math.log(sigma2) + n + slf)
    fit = _finish_fit(values, order, include_const, mu, phi, theta, sigma2, loglik, n, converged)
    if not converged:
        raise ConvergenceError(
            f"ARIMA{order} optimizer did not converge within {max_iter} iterations",
            best_fit=fit,
        )
    return fit


def _pack(mu, phi, theta, include_const):
    parts = [np.atleast_1d(phi), np.atleast_1d(theta)]
    if include_const:
        parts.insert(0, np.array([mu]))
    return np.concatenate(parts) if parts else np.zeros(0)


def _unpack(x, p, q, include_const):
    offset = 1 if include_const else 0
    mu = float(x[0]) if include_const else 0.0
    phi = np.asarray(x[offset : offset + p], dtype=np.float64)
    theta = np.asarray(x[offset + p : offset + p + q], dtype=np.float64)
    return mu, phi, theta


def _finish_fit(values, order, include_const, mu, phi, theta, sigma2, loglik, n, converged):
    k = order.p + order.q + (1 if include_const else 0) + 1
    aic, bic, hqic = information_criteria(loglik, k, n)
    fit = ArimaFit(
        order=order,
        include_const=include_const,
        const=float(mu),
        ar=np.asarray(phi, dtype=np.float64),
        ma=np.asarray(theta, dtype=np.float64),
        sigma2=float(sigma2),
        loglik=float(loglik),
        aic=float(aic),
        bic=float(bic),
        hqic=float(hqic),
        n_obs=int(n),
        se={},
        values=np.asarray(values, dtype=np.float64),
        converged=converged,
    )
    fit.se = _standard_errors(fit)
    return fit


def _standard_errors(fit: ArimaFit) -> dict[str, float]:
    """Asymptotic standard errors from a central-difference Hessian of the full loglik."""
    w = difference(fit.values, fit.order.d)
    n = len(w)
    p, q = fit.order.p, fit.order.q
    include_const = fit.include_const

    def negll_full(ext):
        mu, phi, theta = _unpack(ext[:-1], p, q, include_const)
        s2 = float(ext[-1])
        if s2 <= 0:
            return _BIG
        if not ar_roots_stationary(phi, margin=_ROOT_MARGIN):
            return _BIG
        if not ma_roots_invertible(theta, margin=_ROOT_MARGIN):
            return _BIG
        try:
            slf, sv, _, _ = _filter(w - mu, phi, theta)
        except np.linalg.LinAlgError:
            return _BIG
        return 0.5 * (n * math.log(2.0 * math.pi) + n * math.log(s2) + slf + sv / s2)

    x = np.array(
        _pack(fit.const, fit.ar, fit.ma, include_const).tolist() + [fit.sigma2]
    )
    labels = fit.param_labels()
    dim = len(x)
    steps = np.maximum(np.abs(x), 0.01) * 1e-4
    hess = np.empty((dim, dim))
    base = negll_full(x)
    for i in range(dim):
        for j in range(i, dim):
            hi, hj = steps[i], steps[j]
            if i == j:
                f_plus = negll_full(_bump(x, i, hi))
                f_minus = negll_full(_bump(x, i, -hi))
                hess[i, i] = (f_plus - 2.0 * base + f_minus) / (hi * hi)
            else:
                fpp = negll_full(_bump(_bump(x, i, hi), j, hj))
                fpm = negll_full(_bump(_bump(x, i, hi), j, -hj))
                fmp = negll_full(_bump(_bump(x, i, -hi), j, hj))
                fmm = negll_full(_bump(_bump(x, i, -hi), j, -hj))
                hess[i, j] = hess[j, i] = (fpp - fpm - fmp + fmm) / (4.0 * hi * hj)
    se = {}
    try:
        cov = np.linalg.inv(hess)
        diag = np.diag(cov)
        for label, var in zip(labels, diag):
            se[label] = float(np.sqrt(var)) if var > 0 else float("nan")
    except np.linalg.LinAlgError:
        se = {label: float("nan") for label in labels}
    return se


def _bump(x, i, delta):
    out = x.copy()
    out[i] += delta
    return out


# ---------------------------------------------------------------------------
# Prediction, forecasting, simulation


def one_step_predictions(fit: ArimaFit, values=None) -> np.ndarray:
    """One-step-ahead conditional means, aligned with ``values``.

    Entry ``t`` is ``E[y_t | y_0..y_{t-1}]`` under the fitted parameters;
    each prediction only sees data strictly before its own time step. The
    first ``d`` entries are NaN (differencing consumes them). Defaults to
    the training series.
    """
    series = fit.values if values is None else np.asarray(values, dtype=np.float64)
    d = fit.order.d
    w = difference(series, d)
    _, _, preds, _ = _filter(w - fit.const, fit.ar, fit.ma)
    w_hat = preds + fit.const
    if d == 0:
        return w_hat
    out = np.full(len(series), np.nan)
    # y_t = w_t - sum_j c_j y_{t-j} with c_j the binomial coefficients of (1-B)^d
    coeffs = [math.comb(d, j) * (-1.0) ** j for j in range(1, d + 1)]
    for idx in range(d, len(series)):
        acc = w_hat[idx - d]
        for j, c in enumerate(coeffs, start=1):
            acc -= c * series[idx - j]
        out[idx] = acc
    return out


def psi_weights(ar, ma, d: int, horizon: int) -> np.ndarray:
    """First ``horizon`` MA-infinity weights of the (possibly integrated) process."""
    ar = np.atleast_1d(np.asarray(ar, dtype=np.float64))
    ma = np.atleast_1d(np.asarray(ma, dtype=np.float64))
    # fold the d differences into the AR polynomial: phi*(B) = phi(B) (1-B)^d
    ar_poly = np.concatenate([[1.0], -ar])
    for _ in range(d):
        ar_poly = np.polymul(ar_poly, [1.0, -1.0])
    phi_star = -ar_poly[1:]
    psi = np.zeros(horizon)
    if horizon == 0:
        return psi
    psi[0] = 1.0
    for j in range(1, horizon):
        acc = ma[j - 1] if j - 1 < len(ma) else 0.0
        for i in range(1, min(j, len(phi_star)) + 1):
            acc += phi_star[i - 1] * psi[j - i]
        psi[j] = acc
    return psi


def forecast_out(fit: ArimaFit, horizon: int) -> tuple[np.ndarray, np.ndarray]:
    """Mean forecasts and forecast variances ``1..horizon`` steps past the sample.

    Means iterate the state recursion (decaying toward the constant);
    variances follow ``sigma2 * sum_{j<h} psi_j^2`` from the psi-weight
    recursion, with the ``d`` differences folded into the AR polynomial.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1; got {horizon}")
    d = fit.order.d
    w = difference(fit.values, d)
    T, _ = build_state_space(fit.ar, fit.ma)
    _, _, _, state = _filter(w - fit.const, fit.ar, fit.ma)
    w_means = np.empty(horizon)
    for h in range(horizon):
        w_means[h] = state[0] + fit.const
        state = T @ state
    if d == 0:
        means = w_means
    else:
        # integrate the differenced forecasts back onto the level scale
        history = list(fit.values[-d:]) if d > 0 else []
        coeffs = [math.comb(d, j) * (-1.0) ** j for j in range(1, d + 1)]
        means = np.empty(horizon)
        for h in range(horizon):
            acc = w_means[h]
            for j, c in enumerate(coeffs, start=1):
                acc -= c * history[-j]
            means[h] = acc
            history.append(acc)
    psi = psi_weights(fit.ar, fit.ma, d, horizon)
    variances = fit.sigma2 * np.cumsum(psi**2)
    return means, variances


def simulate_arma(
    n: int,
    ar=(),
    ma=(),
    const: float = 0.0,
    sigma2: float = 1.0,
    seed: int = 0,
    burn_in: int = 500,
) -> np.ndarray:
    """Draw a stationary ARMA series with mean ``const`` (Gaussian shocks).

    The recursion starts from zeros and discards ``burn_in`` warm-up draws
    so the returned block is effectively a draw from the stationary law.
    """
    ar = np.atleast_1d(np.asarray(ar, dtype=np.float64))
    ma = np.atleast_1d(np.asarray(ma, dtype=np.float64))
    if n < 1:
        raise ValueError(f"n must be >= 1; got {n}")
    if sigma2 <= 0:
        raise ValueError(f"sigma2 must be > 0; got {sigma2}")
    if not ar_roots_stationary(ar):
        raise ValueError(f"AR coefficients {ar.tolist()} are not stationary")
    if not ma_roots_invertible(ma):
        raise ValueError(f"MA coefficients {ma.tolist()} are not invertible")
    rng = np.random.default_rng(seed)
    total = n + burn_in
    shocks = rng.normal(0.0, math.sqrt(sigma2), size=total)
    z = np.zeros(total)
    p, q = len(ar), len(ma)
    for t in range(total):
        acc = shocks[t]
        for i in range(1, min(t, p) + 1):
            acc += ar[i - 1] * z[t - i]
        for j in range(1, min(t, q) + 1):
            acc += ma[j - 1] * shocks[t - j]
        z[t] = acc
    return z[burn_in:] + const


def render_fit_summary(fit: ArimaFit) -> str:
    """Coefficient table plus likelihood and information criteria, as text."""
    order = fit.order
    title = f"ARIMA{order}{' with constant' if fit.include_const else ''} fit"
    lines = [
        title,
        "=" * 64,
        f"No. Observations: {fit.n_obs:>10d}    Log Likelihood: {fit.loglik:>12.3f}",
        f"AIC: {fit.aic:>12.3f}    BIC: {fit.bic:>12.3f}    HQIC: {fit.hqic:>12.3f}",
        "-" * 64,
        f"{'':<10}{'coef':>12}{'std err':>12}{'z':>10}{'P>|z|':>10}",
    ]
    for label, value in zip(fit.param_labels(), fit.param_values()):
        se = fit.se.get(label, float("nan"))
        if se and np.isfinite(se) and se > 0:
            z = value / se
            p_val = 2.0 * (1.0 - norm.cdf(abs(z)))
            lines.append(f"{label:<10}{value:>12.4f}{se:>12.3f}{z:>10.3f}{p_val:>10.3f}")
        else:
            lines.append(f"{label:<10}{value:>12.4f}{'nan':>12}{'':>10}{'':>10}")
    lines.append("=" * 64)
    return "\n".join(lines)
