"""Stepwise ARIMA order selection (Hyndman-Khandakar style).

``d`` comes first, by repeated unit-root testing: difference until the ADF
test rejects at 5%, capped at d = 2. The (p, q) search then fits the four
standard starting models, moves to the best, and keeps trying +-1
perturbations of p and q (including diagonal moves) plus a constant
toggle, adopting the first neighbor that improves AIC; it stops when no
neighbor improves or the fit budget is exhausted. Every attempted fit
lands in the trace, failures included.

Candidates whose fitted AR or MA roots fall within 1% of the unit circle
are rejected (AIC treated as infinite). Without this rule an
over-parameterized candidate on near-white data can fake a likelihood
gain by pushing a canceling AR/MA root pair onto the unit circle.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConvergenceError
from .adf import adf_test
from .model import (
    ArimaFit,
    ArimaOrder,
    ar_roots_stationary,
    difference,
    fit_arima,
    ma_roots_invertible,
)

# minimum distance of fitted roots from the unit circle for a candidate
# to count as a usable model
_ROOT_REJECT_MARGIN = 0.01


def _roots_admissible(fit: ArimaFit) -> bool:
    return ar_roots_stationary(fit.ar, margin=_ROOT_REJECT_MARGIN) and ma_roots_invertible(
        fit.ma, margin=_ROOT_REJECT_MARGIN
    )


def choose_d(values, alpha: float = 0.05, max_d: int = 2) -> int:
    """Difference until the ADF test rejects the unit root at ``alpha``."""
    values = np.asarray(values, dtype=np.float64)
    d = 0
    while d < max_d:
        if adf_test(difference(values, d)).p_value < alpha:
            break
        d += 1
    return d


@dataclass(frozen=True)
class TraceEntry:
    order: ArimaOrder
    with_const: bool
    aic: float  # inf when the fit failed
    seconds: float
    message: str = ""

    @property
    def failed(self) -> bool:
        return not np.isfinite(self.aic)


@dataclass
class SearchResult:
    best_order: ArimaOrder
    best_with_const: bool
    best_aic: float
    best_fit: ArimaFit
    d: int
    trace: list[TraceEntry] = field(default_factory=list)
    total_seconds: float = 0.0
    exhausted_budget: bool = False


# starting corner of the (p, q) search, in the order they are tried
_STARTS = ((2, 2), (0, 0), (1, 0), (0, 1))
# neighbor perturbations: single steps first, then diagonals
_MOVES = ((0, -1), (0, 1), (-1, 0), (1, 0), (-1, -1), (-1, 1), (1, -1), (1, 1))


def stepwise_search(
    values,
    *,
    d: int | None = None,
    max_p: int = 5,
    max_q: int = 5,
    max_fits: int = 25,
) -> SearchResult:
    """Search (p, q, constant) by AIC; returns the best fit plus the full trace."""
    values = np.asarray(values, dtype=np.float64)
    if max_fits < 1:
        raise ValueError(f"max_fits must be >= 1; got {max_fits}")
    if d is None:
        d = choose_d(values)
    started = time.perf_counter()
    trace: list[TraceEntry] = []
    fits: dict[tuple[int, int, bool], ArimaFit | None] = {}

    def attempt(p: int, q: int, with_const: bool):
        key = (p, q, with_const)
        if key in fits or len(fits) >= max_fits:
            return
        tic = time.perf_counter()
        try:
            fit = fit_arima(values, ArimaOrder(p, d, q), include_const=with_const)
            if _roots_admissible(fit):
                entry = TraceEntry(
                    ArimaOrder(p, d, q), with_const, fit.aic, time.perf_counter() - tic
                )
            else:
                fit = None
                entry = TraceEntry(
                    ArimaOrder(p, d, q),
                    with_const,
                    float("inf"),
                    time.perf_counter() - tic,
                    message="fitted roots within 1% of the unit circle",
                )
        except ConvergenceError as exc:
            fit = None
            entry = TraceEntry(
                ArimaOrder(p, d, q),
                with_const,
                float("inf"),
                time.perf_counter() - tic,
                message=str(exc),
            )
        except (ValueError, np.linalg.LinAlgError) as exc:
            fit = None
            entry = TraceEntry(
                ArimaOrder(p, d, q),
                with_const,
                float("inf"),
                time.perf_counter() - tic,
                message=str(exc),
            )
        fits[key] = fit
        trace.append(entry)

    def best_key():
        finite = [
            (fit.aic, key) for key, fit in fits.items() if fit is not None
        ]
        if not finite:
            return None
        return min(finite)[1]

    for p, q in _STARTS:
        if p <= max_p and q <= max_q:
            attempt(p, q, True)
    if best_key() is None:
        # constant-free fallback corner, then give up if nothing fits
        attempt(0, 0, False)
        if best_key() is None:
            raise ConvergenceError("no candidate ARIMA order could be fitted")

    current = best_key()
    improved = True
    while improved and len(fits) < max_fits:
        improved = False
        p, q, with_const = current
        current_aic = fits[current].aic
        candidates = [
            (p + dp, q + dq, with_const)
            for dp, dq in _MOVES
            if 0 <= p + dp <= max_p and 0 <= q + dq <= max_q
        ]
        candidates.append((p, q, not with_const))
        for cand in candidates:
            if cand in fits:
                continue
            attempt(*cand)
            fit = fits.get(cand)
            if fit is not None and fit.aic < current_aic:
                current = cand
                improved = True
                break
            if len(fits) >= max_fits:
                break

    best = best_key()
    best_fit = fits[best]
    return SearchResult(
        best_order=best_fit.order,
        best_with_const=best[2],
        best_aic=best_fit.aic,
        best_fit=best_fit,
        d=d,
        trace=trace,
        total_seconds=time.perf_counter() - started,
        exhausted_budget=len(fits) >= max_fits,
    )


def render_trace(result: SearchResult) -> str:
    """Stepwise listing in the conventional one-line-per-fit layout."""
    lines = ["Performing stepwise search to minimize aic"]
    for entry in result.trace:
        p, d, q = entry.order.as_tuple()
        name = f" ARIMA({p},{d},{q})(0,0,0)[0]{' intercept' if entry.with_const else ''}"
        aic_text = "inf" if entry.failed else f"{entry.aic:.3f}"
        lines.append(f"{name:<36}: AIC={aic_text}, Time={entry.seconds:.2f} sec")
    p, d, q = result.best_order.as_tuple()
    lines.append("")
    lines.append(
        f"Best model:  ARIMA({p},{d},{q})(0,0,0)[0]"
        f"{' intercept' if result.best_with_const else ''}"
    )
    lines.append(f"Total fit time: {result.total_seconds:.3f} seconds")
    return "\n".join(lines)
