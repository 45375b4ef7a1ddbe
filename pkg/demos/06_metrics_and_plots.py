#!/usr/bin/env python3
"""Score forecasts with the five-metric report and draw SVG charts.

Every model in the workbench is judged by the same report — MSE, RMSE,
R-squared, MAE, and MAPE — and the reports line up side by side in a
comparison table that renders as text, CSV, or JSON. Charts are written
as self-contained SVG files with no plotting dependency.
"""

from pathlib import Path

import numpy as np

from loadcast.evaluation import compare_models, evaluate
from loadcast.svgplot import emit_plot, line_plot_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# --- one report ------------------------------------------------------------
# A tiny example small enough to verify by hand: absolute errors 0.1 and
# 0.2 give MAE 0.15; relative errors 10% at both points give MAPE 0.10.
actual = np.array([1.0, 2.0])
predicted = np.array([1.1, 1.8])
report = evaluate(predicted, actual)
print(f"MAE {report.mae:.4f}  MAPE {report.mape:.4f}  "
      f"MSE {report.mse:.4f}  R^2 {report.r2:.4f}")
assert abs(report.mae - 0.15) < 1e-12
assert abs(report.mape - 0.10) < 1e-12

# MAPE is reported as a fraction (0.10 above means 10%) and guards
# near-zero actuals with a floor so a single dead reading cannot blow
# the metric up to infinity.

# --- the comparison table ----------------------------------------------------
# Score three synthetic "models" of decreasing quality on one target.
rng = np.random.default_rng(0)
target = np.abs(rng.normal(1.0, 0.4, size=200))
reports = {
    name: evaluate(target + rng.normal(0.0, sigma, size=200), target)
    for name, sigma in (("sharp", 0.05), ("decent", 0.15), ("noisy", 0.6))
}
table = compare_models(reports)
print()
print(table.to_text())

# The same table serializes for machines; JSON keys are sorted so equal
# tables produce byte-identical documents.
(OUT / "table.json").write_text(table.to_json(), encoding="utf-8")
(OUT / "table.csv").write_text(table.to_csv(), encoding="utf-8")
print(f"\nwrote {OUT / 'table.json'} and {OUT / 'table.csv'}")

# Reports over different sample counts are still rendered, but the table
# flags the comparison so nobody reads it as apples-to-apples.
uneven = dict(reports)
uneven["short"] = evaluate(target[:50], target[:50] * 1.01)
flagged = compare_models(uneven)
print("\nnote attached to an uneven table:", flagged.comparability_note)

# --- charts ------------------------------------------------------------------
# emit_plot is the two-line convenience for actual-vs-predicted overlays.
hours = 72
curve = 1.0 + 0.8 * np.sin(np.arange(hours) * 2 * np.pi / 24)
noisy = curve + rng.normal(0.0, 0.15, size=hours)
emit_plot(curve, noisy, "three days, actual vs predicted", OUT / "overlay.svg")
print(f"wrote {OUT / 'overlay.svg'}")

# line_plot_svg takes any number of named series for custom charts.
svg = line_plot_svg(
    {"truth": curve, "model A": noisy, "model B": curve * 0.9},
    title="several series on one chart",
    x_label="hour",
    y_label="load (kWh)",
)
(OUT / "multi.svg").write_text(svg, encoding="utf-8")
print(f"wrote {OUT / 'multi.svg'}")
