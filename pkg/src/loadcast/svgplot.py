"""Minimal static line charts written directly as SVG.

The workbench only needs polylines, axes, tick labels, a title, and a
legend, so charts are emitted as self-contained SVG text with no plotting
dependency. Coordinates are formatted at fixed precision, making the
output byte-deterministic for identical inputs.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

_WIDTH = 960
_HEIGHT = 480
_MARGIN_LEFT = 72
_MARGIN_RIGHT = 24
_MARGIN_TOP = 44
_MARGIN_BOTTOM = 52
_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b")
_N_TICKS = 5


def _as_plot_vector(values, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64)
    if array.ndim == 2 and array.shape[1] == 1:
        array = array[:, 0]
    if array.ndim != 1:
        raise ValueError(f"series {name!r} must be a vector; got shape {array.shape}")
    if len(array) == 0:
        raise ValueError(f"series {name!r} is empty")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"series {name!r} must be finite")
    return array


def line_plot_svg(
    series: dict[str, np.ndarray],
    *,
    title: str = "",
    x_label: str = "",
    y_label: str = "",
) -> str:
    """Render named series as one chart; returns the SVG document text."""
    if not series:
        raise ValueError("need at least one series to plot")
    vectors = {name: _as_plot_vector(vals, name) for name, vals in series.items()}

    x_max = max(len(v) for v in vectors.values()) - 1
    y_min = min(float(v.min()) for v in vectors.values())
    y_max = max(float(v.max()) for v in vectors.values())
    if y_min == y_max:  # flat data still needs a non-degenerate axis
        y_min -= 0.5
        y_max += 0.5
    span_x = max(x_max, 1)
    span_y = y_max - y_min

    plot_w = _WIDTH - _MARGIN_LEFT - _MARGIN_RIGHT
    plot_h = _HEIGHT - _MARGIN_TOP - _MARGIN_BOTTOM

    def px(i: float) -> float:
        return _MARGIN_LEFT + plot_w * (i / span_x)

    def py(v: float) -> float:
        return _MARGIN_TOP + plot_h * (1.0 - (v - y_min) / span_y)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_WIDTH / 2:.1f}" y="24" text-anchor="middle" '
            f'font-size="16">{escape(title)}</text>'
        )

    # gridlines and tick labels
    for tick in np.linspace(y_min, y_max, _N_TICKS):
        y = py(float(tick))
        parts.append(
            f'<line x1="{_MARGIN_LEFT}" y1="{y:.2f}" x2="{_WIDTH - _MARGIN_RIGHT}" '
            f'y2="{y:.2f}" stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11">{tick:.4g}</text>'
        )
    for tick in np.linspace(0, x_max, _N_TICKS):
        x = px(float(tick))
        parts.append(
            f'<text x="{x:.2f}" y="{_HEIGHT - _MARGIN_BOTTOM + 18}" text-anchor="middle" '
            f'font-size="11">{int(round(tick))}</text>'
        )

    # axes
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_MARGIN_TOP}" x2="{_MARGIN_LEFT}" '
        f'y2="{_HEIGHT - _MARGIN_BOTTOM}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_MARGIN_LEFT}" y1="{_HEIGHT - _MARGIN_BOTTOM}" '
        f'x2="{_WIDTH - _MARGIN_RIGHT}" y2="{_HEIGHT - _MARGIN_BOTTOM}" '
        f'stroke="black" stroke-width="1"/>'
    )
    if x_label:
        parts.append(
            f'<text x="{_WIDTH / 2:.1f}" y="{_HEIGHT - 12}" text-anchor="middle" '
            f'font-size="12">{escape(x_label)}</text>'
        )
    if y_label:
        parts.append(
            f'<text x="18" y="{_HEIGHT / 2:.1f}" text-anchor="middle" font-size="12" '
            f'transform="rotate(-90 18 {_HEIGHT / 2:.1f})">{escape(y_label)}</text>'
        )

    # data polylines (single points degrade to a dot-sized line)
    for color, (name, vals) in zip(_COLORS, vectors.items()):
        if len(vals) == 1:
            points = f"{px(0):.2f},{py(float(vals[0])):.2f} {px(0) + 1:.2f},{py(float(vals[0])):.2f}"
        else:
            points = " ".join(
                f"{px(i):.2f},{py(float(v)):.2f}" for i, v in enumerate(vals)
            )
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.3" points="{points}"/>'
        )

    # legend, top-right inside the plot area
    legend_x = _WIDTH - _MARGIN_RIGHT - 160
    legend_y = _MARGIN_TOP + 10
    for row, (color, name) in enumerate(zip(_COLORS, vectors)):
        y = legend_y + 18 * row
        parts.append(
            f'<line x1="{legend_x}" y1="{y}" x2="{legend_x + 24}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(
            f'<text x="{legend_x + 30}" y="{y + 4}" font-size="12">{escape(name)}</text>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_plot(actual, predicted, title: str, path) -> None:
    """Write an actual-vs-predicted chart to ``path`` as SVG."""
    actual = _as_plot_vector(actual, "actual")
    predicted = _as_plot_vector(predicted, "predicted")
    if len(actual) != len(predicted):
        raise ValueError(
            f"actual and predicted lengths differ: {len(actual)} vs {len(predicted)}"
        )
    text = line_plot_svg(
        {"actual": actual, "predicted": predicted},
        title=title,
        x_label="hour",
        y_label="load",
    )
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
