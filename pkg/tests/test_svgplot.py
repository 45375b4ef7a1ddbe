"""SVG chart writer: well-formed output, one polyline per series, legend
and labels, determinism, and input validation."""

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from loadcast.svgplot import emit_plot, line_plot_svg

_SVG_NS = "{http://www.w3.org/2000/svg}"


def _parse(svg_text: str) -> ET.Element:
    return ET.fromstring(svg_text)


def _polylines(root: ET.Element):
    return root.findall(f".//{_SVG_NS}polyline")


def _texts(root: ET.Element):
    return [el.text for el in root.findall(f".//{_SVG_NS}text")]


def test_one_polyline_per_series():
    svg = line_plot_svg(
        {"actual": np.sin(np.linspace(0, 6, 50)), "predicted": np.cos(np.linspace(0, 6, 50))},
        title="demo",
        x_label="hour",
        y_label="load",
    )
    root = _parse(svg)
    lines = _polylines(root)
    assert len(lines) == 2
    assert {ln.get("stroke") for ln in lines} == {"#1f77b4", "#ff7f0e"}
    texts = _texts(root)
    for expected in ("demo", "hour", "load", "actual", "predicted"):
        assert expected in texts


def test_output_is_deterministic():
    series = {"a": np.linspace(0, 1, 20), "b": np.linspace(1, 0, 20)}
    assert line_plot_svg(series, title="t") == line_plot_svg(series, title="t")


def test_flat_series_renders():
    svg = line_plot_svg({"flat": np.full(10, 2.0)})
    root = _parse(svg)
    assert len(_polylines(root)) == 1
    # the y-axis opens a band around the constant
    assert "1.5" in svg and "2.5" in svg


def test_single_point_series_renders():
    root = _parse(line_plot_svg({"dot": np.array([1.0])}))
    assert len(_polylines(root)) == 1


def test_accepts_column_vectors():
    root = _parse(line_plot_svg({"col": np.arange(5.0).reshape(5, 1)}))
    assert len(_polylines(root)) == 1


def test_names_and_title_are_escaped():
    svg = line_plot_svg({"a<b": np.arange(3.0)}, title="x & y")
    assert "a&lt;b" in svg
    assert "x &amp; y" in svg
    _parse(svg)  # must stay well-formed


def test_validation():
    with pytest.raises(ValueError, match="at least one"):
        line_plot_svg({})
    with pytest.raises(ValueError, match="empty"):
        line_plot_svg({"x": np.array([])})
    with pytest.raises(ValueError, match="finite"):
        line_plot_svg({"x": np.array([1.0, np.nan])})
    with pytest.raises(ValueError, match="vector"):
        line_plot_svg({"x": np.ones((3, 2))})


def test_emit_plot_writes_file(tmp_path):
    path = tmp_path / "chart.svg"
    emit_plot(np.arange(10.0), np.arange(10.0) + 0.5, "fit", path)
    text = path.read_text(encoding="utf-8")
    root = _parse(text)
    assert len(_polylines(root)) == 2
    assert "fit" in _texts(root)


def test_emit_plot_identical_series_yields_coincident_polylines(tmp_path):
    path = tmp_path / "same.svg"
    values = np.sin(np.linspace(0, 3, 30))
    emit_plot(values, values, "same", path)
    lines = _polylines(_parse(path.read_text(encoding="utf-8")))
    assert lines[0].get("points") == lines[1].get("points")


def test_emit_plot_validation(tmp_path):
    with pytest.raises(ValueError, match="lengths differ"):
        emit_plot(np.arange(3.0), np.arange(4.0), "bad", tmp_path / "x.svg")
    with pytest.raises(ValueError, match="empty"):
        emit_plot(np.array([]), np.array([]), "bad", tmp_path / "x.svg")
    with pytest.raises(OSError):
        emit_plot(np.arange(3.0), np.arange(3.0), "bad", tmp_path / "missing" / "x.svg")
