from xml.etree import ElementTree

import pytest
from hypothesis import given, settings

from conftest import generic_points
from polarity_lab.errors import UnsupportedDimension
from polarity_lab.figures import FIGURES, FigureStyle, default_ruler_input, render_figure, trace_from_svg
from polarity_lab.harmonic_polarity import fourth_harmonic, harmonic_points, harmonic_polar_point, replay
from polarity_lab.projective_core import ProjPoint, Simplex

STD2 = Simplex.standard(2)
SVG = "{http://www.w3.org/2000/svg}"


@pytest.mark.parametrize("which", FIGURES)
def test_figures_are_valid_deterministic_svg(which):
    p = ProjPoint((1, 2, 3))
    a = render_figure(which, p, STD2)
    b = render_figure(which, p, STD2)
    assert a == b
    root = ElementTree.fromstring(a)
    assert root.tag == f"{SVG}svg" and root.get("version") == "1.1"
    assert root.find(f"{SVG}metadata") is not None


@settings(max_examples=10)
@given(generic_points(STD2))
def test_embedded_traces_replay(p):
    assert replay(trace_from_svg(render_figure("harmonic", p, STD2))) == harmonic_polar_point(p, STD2)
    _, uprimes = harmonic_points(p, STD2)
    assert replay(trace_from_svg(render_figure("ruler", p, STD2))) == uprimes[0]


def test_harmonic_figure_labels_the_harmonic_points():
    svg = render_figure("harmonic", ProjPoint((1, 1, 1)), STD2)
    labels = [t.text for t in ElementTree.fromstring(svg).iter(f"{SVG}text")]
    for name in ("p1", "p2", "p3", "p", "u1", "u2", "u3"):
        assert name in labels
    # at the centroid of the equilateral chart the u'_i are at infinity
    assert svg.count("lies outside the drawing") == 3


def test_harmonic_figure_places_u_prime_for_a_generic_point():
    svg = render_figure("harmonic", ProjPoint((1, 5, 2)), STD2)
    labels = [t.text for t in ElementTree.fromstring(svg).iter(f"{SVG}text")]
    assert {"u'1", "u'3"} <= set(labels)


def test_ruler_figure_numbers_four_lines():
    svg = render_figure("ruler", ProjPoint((1, 2, 3)), STD2)
    root = ElementTree.fromstring(svg)
    notes = sorted(t.text for t in root.iter(f"{SVG}text") if t.get("class") == "note")
    assert notes == ["1", "2", "3", "4"]
    a, b, c, m, n = default_ruler_input(ProjPoint((1, 2, 3)), STD2)
    assert replay(trace_from_svg(svg)) == fourth_harmonic(a, b, c)


def test_circumconic_figure_in_the_equilateral_chart_is_the_circumcircle():
    svg = render_figure("circumconic", ProjPoint((1, 1, 1)), STD2)
    root = ElementTree.fromstring(svg)
    polylines = list(root.iter(f"{SVG}polyline"))
    assert polylines
    size, scale = FigureStyle.size, FigureStyle.scale
    for pl in polylines:
        for pair in pl.get("points").split():
            x, y = (float(v) for v in pair.split(","))
            r = ((x - size / 2) ** 2 + (y - size / 2) ** 2) ** 0.5 / scale
            assert r == pytest.approx(1.0, abs=1e-2)
    assert "CONIC" in root.find(f"{SVG}metadata").text


def test_figures_need_the_plane():
    with pytest.raises(UnsupportedDimension):
        render_figure("harmonic", ProjPoint((1, 1, 1, 1)), Simplex.standard(3))
    with pytest.raises(ValueError):
        render_figure("mandala", ProjPoint((1, 1, 1)), STD2)
