"""Deterministic SVG figures of the planar constructions.

Points are drawn in an equilateral chart: a point with simplex coordinates
(x1, x2, x3) goes to sum x_i e_i / sum x_i, where e_i are the unit vectors
at angles 90°, 210°, 330°. All numbers are printed with fixed precision, so
identical input gives byte-identical files. The construction trace is
embedded in ``<metadata>`` and can be replayed with
:func:`polarity_lab.harmonic_polarity.replay`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .algebraic_polarity import first_polar
from .errors import UnsupportedDimension
from .harmonic_polarity import harmonic_points, harmonic_trace, ruler_trace
from .projective_core import ProjHyperplane, ProjPoint, Simplex

FIGURES = ("harmonic", "ruler", "circumconic")


@dataclass(frozen=True)
class FigureStyle:
    size: int = 480
    scale: float = 90.0  # pixels per chart unit
    extent: float = 2.5  # half-width of the clipping box, chart units
    conic_samples: int = 720


_ANGLES = (math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3)
_CHART = [[math.cos(a) for a in _ANGLES], [math.sin(a) for a in _ANGLES], [1.0, 1.0, 1.0]]


_CHART_INV_T = np.linalg.inv(np.array(_CHART)).T


class _Canvas:
    def __init__(self, simplex: Simplex, style: FigureStyle):
        if simplex.n != 2:
            raise UnsupportedDimension("figures are planar")
        self.simplex = simplex
        self.style = style
        self.items: list[str] = []

    # coordinates -------------------------------------------------------
    def chart(self, p: ProjPoint):
        x = [float(v) for v in self.simplex.coordinates(p)]
        w = sum(x)
        if abs(w) < 1e-12 * max(abs(v) for v in x):
            return None
        return tuple(sum(_CHART[r][i] * x[i] for i in range(3)) / w for r in range(2))

    def px(self, xy):
        s = self.style
        return (s.size / 2 + s.scale * xy[0], s.size / 2 - s.scale * xy[1])

    def line_segment(self, h: ProjHyperplane):
        """Clip a line to the drawing box; None if it misses the box."""
        c = [float(v) for v in self.simplex.hyperplane_coordinates(h)]
        a, b, d = (float(v) for v in _CHART_INV_T @ c)
        e = self.style.extent
        pts = []
        if abs(b) > 1e-12:
            for x in (-e, e):
                y = -(a * x + d) / b
                if -e - 1e-9 <= y <= e + 1e-9:
                    pts.append((x, y))
        if abs(a) > 1e-12:
            for y in (-e, e):
                x = -(b * y + d) / a
                if -e - 1e-9 <= x <= e + 1e-9:
                    pts.append((x, y))
        pts = sorted(set((round(x, 9), round(y, 9)) for x, y in pts))
        if len(pts) < 2:
            return None
        return pts[0], pts[-1]

    # drawing -----------------------------------------------------------
    def line(self, h, label=None, cls="line", note=None):
        seg = self.line_segment(h)
        if seg is None:
            return
        (x0, y0), (x1, y1) = (self.px(q) for q in seg)
        self.items.append(
            f'<line class="{cls}" x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}"'
            + (f' data-label="{escape(label)}"' if label else "")
            + "/>"
        )
        if note is not None:
            mx, my = (x0 + x1) / 2, (y0 + y1) / 2
            self.items.append(f'<text class="note" x="{mx:.3f}" y="{my:.3f}">{escape(str(note))}</text>')

    def segment(self, p: ProjPoint, q: ProjPoint, cls="edge"):
        a, b = self.chart(p), self.chart(q)
        if a is None or b is None:
            return
        (x0, y0), (x1, y1) = self.px(a), self.px(b)
        self.items.append(f'<line class="{cls}" x1="{x0:.3f}" y1="{y0:.3f}" x2="{x1:.3f}" y2="{y1:.3f}"/>')

    def point(self, p: ProjPoint, label: str):
        xy = self.chart(p)
        e = self.style.extent
        if xy is None or abs(xy[0]) > e or abs(xy[1]) > e:
            self.items.append(f"<!-- {escape(label)} = {escape(str(p))} lies outside the drawing -->")
            return
        x, y = self.px(xy)
        self.items.append(f'<circle class="pt" cx="{x:.3f}" cy="{y:.3f}" r="3"/>')
        self.items.append(f'<text class="lbl" x="{x + 5:.3f}" y="{y - 5:.3f}">{escape(label)}</text>')

    def polyline(self, runs: Sequence[Sequence[tuple]], cls="conic"):
        for run in runs:
            if len(run) < 2:
                continue
            pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in (self.px(q) for q in run))
            self.items.append(f'<polyline class="{cls}" points="{pts}"/>')

    def render(self, title: str, trace_text: str) -> str:
        s = self.style.size
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">',
            f"<title>{escape(title)}</title>",
            "<metadata>",
            escape(trace_text).rstrip("\n"),
            "</metadata>",
            "<style>"
            ".edge{stroke:#000;stroke-width:1.5}"
            ".line{stroke:#456;stroke-width:0.8}"
            ".polar{stroke:#b22;stroke-width:1.4}"
            ".aux{stroke:#888;stroke-width:0.8;stroke-dasharray:4 3}"
            ".conic{fill:none;stroke:#26a;stroke-width:1.2}"
            ".pt{fill:#000}.lbl,.note{font:12px sans-serif}.note{fill:#b22}"
            "</style>",
            f'<rect width="{s}" height="{s}" fill="#fff"/>',
        ]
        return "\n".join(head + self.items + ["</svg>"]) + "\n"


def _triangle(canvas: _Canvas):
    v = canvas.simplex.vertices
    for i in range(3):
        canvas.segment(v[i], v[(i + 1) % 3])
    for i in range(3):
        canvas.point(v[i], f"p{i + 1}")


def harmonic_figure(p: ProjPoint, simplex: Simplex, style: FigureStyle = FigureStyle()) -> str:
    """Triangle, cevians (p_i p), feet u_i, harmonic points u'_i and the polar p#."""
    canvas = _Canvas(simplex, style)
    trace = harmonic_trace(p, simplex)
    us, uprimes = harmonic_points(p, simplex)
    for i in range(3):
        canvas.line(trace[f"D{i + 1}"], f"D{i + 1}")
        canvas.line(trace[f"P{i + 1}"], f"P{i + 1}", cls="aux")
    canvas.line(trace.value, "polar", cls="polar")
    _triangle(canvas)
    canvas.point(p, "p")
    for i in range(3):
        canvas.point(us[i], f"u{i + 1}")
        canvas.point(uprimes[i], f"u'{i + 1}")
    return canvas.render("harmonic polar of a point", trace.to_text())


def default_ruler_input(p: ProjPoint, simplex: Simplex, i: int = 0):
    """(a, b, c, m, n) = (p_j, p_k, u_i, p_i, p); the result is u'_i."""
    us, _ = harmonic_points(p, simplex)
    j, k = [x for x in range(3) if x != i]
    v = simplex.vertices
    return v[j], v[k], us[i], v[i], p


def ruler_figure(a, b, c, m, n, simplex: Simplex | None = None, style: FigureStyle = FigureStyle()) -> str:
    """Complete-quadrangle construction of the fourth harmonic of (a, b, c)."""
    simplex = simplex or Simplex.standard(2)
    canvas = _Canvas(simplex, style)
    trace = ruler_trace(a, b, c, m, n)
    canvas.line(trace["ab"], "ab")
    canvas.line(trace["cm"], "cm", cls="aux")
    for step in trace.steps:
        if step.figure_line is not None:
            canvas.line(step.value, step.label, note=step.figure_line)
    canvas.line(trace["xy"], "xy", cls="polar")
    for label in ("a", "b", "c", "m", "n", "x", "y", "d"):
        canvas.point(trace[label], label)
    return canvas.render("ruler construction of a fourth harmonic", trace.to_text())


def _conic_runs(coeffs: Sequence, canvas: _Canvas):
    """Sample a x2x3 + b x1x3 + c x1x2 = 0 through the pencil of lines at p1."""
    a, b, c = (float(x) for x in coeffs)
    runs, run = [], []
    e = canvas.style.extent
    m = canvas.style.conic_samples
    for k in range(m + 1):
        phi = math.pi * k / m
        u, v = math.cos(phi), math.sin(phi)
        w = b * v + c * u
        lam = (-a * u * v, u * w, v * w) if abs(w) > 1e-12 else (1.0, 0.0, 0.0)
        s = sum(lam)
        xy = None
        if abs(s) > 1e-9 * max(abs(t) for t in lam):
            xy = tuple(sum(_CHART[r][i] * lam[i] for i in range(3)) / s for r in range(2))
        if xy is None or abs(xy[0]) > e or abs(xy[1]) > e:
            if run:
                runs.append(run)
            run = []
            continue
        if run and math.dist(run[-1], xy) > 0.25 * e:
            runs.append(run)
            run = []
        run.append(xy)
    if run:
        runs.append(run)
    return runs


def circumconic_figure(p: ProjPoint, simplex: Simplex, style: FigureStyle = FigureStyle()) -> str:
    """First polar of p w.r.t. the triangle, with its tangents at the vertices.

    For the centroid in the equilateral chart this is the circumcircle and
    the harmonic points u'_i go to infinity.
    """
    canvas = _Canvas(simplex, style)
    trace = harmonic_trace(p, simplex)
    conic = first_polar(p, simplex)
    lam = [simplex.coordinates(p)[i] for i in range(3)]
    canvas.polyline(_conic_runs(lam, canvas))
    v = simplex.vertices
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        # tangent at p_i: lam_k x_j + lam_j x_k = 0 in simplex coordinates
        coeffs = [0, 0, 0]
        coeffs[j], coeffs[k] = lam[k], lam[j]
        canvas.line(simplex.hyperplane_from_coordinates(coeffs), f"T{i + 1}", cls="aux")
    canvas.line(trace.value, "polar", cls="polar")
    _triangle(canvas)
    canvas.point(p, "p")
    us, uprimes = harmonic_points(p, simplex)
    for i in range(3):
        canvas.point(uprimes[i], f"u'{i + 1}")
    meta = trace.to_text() + "CONIC " + " ".join(
        f"{list(alpha)}:{num}/{den}".replace(" ", "") for alpha, num, den in conic.to_records()
    ) + "\n"
    return canvas.render("polar conic of a point", meta)


def render_figure(which: str, p: ProjPoint, simplex: Simplex, ruler_points=None, style: FigureStyle = FigureStyle()) -> str:
    if simplex.n != 2:
        raise UnsupportedDimension("figures are planar")
    if which == "harmonic":
        return harmonic_figure(p, simplex, style)
    if which == "ruler":
        pts = ruler_points or default_ruler_input(p, simplex)
        return ruler_figure(*pts, simplex=simplex, style=style)
    if which == "circumconic":
        return circumconic_figure(p, simplex, style)
    raise ValueError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")


def trace_from_svg(svg: str) -> str:
    """The construction trace embedded in a figure (CONIC records dropped)."""
    from xml.etree import ElementTree

    root = ElementTree.fromstring(svg)
    meta = root.find("{http://www.w3.org/2000/svg}metadata")
    text = meta.text or ""
    return "\n".join(line for line in text.splitlines() if not line.startswith("CONIC")) + "\n"
