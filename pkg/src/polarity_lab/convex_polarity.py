"""Convex duality: dual bodies K^x, the characteristic function, θ, Santaló
points, convex polars and the double-polar dynamics."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .errors import DegenerateBody, NoConvergence, NotDisjoint, NotGeneric, NotInterior
from .polytope import ConvexPolytope, centroid, volume
from .projective_core import AffineChart, ProjHyperplane, ProjPoint, Simplex

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualBodyAt:
    """K^x = {f : f(y - x) > -1 for all y in K}, as a polytope of linear forms."""

    base: ConvexPolytope
    center: tuple
    vertices: tuple

    @property
    def polytope(self) -> ConvexPolytope:
        return ConvexPolytope(self.vertices)


def _require_interior(body: ConvexPolytope, x) -> tuple:
    x = linalg.to_vector(x)
    if len(x) != body.n:
        raise ValueError("point dimension does not match the body")
    if not body.exact:
        x = tuple(float(v) for v in x)
    if not body.contains_interior(x):
        raise NotInterior(f"{x} is not an interior point")
    return x


def _dedupe(points: list) -> list:
    out = []
    for p in points:
        if isinstance(p[0], Fraction):
            if p not in out:
                out.append(p)
        else:
            scale = max(1.0, max(abs(v) for v in p))
            if not any(max(abs(a - b) for a, b in zip(p, q)) <= 1e-9 * scale for q in out):
                out.append(p)
    return out


def dual_body(body: ConvexPolytope, x) -> DualBodyAt:
    """Vertices of K^x.

    Every vertex y of K gives the facet f(y - x) = -1 of K^x. In the plane
    adjacent pairs of these facets are intersected; in higher dimension each
    facet a·y <= b of K yields the vertex -a / (b - a·x).
    """
    x = _require_interior(body, x)
    if body.n == 2:
        order = body.ordered
        m = len(order)
        verts = []
        for k in range(m):
            y0 = body.vertices[order[k]]
            y1 = body.vertices[order[(k + 1) % m]]
            a0, b0 = y0[0] - x[0], y0[1] - x[1]
            a1, b1 = y1[0] - x[0], y1[1] - x[1]
            det = a0 * b1 - a1 * b0
            # Cramer on f·(y0-x) = -1, f·(y1-x) = -1
            verts.append(((-b1 + b0) / det, (-a0 + a1) / det))
    else:
        verts = []
        for facet in body.facets:
            slack = facet.offset - linalg.dot(facet.normal, x)
            verts.append(tuple(-a / slack for a in facet.normal))
        verts = _dedupe(verts)
    return DualBodyAt(body, x, tuple(verts))


def _dual_volume_centroid(db: DualBodyAt):
    if db.base.n == 2:
        from .polytope import polygon_area_centroid

        area, cen = polygon_area_centroid(db.vertices)
        return abs(area), cen
    poly = db.polytope
    return volume(poly), centroid(poly)


def dual_volume(body: ConvexPolytope, x):
    return _dual_volume_centroid(dual_body(body, x))[0]


def dual_centroid(body: ConvexPolytope, x) -> tuple:
    return _dual_volume_centroid(dual_body(body, x))[1]


def characteristic_value(body: ConvexPolytope, x):
    """φ(x) = n!·vol(K^x): the characteristic function of the cone over K at (x, 1)."""
    return math.factorial(body.n) * dual_volume(body, x)


def theta(body: ConvexPolytope, x) -> tuple:
    """θ(x) = (n+1)·centroid(K^x), the gradient of -log φ along the chart."""
    c = dual_centroid(body, x)
    return tuple((body.n + 1) * v for v in c)


# --- Santaló point -----------------------------------------------------------


@dataclass
class SantaloConfig:
    tol: float = 1e-10  # on |centroid(K^x)|, dual-chart units
    max_iter: int = 100
    fd_step: float = 1e-6  # relative to the body's diameter
    start: tuple | None = None  # default: centroid of K


@dataclass
class SantaloResult:
    point: tuple
    iterations: int
    gradient_norm: float
    history: list = field(default_factory=list)


def solve_santalo(body: ConvexPolytope, config: SantaloConfig | None = None) -> SantaloResult:
    """Minimize log vol(K^x) by damped Newton with a finite-difference Hessian.

    The gradient is -(n+1)·centroid(K^x), computed in closed form; the
    Hessian comes from central differences of that gradient. When the
    Newton direction is not a descent direction a gradient step is used.
    """
    cfg = config or SantaloConfig()
    fbody = body if not body.exact else body.to_float()
    n = fbody.n
    verts = np.array(fbody.vertices, dtype=float)
    diameter = float(np.max(np.ptp(verts, axis=0)))
    h = cfg.fd_step * diameter
    x = np.array(cfg.start if cfg.start is not None else centroid(fbody), dtype=float)
    if not fbody.contains_interior(tuple(x)):
        raise NotInterior("starting point is not interior")

    def objective(z):
        vol, cen = _dual_volume_centroid(dual_body(fbody, tuple(z)))
        return math.log(vol), -(n + 1) * np.array(cen, dtype=float), np.array(cen, dtype=float)

    f, g, c = objective(x)
    history = [tuple(x)]
    for it in range(cfg.max_iter + 1):
        cnorm = float(np.linalg.norm(c))
        if cnorm < cfg.tol:
            return SantaloResult(tuple(float(v) for v in x), it, cnorm, history)
        if it == cfg.max_iter:
            break
        hess = np.empty((n, n))
        for i in range(n):
            e = np.zeros(n)
            e[i] = h
            try:
                gp = objective(x + e)[1]
                gm = objective(x - e)[1]
            except NotInterior:
                gp = objective(x + e / 100)[1]
                gm = objective(x - e / 100)[1]
                e = e / 100
            hess[:, i] = (gp - gm) / (2 * e[i])
        hess = (hess + hess.T) / 2
        try:
            step = -np.linalg.solve(hess, g)
            if not float(step @ g) < 0:
                raise np.linalg.LinAlgError
        except np.linalg.LinAlgError:
            step = -g * (diameter ** 2) / max(1.0, float(np.linalg.norm(g)) * diameter)
        alpha = 1.0
        while True:
            trial = x + alpha * step
            if fbody.contains_interior(tuple(trial)):
                ft, gt, ct = objective(trial)
                if ft <= f + 1e-4 * alpha * float(step @ g) or np.linalg.norm(ct) < cnorm:
                    break
            alpha /= 2
            if alpha < 1e-12:
                raise NoConvergence("line search failed", history)
        x, f, g, c = trial, ft, gt, ct
        history.append(tuple(x))
    raise NoConvergence(f"no convergence after {cfg.max_iter} iterations", history)


def santalo_point(body: ConvexPolytope, config: SantaloConfig | None = None) -> tuple:
    """The interior point minimizing vol(K^x).

    For a simplex this is its centroid (its affine symmetries fix only that
    point), returned exactly for rational input.
    """
    if body.is_simplex and config is None:
        return centroid(body)
    return solve_santalo(body, config).point


# --- convex polarity -----------------------------------------------------------


def _vertex_lifts(body: ConvexPolytope) -> list:
    return [body.chart.lift(v) for v in body.vertices]


def _check_disjoint(h: ProjHyperplane, body: ConvexPolytope):
    values = [linalg.dot(h.coords, lift) for lift in _vertex_lifts(body)]
    scale = max(abs(float(v)) for v in values)
    signs = set()
    for v in values:
        if linalg.is_zero(v, scale):
            raise NotDisjoint(f"{h} meets the closure of the body")
        signs.add(v > 0)
    if len(signs) != 1:
        raise NotDisjoint(f"{h} crosses the body")


def reframe(body: ConvexPolytope, chart: AffineChart) -> ConvexPolytope:
    """The same projective body read in another chart (which must not cut it)."""
    _check_disjoint(chart.infinity, body)
    return ConvexPolytope(tuple(chart.to_chart(ProjPoint(l)) for l in _vertex_lifts(body)), chart)


def convex_polar_hyperplane(h: ProjHyperplane, body: ConvexPolytope, chart: AffineChart | None = None) -> ProjPoint:
    """H°: the centroid of the body in a chart sending H to infinity."""
    if chart is None:
        chart = AffineChart.from_hyperplane(h)
    elif chart.infinity != h and not chart.infinity.isclose(h):
        raise ValueError("chart does not send the hyperplane to infinity")
    _check_disjoint(h, body)
    image = reframe(body, chart)
    return chart.from_chart(centroid(image))


def _point_in_chart(x, body: ConvexPolytope) -> tuple:
    if isinstance(x, ProjPoint):
        x = body.chart.to_chart(x)
    return _require_interior(body, x)


def _hyperplane_from_dual_point(f: Sequence, x: tuple, body: ConvexPolytope) -> ProjHyperplane:
    """The hyperplane {z : f(z - x) = -1} of the body's chart, as a ProjHyperplane."""
    form = list(f) + [1 - linalg.dot(f, x)]
    return body.chart.hyperplane_from_chart(form)


def convex_polar_point(x, body: ConvexPolytope, config: SantaloConfig | None = None) -> ProjHyperplane:
    """x°: the hyperplane y* with y the Santaló point of K^x.

    In any chart sending this hyperplane to infinity, x is the centroid of
    the body. Exact for rational simplices.
    """
    xa = _point_in_chart(x, body)
    db = dual_body(body, xa)
    s = santalo_point(db.polytope, config)
    return _hyperplane_from_dual_point(s, xa, body)


def barycentric_polar_point(x, body: ConvexPolytope) -> ProjHyperplane:
    """The hyperplane dual to the centroid of K^x (centroid used instead of Santaló)."""
    xa = _point_in_chart(x, body)
    return _hyperplane_from_dual_point(dual_centroid(body, xa), xa, body)


def centroid_in_chart_of(h: ProjHyperplane, body: ConvexPolytope) -> tuple:
    """Centroid of the body in the chart sending h to infinity, read back in the body's chart."""
    return body.chart.to_chart(convex_polar_hyperplane(h, body))


# --- simplices: exact path ---------------------------------------------------


def _sign(v) -> int:
    return 1 if v > 0 else -1


def component_sign_pattern(x, simplex: Simplex) -> tuple:
    """Signs of simplex coordinates, normalized so the first is +1.

    For a point: the component containing it. For a hyperplane: the
    component it does not meet.
    """
    if isinstance(x, ProjPoint):
        c = simplex.coordinates(x)
    else:
        c = simplex.hyperplane_coordinates(x)
    if any(v == 0 for v in c):
        raise NotGeneric(f"{x} is not generic")
    signs = [_sign(v) for v in c]
    return tuple(s * signs[0] for s in signs)


def simplex_component(simplex: Simplex, signs: Sequence[int]) -> ConvexPolytope:
    """The component {signs_i · y_i > 0} of the complement of the faces, as a
    polytope in a chart where it is bounded."""
    infinity = simplex.hyperplane_from_coordinates(list(signs))
    chart = AffineChart.from_hyperplane(infinity)
    return ConvexPolytope(tuple(chart.to_chart(v) for v in simplex.vertices), chart)


def simplex_convex_polar(x, simplex: Simplex):
    """Convex polarity w.r.t. a simplex, exactly.

    A generic point is polarized w.r.t. the component containing it; a
    generic hyperplane w.r.t. the component it does not meet.
    """
    signs = component_sign_pattern(x, simplex)
    body = simplex_component(simplex, signs)
    if isinstance(x, ProjPoint):
        return convex_polar_point(x, body)
    return convex_polar_hyperplane(x, body)


# --- double-polar dynamics -----------------------------------------------------


@dataclass(frozen=True)
class OrbitStep:
    step: int
    point: tuple
    displacement: float


@dataclass
class OrbitResult:
    steps: list
    stopped: str | None = None

    def to_csv(self) -> str:
        n = len(self.steps[0].point)
        names = ["x", "y"] if n == 2 else [f"x{i + 1}" for i in range(n)]
        rows = [",".join(["step"] + names + ["displacement"])]
        for s in self.steps:
            rows.append(",".join([str(s.step)] + [f"{float(v):.12g}" for v in s.point] + [f"{float(s.displacement):.6e}"]))
        return "\n".join(rows) + "\n"


def double_polar(x, body: ConvexPolytope) -> tuple:
    """x ↦ (x°)° with x° the hyperplane dual to centroid(K^x)."""
    return centroid_in_chart_of(barycentric_polar_point(x, body), body)


def double_polar_orbit(x0, body: ConvexPolytope, steps: int) -> OrbitResult:
    """Iterates of the double-polar map, with per-step displacement.

    Non-simplices are processed in float mode; rational simplices stay exact.
    """
    if not (body.is_simplex and body.exact):
        body = body.to_float() if body.exact else body
        x0 = tuple(float(v) for v in linalg.to_vector(x0))
    x = _point_in_chart(x0, body)
    out = [OrbitStep(0, x, 0.0)]
    for k in range(1, steps + 1):
        try:
            nxt = double_polar(x, body)
        except (NotInterior, NotDisjoint, NoConvergence, DegenerateBody) as exc:
            log.warning("orbit stopped at step %d: %s", k, exc)
            return OrbitResult(out, f"step {k}: {exc}")
        disp = math.sqrt(sum((float(a) - float(b)) ** 2 for a, b in zip(nxt, x)))
        if body.exact and nxt == x:
            disp = 0.0
        out.append(OrbitStep(k, tuple(nxt), disp))
        x = tuple(nxt)
    return OrbitResult(out)
