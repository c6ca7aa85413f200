import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from conftest import generic_hyperplanes, generic_points
from polarity_lab.convex_polarity import (
    SantaloConfig,
    barycentric_polar_point,
    centroid_in_chart_of,
    characteristic_value,
    component_sign_pattern,
    convex_polar_hyperplane,
    convex_polar_point,
    double_polar,
    double_polar_orbit,
    dual_body,
    dual_centroid,
    dual_volume,
    santalo_point,
    simplex_component,
    simplex_convex_polar,
    solve_santalo,
    theta,
)
from polarity_lab.errors import DegenerateBody, NoConvergence, NotDisjoint, NotGeneric, NotInterior
from polarity_lab.frame_polarity import frame_polar_hyperplane, frame_polar_point
from polarity_lab.polytope import ConvexPolytope, brute_force_vertices, centroid, volume
from polarity_lab.projective_core import AffineChart, ProjHyperplane, ProjPoint, Simplex

TRIANGLE = ConvexPolytope(((0, 0), (1, 0), (0, 1)))
SQUARE = ConvexPolytope(((-1, -1), (1, -1), (1, 1), (-1, 1)))
QUAD = ConvexPolytope(((0, 0), (2, 0), (2, 1), (0, 2)))
STD2 = Simplex.standard(2)


def random_polygon(rng: random.Random, k: int) -> ConvexPolytope:
    """k points on a random ellipse, angularly spread (hence in convex position)."""
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(k))
        gaps = [b - a for a, b in zip(angles, angles[1:])] + [2 * math.pi - angles[-1] + angles[0]]
        if min(gaps) > 0.4 and max(gaps) < math.pi - 0.2:
            break
    a, b = rng.uniform(0.8, 2.0), rng.uniform(0.8, 2.0)
    cx, cy = rng.uniform(-1, 1), rng.uniform(-1, 1)
    return ConvexPolytope(tuple((cx + a * math.cos(t), cy + b * math.sin(t)) for t in angles))


def random_interior(rng: random.Random, body: ConvexPolytope) -> tuple:
    """A random convex combination of vertices, kept away from the boundary."""
    w = [rng.uniform(0.2, 1.0) for _ in body.vertices]
    s = sum(w)
    return tuple(sum(wi * v[i] for wi, v in zip(w, body.vertices)) / s for i in range(body.n))


def fan_area_centroid(verts):
    """Oracle: fan triangulation from the first vertex of a convex polygon in cyclic order."""
    area, cx, cy = 0, 0, 0
    x0, y0 = verts[0]
    for (x1, y1), (x2, y2) in zip(verts[1:], verts[2:]):
        a = F((x1 - x0) * (y2 - y0) - (x2 - x0) * (y1 - y0), 2)
        area += a
        cx += a * F(x0 + x1 + x2, 3)
        cy += a * F(y0 + y1 + y2, 3)
    return abs(area), (cx / area, cy / area)


def grid_dual_area(body: ConvexPolytope, xs, ys):
    """Vectorized area of K^x for every grid point (x, y)."""
    verts = np.array([body.vertices[k] for k in body.ordered], dtype=float)
    area = np.zeros_like(xs)
    m = len(verts)
    duals = []
    for k in range(m):
        a0, b0 = verts[k, 0] - xs, verts[k, 1] - ys
        a1, b1 = verts[(k + 1) % m, 0] - xs, verts[(k + 1) % m, 1] - ys
        det = a0 * b1 - a1 * b0
        duals.append(((b0 - b1) / det, (a1 - a0) / det))
    for k in range(m):
        (u0, v0), (u1, v1) = duals[k], duals[(k + 1) % m]
        area += u0 * v1 - u1 * v0
    return np.abs(area) / 2


# --- volume and centroid -------------------------------------------------------


@pytest.mark.parametrize(
    "verts, vol, cen",
    [
        (((0, 0), (1, 0), (0, 1)), F(1, 2), (F(1, 3), F(1, 3))),
        (((0, 0), (1, 0), (1, 1), (0, 1)), 1, (F(1, 2), F(1, 2))),
        (((0, 3), (3, 0), (-3, -3)), F(27, 2), (0, 0)),
    ],
)
def test_volume_centroid_examples(verts, vol, cen):
    body = ConvexPolytope(verts)
    assert volume(body) == vol
    assert centroid(body) == cen


@given(st.integers(0, 10**6))
def test_polygon_measures_match_fan_oracle(seed):
    rng = random.Random(seed)
    pts = [(rng.randint(-20, 20), rng.randint(-20, 20)) for _ in range(12)]
    hull = ConvexHull(np.array(pts, dtype=float))
    verts = [pts[i] for i in hull.vertices]
    body = ConvexPolytope(tuple(verts))
    assert (volume(body), centroid(body)) == fan_area_centroid(verts)


@pytest.mark.parametrize("seed", range(5))
def test_polytope_volume_in_three_dimensions_matches_qhull(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(30, 3))
    hull = ConvexHull(pts)
    body = ConvexPolytope(tuple(tuple(p) for p in pts[hull.vertices]))
    assert volume(body) == pytest.approx(hull.volume, rel=1e-9)
    cube = ConvexPolytope(tuple((x, y, z) for x in (0, 2) for y in (0, 2) for z in (0, 2)))
    assert volume(cube) == 8 and centroid(cube) == (1, 1, 1)


def test_degenerate_bodies():
    with pytest.raises(DegenerateBody):
        ConvexPolytope(((0, 0), (1, 1), (2, 2)))
    with pytest.raises(DegenerateBody):
        ConvexPolytope(((0, 0), (2, 0), (0, 2), (F(1, 2), F(1, 2))))
    with pytest.raises(DegenerateBody):
        ConvexPolytope(((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)))


# --- dual bodies ------------------------------------------------------------


def brute_dual(body, x):
    constraints = [(tuple(y[i] - x[i] for i in range(body.n)), -1) for y in body.vertices]
    return brute_force_vertices(constraints, body.n)


def test_dual_body_examples():
    db = dual_body(TRIANGLE, (F(1, 3), F(1, 3)))
    assert set(db.vertices) == {(0, 3), (3, 0), (-3, -3)}
    assert set(db.vertices) == set(brute_dual(TRIANGLE, (F(1, 3), F(1, 3))))
    sq = dual_body(SQUARE, (0, 0))
    assert set(sq.vertices) == {(1, 0), (0, 1), (-1, 0), (0, -1)}
    assert set(sq.vertices) == set(brute_dual(SQUARE, (0, 0)))
    with pytest.raises(NotInterior):
        dual_body(TRIANGLE, (F(1, 2), F(1, 2)))
    with pytest.raises(NotInterior):
        dual_body(TRIANGLE, (2, 2))


@pytest.mark.parametrize(
    "body, x",
    [
        (ConvexPolytope(((0, 0), (4, 0), (5, 3), (1, 4), (-1, 2))), (F(2), F(2))),
        (ConvexPolytope(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))), (F(1, 5), F(1, 5), F(1, 4))),
        (ConvexPolytope(tuple((x, y, z) for x in (0, 2) for y in (0, 1) for z in (0, 3))), (F(1, 2), F(1, 3), 1)),
    ],
)
def test_dual_body_matches_brute_force(body, x):
    db = dual_body(body, x)
    assert set(db.vertices) == set(brute_dual(body, x))
    assert db.polytope.contains_interior((0,) * body.n)


@given(st.integers(1, 9), st.integers(1, 9))
def test_dual_body_scaling(num, den):
    lam = F(num, den)
    x = (F(1, 4), F(1, 3))
    base = dual_body(QUAD, x).vertices
    scaled = dual_body(QUAD.scaled(lam), (lam * x[0], lam * x[1])).vertices
    assert set(scaled) == {tuple(v / lam for v in f) for f in base}
    assert dual_volume(QUAD.scaled(lam), (lam * x[0], lam * x[1])) == dual_volume(QUAD, x) / lam**2


def test_characteristic_value_examples():
    assert characteristic_value(TRIANGLE, (F(1, 3), F(1, 3))) == 27
    assert characteristic_value(SQUARE, (0, 0)) == 4
    assert theta(TRIANGLE, (F(1, 3), F(1, 3))) == (0, 0)
    assert theta(SQUARE, (0, 0)) == (0, 0)


def test_characteristic_value_blows_up_at_the_boundary():
    values = [characteristic_value(TRIANGLE, (F(1, 3), F(1, 10**k))) for k in range(1, 7)]
    assert all(b > 2 * a for a, b in zip(values, values[1:]))


def test_characteristic_value_is_log_convex_on_segments():
    a, b = np.array([0.1, 0.2]), np.array([0.6, 0.3])
    ts = np.linspace(0, 1, 21)
    logs = [math.log(characteristic_value(QUAD.to_float(), tuple(a + t * (b - a)))) for t in ts]
    second = np.diff(logs, 2)
    assert np.all(second > 0)


def fd_minus_log_phi(body, x, h=1e-5):
    x = np.array(x, dtype=float)
    out = []
    for i in range(body.n):
        e = np.zeros(body.n)
        e[i] = h
        fp = math.log(characteristic_value(body, tuple(x + e)))
        fm = math.log(characteristic_value(body, tuple(x - e)))
        out.append(-(fp - fm) / (2 * h))
    return np.array(out)


def test_theta_matches_finite_differences_at_a_point():
    body = TRIANGLE.to_float()
    np.testing.assert_allclose(theta(body, (0.3, 0.4)), fd_minus_log_phi(body, (0.3, 0.4)), rtol=1e-6, atol=1e-8)


@pytest.mark.parametrize("seed", range(3))
def test_theta_matches_finite_differences_on_polytopes(seed):
    rng = random.Random(seed)
    for body in (random_polygon(rng, 5), ConvexPolytope(tuple((x, y, z) for x in (0, 2) for y in (0, 1) for z in (0, 3))).to_float()):
        x = random_interior(rng, body)
        t = np.array(theta(body, x), dtype=float)
        fd = fd_minus_log_phi(body, x)
        assert np.linalg.norm(t - fd) <= 1e-5 * np.linalg.norm(t) + 1e-7


# --- Santaló points ------------------------------------------------------------


def test_santalo_examples():
    assert santalo_point(TRIANGLE) == (F(1, 3), F(1, 3))
    sq = ConvexPolytope(((0, 0), (1, 0), (1, 1), (0, 1)))
    assert santalo_point(sq) == pytest.approx((0.5, 0.5), abs=1e-10)
    res = solve_santalo(TRIANGLE, SantaloConfig(start=(0.1, 0.7)))
    assert res.point == pytest.approx((1 / 3, 1 / 3), abs=1e-10)
    assert res.iterations <= 50


def test_santalo_of_quadrilateral_against_grid_search():
    s = np.array(santalo_point(QUAD))
    # coarse 200x200 grid over the bounding box, then a zoomed 200x200 grid
    lo, hi = np.array([0.0, 0.0]), np.array([2.0, 2.0])
    best = None
    for _ in range(2):
        xs, ys = np.meshgrid(np.linspace(lo[0], hi[0], 200), np.linspace(lo[1], hi[1], 200))
        inside = np.ones_like(xs, dtype=bool)
        for f in QUAD.facets:
            inside &= float(f.normal[0]) * xs + float(f.normal[1]) * ys < float(f.offset) - 1e-9
        with np.errstate(divide="ignore", invalid="ignore"):
            area = np.where(inside, grid_dual_area(QUAD, xs, ys), np.inf)
        k = np.unravel_index(np.argmin(area), area.shape)
        best = np.array([xs[k], ys[k]])
        step = (hi - lo) / 199
        lo, hi = best - 3 * step, best + 3 * step
    assert np.linalg.norm(best - s) < 1e-3
    assert np.linalg.norm(dual_centroid(QUAD.to_float(), tuple(s))) < 1e-9


def test_santalo_of_a_three_dimensional_body():
    box = ConvexPolytope(tuple((x, y, z) for x in (0, 2) for y in (0, 1) for z in (0, 3)))
    assert solve_santalo(box).point == pytest.approx((1, 0.5, 1.5), abs=1e-8)
    tet = ConvexPolytope(((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)))
    res = solve_santalo(tet, SantaloConfig(start=(0.1, 0.1, 0.5)))
    assert res.point == pytest.approx((0.25, 0.25, 0.25), abs=1e-8)


@pytest.mark.parametrize("seed", range(5))
def test_santalo_of_random_triangles_is_the_centroid(seed):
    rng = random.Random(seed)
    body = random_polygon(rng, 3)
    res = solve_santalo(body, SantaloConfig(start=random_interior(rng, body)))
    assert np.linalg.norm(np.array(res.point) - np.array(centroid(body))) < 1e-8


def test_santalo_reports_non_convergence():
    with pytest.raises(NoConvergence) as err:
        solve_santalo(QUAD, SantaloConfig(max_iter=1, start=(0.2, 0.2)))
    assert len(err.value.iterates) >= 1


# --- convex polarity ------------------------------------------------------------


def test_convex_polar_hyperplane_examples():
    body = simplex_component(STD2, (1, 1, 1))
    assert convex_polar_hyperplane(ProjHyperplane((1, 1, 1)), body) == ProjPoint((1, 1, 1))
    assert convex_polar_hyperplane(ProjHyperplane((6, 3, 2)), body) == ProjPoint((1, 2, 3))
    other = AffineChart(((1, 0, 0), (1, 1, 0), (6, 3, 2)))
    assert convex_polar_hyperplane(ProjHyperplane((6, 3, 2)), body, other) == ProjPoint((1, 2, 3))
    with pytest.raises(NotDisjoint):
        convex_polar_hyperplane(ProjHyperplane((1, -1, 0)), body)


def test_convex_polar_point_examples():
    body = simplex_component(STD2, (1, 1, 1))
    assert convex_polar_point(ProjPoint((1, 1, 1)), body) == ProjHyperplane((1, 1, 1))
    assert convex_polar_point(ProjPoint((1, 2, 3)), body) == ProjHyperplane((6, 3, 2))
    # the centre of a square is polar to the line at infinity of its chart
    h = convex_polar_point((0, 0), SQUARE.to_float())
    assert h.isclose(ProjHyperplane((0, 0, 1)), 1e-9)
    with pytest.raises(NotInterior):
        convex_polar_point(ProjPoint((-1, 1, 1)), body)


@pytest.mark.parametrize("seed", range(20))
def test_chart_independence(seed):
    rng = random.Random(seed)
    body = random_polygon(rng, rng.choice((3, 4, 5)))
    angle = rng.uniform(0, 2 * math.pi)
    a = (math.cos(angle), math.sin(angle))
    reach = max(a[0] * v[0] + a[1] * v[1] for v in body.vertices)
    h = ProjHyperplane((a[0], a[1], -(reach + rng.uniform(0.5, 3))))
    std = convex_polar_hyperplane(h, body)
    rows = [[rng.uniform(-2, 2) for _ in range(3)] for _ in range(2)]
    other = AffineChart(tuple(tuple(r) for r in rows) + (h.coords,))
    assert convex_polar_hyperplane(h, body, other).isclose(std, 1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_theorem_round_trip(seed):
    rng = random.Random(100 + seed)
    body = random_polygon(rng, rng.choice((4, 5)))
    for _ in range(3):
        x = random_interior(rng, body)
        h = convex_polar_point(x, body)
        assert np.allclose(centroid_in_chart_of(h, body), x, atol=1e-6)


@pytest.mark.parametrize(
    "p",
    [(1, 1, 1), (1, 2, 3), (-1, 1, 1), (3, -1, 2), (1, 1, 1, 1), (2, -1, 3, -5)],
)
def test_simplex_convex_polar_examples(p):
    simplex = Simplex.standard(len(p) - 1)
    point = ProjPoint(p)
    assert simplex_convex_polar(point, simplex) == frame_polar_point(point, simplex)


def test_component_selection():
    assert component_sign_pattern(ProjPoint((-1, 1, 1)), STD2) == (1, -1, -1)
    with pytest.raises(NotGeneric):
        component_sign_pattern(ProjPoint((0, 1, 1)), STD2)
    body = simplex_component(STD2, (1, -1, -1))
    assert body.contains_interior(body.chart.to_chart(ProjPoint((-1, 1, 1))))


@pytest.mark.parametrize("n", [2, 3])
def test_simplex_convex_polarity_is_the_frame_polarity(n):
    simplex = Simplex(tuple(ProjPoint([int(i == j) + int(j == n) for i in range(n + 1)]) for j in range(n + 1)))

    @given(generic_points(simplex), generic_hyperplanes(simplex))
    def check(p, h):
        polar = simplex_convex_polar(p, simplex)
        assert polar == frame_polar_point(p, simplex)
        assert simplex_convex_polar(polar, simplex) == p
        assert simplex_convex_polar(h, simplex) == frame_polar_hyperplane(h, simplex)

    check()


def test_float_and_exact_paths_agree_on_a_simplex():
    x = (F(1, 5), F(1, 2))
    exact = barycentric_polar_point(x, TRIANGLE)
    approx = convex_polar_point(tuple(float(v) for v in x), TRIANGLE.to_float(), SantaloConfig())
    assert approx.isclose(exact, 1e-9)


# --- double-polar dynamics ------------------------------------------------------


def test_triangle_orbit_is_constant_and_exact():
    orbit = double_polar_orbit((F(1, 5), F(1, 2)), TRIANGLE, 5)
    assert all(s.point == (F(1, 5), F(1, 2)) and s.displacement == 0 for s in orbit.steps)
    assert double_polar((F(1, 7), F(3, 7)), ConvexPolytope(((0, 0), (3, 1), (1, 4)))) == (F(1, 7), F(3, 7))


def test_square_orbit_from_the_centre_is_fixed():
    orbit = double_polar_orbit((0.5, 0.5), ConvexPolytope(((0, 0), (1, 0), (1, 1), (0, 1))), 10)
    assert max(s.displacement for s in orbit.steps) < 1e-8


def test_quadrilateral_is_not_involutive():
    orbit = double_polar_orbit(centroid(QUAD), QUAD, 20)
    assert orbit.stopped is None
    assert orbit.steps[1].displacement > 1e-3
    csv = orbit.to_csv().splitlines()
    assert csv[0] == "step,x,y,displacement" and len(csv) == 22


# --- characteristic function by Monte-Carlo -----------------------------------


@pytest.mark.slow
def test_fubini_identity_by_monte_carlo():
    """∫ over the dual cone of exp(-f(x, 1)) equals n!·vol(K^x) (= 27 here)."""
    rng = np.random.default_rng(7)
    x = np.array([1 / 3, 1 / 3, 1.0])
    lo, hi = np.array([-40.0, -40.0, 0.0]), np.array([40.0, 40.0, 40.0])
    box = float(np.prod(hi - lo))
    total, count = 0.0, 0
    lifts = np.array([[0, 0, 1], [1, 0, 1], [0, 1, 1]], dtype=float)
    for _ in range(10):
        f = rng.uniform(lo, hi, size=(400_000, 3))
        in_cone = np.all(f @ lifts.T > 0, axis=1)
        total += np.sum(np.exp(-(f @ x)) * in_cone)
        count += len(f)
    estimate = box * total / count
    assert estimate == pytest.approx(float(characteristic_value(TRIANGLE, (F(1, 3), F(1, 3)))), rel=0.05)
