"""Vertex-represented convex polytopes in an affine chart.

Volumes and centroids come from a simplicial decomposition (a cone from an
interior point over the triangulated boundary). They are exact when the
vertices are rational. Planar hulls are computed exactly; in higher
dimension Qhull supplies the facet combinatorics and the facet equations
are then solved exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import DegenerateBody
from .projective_core import AffineChart


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Sequence[tuple]) -> list[int]:
    """Indices of the strict hull vertices in counter-clockwise order (monotone chain)."""
    order = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1]))
    scale = max((abs(float(x)) for p in points for x in p), default=1.0)
    eps = 0 if linalg.is_exact([x for p in points for x in p]) else linalg.FLOAT_EPS * scale * scale

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and _cross(points[out[-2]], points[out[-1]], points[i]) <= eps:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def polygon_area_centroid(ordered: Sequence[tuple]):
    """Signed shoelace area and centroid of a simple polygon given in cyclic order."""
    a = 0
    cx = 0
    cy = 0
    m = len(ordered)
    for i in range(m):
        x0, y0 = ordered[i]
        x1, y1 = ordered[(i + 1) % m]
        w = x0 * y1 - x1 * y0
        a += w
        cx += (x0 + x1) * w
        cy += (y0 + y1) * w
    area = a / 2
    if area == 0:
        raise DegenerateBody("polygon has zero area")
    return area, (cx / (6 * area), cy / (6 * area))


@dataclass(frozen=True)
class Facet:
    """Facet ``normal · y <= offset`` through the listed vertex indices."""

    normal: tuple
    offset: object
    vertices: tuple


@dataclass(frozen=True)
class ConvexPolytope:
    """Full-dimensional convex polytope; vertices are affine n-tuples in ``chart``."""

    vertices: tuple
    chart: AffineChart | None = None

    def __post_init__(self):
        verts = [linalg.to_vector(v) for v in self.vertices]
        if not verts:
            raise DegenerateBody("no vertices")
        n = len(verts[0])
        if any(len(v) != n for v in verts):
            raise DegenerateBody("vertices of mixed dimension")
        if n < 1:
            raise DegenerateBody("zero-dimensional body")
        if not all(linalg.is_exact(v) for v in verts):
            verts = [tuple(float(x) for x in v) for v in verts]
        object.__setattr__(self, "vertices", tuple(verts))
        if self.chart is None:
            object.__setattr__(self, "chart", AffineChart.standard(n))
        elif self.chart.n != n:
            raise DegenerateBody("chart dimension does not match vertices")
        if len(verts) < n + 1:
            raise DegenerateBody("too few vertices for a full-dimensional body")
        _ = self.facets  # validates

    @property
    def n(self) -> int:
        return len(self.vertices[0])

    @property
    def exact(self) -> bool:
        return all(linalg.is_exact(v) for v in self.vertices)

    @property
    def is_simplex(self) -> bool:
        return len(self.vertices) == self.n + 1

    def to_float(self) -> "ConvexPolytope":
        return ConvexPolytope(tuple(tuple(float(x) for x in v) for v in self.vertices), self.chart)

    def scaled(self, factor) -> "ConvexPolytope":
        return ConvexPolytope(tuple(tuple(factor * x for x in v) for v in self.vertices), self.chart)

    @cached_property
    def vertex_average(self) -> tuple:
        m = len(self.vertices)
        return tuple(sum(col) / m for col in zip(*self.vertices))

    @cached_property
    def ordered(self) -> tuple:
        """Planar polytopes: vertex indices in counter-clockwise order."""
        if self.n != 2:
            raise ValueError("cyclic order only exists in the plane")
        return tuple(convex_hull_2d(self.vertices))

    @cached_property
    def facets(self) -> tuple:
        if self.n == 1:
            lo = min(range(2), key=lambda i: self.vertices[i][0])
            if len(self.vertices) != 2 or self.vertices[0][0] == self.vertices[1][0]:
                raise DegenerateBody("a segment needs two distinct endpoints")
            hi = 1 - lo
            return (
                Facet((-1,), -self.vertices[lo][0], (lo,)),
                Facet((1,), self.vertices[hi][0], (hi,)),
            )
        if self.n == 2:
            return self._facets_2d()
        return self._facets_nd()

    def _facets_2d(self):
        hull = convex_hull_2d(self.vertices)
        if len(hull) != len(self.vertices):
            raise DegenerateBody("some vertices are not extreme points (or the body is flat)")
        out = []
        for k in range(len(hull)):
            i, j = hull[k], hull[(k + 1) % len(hull)]
            (x0, y0), (x1, y1) = self.vertices[i], self.vertices[j]
            # counter-clockwise boundary: interior on the left
            normal = (y1 - y0, x0 - x1)
            out.append(Facet(normal, normal[0] * x0 + normal[1] * y0, (i, j)))
        return tuple(out)

    def _facets_nd(self):
        n = self.n
        if self.is_simplex:
            groups = [tuple(k for k in range(n + 1) if k != i) for i in range(n + 1)]
        else:
            from scipy.spatial import ConvexHull, QhullError

            try:
                hull = ConvexHull([[float(x) for x in v] for v in self.vertices])
            except QhullError as exc:
                raise DegenerateBody("Qhull failed: body is flat or degenerate") from exc
            if len(hull.vertices) != len(self.vertices):
                raise DegenerateBody("some vertices are not extreme points")
            groups = [tuple(int(k) for k in s) for s in hull.simplices]
        inside = self.vertex_average
        out = []
        for g in groups:
            rows = [list(self.vertices[k]) + [1] for k in g]
            kernel = linalg.nullspace(rows)
            if len(kernel) != 1:
                raise DegenerateBody("facet vertices are affinely dependent")
            *normal, neg_offset = kernel[0]
            offset = -neg_offset
            if linalg.dot(normal, inside) > offset:
                normal = [-x for x in normal]
                offset = -offset
            if linalg.is_zero(offset - linalg.dot(normal, inside)):
                raise DegenerateBody("body is flat")
            out.append(Facet(tuple(normal), offset, g))
        return tuple(out)

    def slacks(self, y) -> list:
        """offset - normal·y for every facet; all positive iff y is interior."""
        return [f.offset - linalg.dot(f.normal, y) for f in self.facets]

    def contains_interior(self, y) -> bool:
        s = self.slacks(y)
        if all(isinstance(x, Fraction) for x in s):
            return all(x > 0 for x in s)
        scale = max(max(abs(float(c)) for c in f.normal) for f in self.facets)
        extent = max(abs(float(x)) for v in self.vertices for x in v) + 1.0
        return all(x > 1e-13 * scale * extent for x in s)

    def _simplices(self):
        """Cone over the triangulated boundary from the vertex average."""
        c = self.vertex_average
        if self.n == 2:
            order = self.ordered
            m = len(order)
            return [(c, self.vertices[order[k]], self.vertices[order[(k + 1) % m]]) for k in range(m)]
        if self.is_simplex:
            return [tuple(self.vertices)]
        return [(c,) + tuple(self.vertices[k] for k in f.vertices) for f in self.facets]

    @cached_property
    def _volume_centroid(self):
        n = self.n
        if n == 1:
            a, b = sorted(v[0] for v in self.vertices)
            return b - a, ((a + b) / 2,)
        if n == 2:
            ordered = [self.vertices[k] for k in self.ordered]
            area, cen = polygon_area_centroid(ordered)
            return abs(area), cen
        total = 0
        acc = [0] * n
        fact = math.factorial(n)
        for simplex in self._simplices():
            base = simplex[0]
            vol = abs(linalg.det([[x - y for x, y in zip(v, base)] for v in simplex[1:]])) / fact
            total += vol
            for i in range(n):
                acc[i] += vol * sum(v[i] for v in simplex) / (n + 1)
        if linalg.is_zero(total):
            raise DegenerateBody("zero volume")
        return total, tuple(a / total for a in acc)


def volume(body: ConvexPolytope):
    """Lebesgue volume (exact for rational vertices)."""
    return body._volume_centroid[0]


def centroid(body: ConvexPolytope) -> tuple:
    """Centre of mass of the solid body (not the vertex average)."""
    return body._volume_centroid[1]


def brute_force_vertices(constraints: Sequence[tuple], n: int) -> list[tuple]:
    """Vertices of {f : a·f >= b for all (a, b)} by trying every n-subset.

    Slow but independent of any hull code; used as a test oracle.
    """
    out = []
    for subset in combinations(constraints, n):
        try:
            f = linalg.solve([list(a) for a, _ in subset], [b for _, b in subset])
        except ZeroDivisionError:
            continue
        ok = True
        for a, b in constraints:
            val = linalg.dot(a, f) - b
            if isinstance(val, float) and val < -1e-9 or not isinstance(val, float) and val < 0:
                ok = False
                break
        if ok and tuple(f) not in out:
            out.append(tuple(f))
    return out
