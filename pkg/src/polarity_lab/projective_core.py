"""Homogeneous coordinates: points, hyperplanes, join/meet, charts, cross-ratio."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import (
    AtInfinity,
    DegenerateQuadruple,
    DegenerateSpan,
    InvalidPoint,
    NotAFrame,
    NotCollinear,
)


class _Infinity:
    """The point at infinity of an affine line, as a cross-ratio value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "∞"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def canonical_coords(values: Iterable) -> tuple:
    """Canonical representative of a homogeneous tuple.

    Exact tuples become coprime integers (stored as ``Fraction``) whose
    first nonzero entry is positive. Float tuples are divided by their first
    non-negligible entry.
    """
    vec = linalg.to_vector(values)
    if not vec:
        raise InvalidPoint("empty coordinate tuple")
    if linalg.is_exact(vec):
        lead = next((x for x in vec if x != 0), None)
        if lead is None:
            raise InvalidPoint("all coordinates are zero")
        vec = [x / lead for x in vec]
        lcm = 1
        for x in vec:
            lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
        ints = [int(x * lcm) for x in vec]
        g = 0
        for k in ints:
            g = math.gcd(g, k)
        return tuple(Fraction(k // g) for k in ints)
    scale = max(abs(x) for x in vec)
    if scale == 0 or not math.isfinite(scale):
        raise InvalidPoint("all coordinates are zero or not finite")
    lead = next(x for x in vec if abs(x) > linalg.FLOAT_EPS * scale)
    return tuple(x / lead for x in vec)


@dataclass(frozen=True)
class _Homogeneous:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_coords(self.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def dim(self) -> int:
        """Dimension n of the ambient projective space."""
        return len(self.coords) - 1

    @property
    def exact(self) -> bool:
        return linalg.is_exact(self.coords)

    def isclose(self, other, tol=1e-9) -> bool:
        """Equality up to scale, with a tolerance (for float coordinates)."""
        if type(self) is not type(other) or len(self) != len(other):
            return False
        a = [float(x) for x in self.coords]
        b = [float(x) for x in other.coords]
        na = max(abs(x) for x in a)
        nb = max(abs(x) for x in b)
        a = [x / na for x in a]
        b = [x / nb for x in b]
        k = max(range(len(a)), key=lambda i: abs(a[i]))
        s = b[k] / a[k]
        return all(abs(s * x - y) <= tol for x, y in zip(a, b))

    def __str__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


class ProjPoint(_Homogeneous):
    """A point of P(V), given by homogeneous coordinates up to scale."""

    def __repr__(self):
        return f"ProjPoint({self})"


class ProjHyperplane(_Homogeneous):
    """A hyperplane of P(V), given by the coefficients of a linear form up to scale."""

    def __repr__(self):
        return f"ProjHyperplane({self})"


def point(*coords) -> ProjPoint:
    if len(coords) == 1 and not isinstance(coords[0], (int, float, str, Fraction)):
        coords = tuple(coords[0])
    return ProjPoint(coords)


def hyperplane(*coeffs) -> ProjHyperplane:
    if len(coeffs) == 1 and not isinstance(coeffs[0], (int, float, str, Fraction)):
        coeffs = tuple(coeffs[0])
    return ProjHyperplane(coeffs)


def canonicalize(p):
    """Return the canonical representative (construction already canonicalizes)."""
    return type(p)(p.coords)


def dual(x):
    """Projective duality: a point of P(V) <-> a hyperplane of P(V*), same coordinates."""
    if isinstance(x, ProjPoint):
        return ProjHyperplane(x.coords)
    if isinstance(x, ProjHyperplane):
        return ProjPoint(x.coords)
    raise TypeError(f"cannot dualize {type(x).__name__}")


def incidence(p: ProjPoint, h: ProjHyperplane):
    """The value of h's linear form on p's canonical representative."""
    if len(p) != len(h):
        raise ValueError("dimension mismatch")
    return linalg.dot(h.coords, p.coords)


def lies_on(p: ProjPoint, h: ProjHyperplane) -> bool:
    value = incidence(p, h)
    if isinstance(value, float):
        scale = max(abs(x) for x in p.coords) * max(abs(x) for x in h.coords)
        return abs(value) <= 1e-9 * scale
    return value == 0


def _common_dim(items: Sequence[_Homogeneous]) -> int:
    dims = {len(x) for x in items}
    if len(dims) != 1:
        raise ValueError("mixed dimensions")
    return dims.pop()


def span(points: Sequence[ProjPoint]) -> ProjHyperplane:
    """The hyperplane through n independent points of P^n."""
    size = _common_dim(points)
    if len(points) != size - 1:
        raise ValueError(f"span needs {size - 1} points in P^{size - 1}, got {len(points)}")
    kernel = linalg.nullspace([list(p.coords) for p in points])
    if len(kernel) != 1:
        raise DegenerateSpan("points are not independent")
    return ProjHyperplane(kernel[0])


def meet(hyperplanes: Sequence[ProjHyperplane]) -> ProjPoint:
    """The point common to n independent hyperplanes of P^n."""
    size = _common_dim(hyperplanes)
    if len(hyperplanes) != size - 1:
        raise ValueError(f"meet needs {size - 1} hyperplanes, got {len(hyperplanes)}")
    kernel = linalg.nullspace([list(h.coords) for h in hyperplanes])
    if len(kernel) != 1:
        raise DegenerateSpan("hyperplanes are not independent")
    return ProjPoint(kernel[0])


def join(a: ProjPoint, b: ProjPoint) -> ProjHyperplane:
    """Line through two points of the projective plane."""
    if a.dim != 2:
        raise ValueError("join of two points is a hyperplane only in P^2")
    return span([a, b])


def intersect(l1: ProjHyperplane, l2: ProjHyperplane) -> ProjPoint:
    """Intersection point of two lines of the projective plane."""
    if l1.dim != 2:
        raise ValueError("meet of two hyperplanes is a point only in P^2")
    return meet([l1, l2])


def line_meet_hyperplane(a: ProjPoint, b: ProjPoint, h: ProjHyperplane) -> ProjPoint:
    """Intersection of the line (ab) with the hyperplane h."""
    ha = incidence(a, h)
    hb = incidence(b, h)
    vec = [hb * x - ha * y for x, y in zip(a.coords, b.coords)]
    if all(linalg.is_zero(x) for x in vec):
        raise DegenerateSpan("line lies in the hyperplane or a == b")
    return ProjPoint(vec)


def is_collinear(points: Sequence[ProjPoint]) -> bool:
    return linalg.rank([list(p.coords) for p in points]) <= 2


def line_coordinates(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> tuple:
    """Coordinates (s, t) with c = s·a + t·b, for distinct a, b and c on (ab)."""
    cols = [list(r) for r in zip(a.coords, b.coords, c.coords)]
    a_, pivots = linalg.rref(cols)
    if pivots[:2] != [0, 1]:
        raise DegenerateQuadruple("a and b coincide")
    if len(pivots) > 2:
        raise NotCollinear("point is not on the line")
    return a_[0][2], a_[1][2]


def cross_ratio(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint):
    """Cross-ratio ((c-b)(d-a)) / ((c-a)(d-b)) of four collinear points.

    Returns a scalar or ``INFINITY`` (when d == b).
    """
    if a == b:
        raise DegenerateQuadruple("a == b")
    if not is_collinear([a, b, c, d]):
        raise NotCollinear("the four points are not collinear")
    if c == a or c == b:
        raise DegenerateQuadruple("c coincides with a or b")
    g1, g2 = line_coordinates(a, b, c)
    d1, d2 = line_coordinates(a, b, d)
    # brackets in the (a, b) basis: [cb]=g1, [da]=-d2, [ca]=-g2, [db]=d1
    num = g1 * d2
    den = g2 * d1
    if linalg.is_zero(den):
        return INFINITY
    return num / den


def affine_line_point(t) -> ProjPoint:
    """Point [t:1] of the projective line; ``INFINITY`` gives [1:0]."""
    if t is INFINITY:
        return ProjPoint((1, 0))
    return ProjPoint((t, 1))


def affine_line_value(p: ProjPoint):
    """Inverse of :func:`affine_line_point`."""
    if len(p) != 2:
        raise ValueError("not a point of a projective line")
    x, y = p.coords
    if linalg.is_zero(y):
        return INFINITY
    return x / y


@dataclass(frozen=True)
class AffineChart:
    """An affine chart given by an invertible matrix.

    A point p has chart coordinates ``(Mp)[:-1] / (Mp)[-1]``; the last row of
    M is the linear form of the hyperplane sent to infinity.
    """

    matrix: tuple

    def __post_init__(self):
        rows = tuple(linalg.to_vector(r) for r in self.matrix)
        if len({len(r) for r in rows}) != 1 or len(rows) != len(rows[0]):
            raise ValueError("chart matrix must be square")
        if linalg.is_zero(linalg.det([list(r) for r in rows])):
            raise NotAFrame("chart matrix is singular")
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def standard(cls, n: int) -> "AffineChart":
        """The chart x_{n+1} != 0."""
        return cls(tuple(tuple(int(i == j) for j in range(n + 1)) for i in range(n + 1)))

    @classmethod
    def from_hyperplane(cls, h: ProjHyperplane) -> "AffineChart":
        """A chart sending h to infinity, pivoting on h's largest entry."""
        coeffs = h.coords
        size = len(coeffs)
        pivot = max(range(size), key=lambda i: abs(coeffs[i]))
        rows = [tuple(int(i == j) for j in range(size)) for i in range(size) if i != pivot]
        rows.append(tuple(coeffs))
        return cls(tuple(rows))

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    @property
    def infinity(self) -> ProjHyperplane:
        return ProjHyperplane(self.matrix[-1])

    @cached_property
    def inverse(self):
        return linalg.inverse([list(r) for r in self.matrix])

    def lift(self, t: Sequence) -> list:
        """Homogeneous representative of an affine point, normalized so the
        infinity form equals 1 on it."""
        t = linalg.to_vector(t)
        if len(t) != self.n:
            raise ValueError(f"expected {self.n} affine coordinates")
        one = Fraction(1) if linalg.is_exact(t) else 1.0
        return linalg.matvec(self.inverse, list(t) + [one])

    def to_chart(self, p: ProjPoint) -> tuple:
        y = linalg.matvec([list(r) for r in self.matrix], list(p.coords))
        if linalg.is_zero(y[-1], max(abs(float(v)) for v in y)):
            raise AtInfinity(f"{p} lies on the hyperplane at infinity")
        return tuple(v / y[-1] for v in y[:-1])

    def from_chart(self, t: Sequence) -> ProjPoint:
        return ProjPoint(self.lift(t))

    def hyperplane_from_chart(self, form: Sequence) -> ProjHyperplane:
        """Hyperplane whose equation in chart coordinates (z, 1) is ``form``."""
        cols = linalg.transpose([list(r) for r in self.matrix])
        return ProjHyperplane(linalg.matvec(cols, list(linalg.to_vector(form))))

    def hyperplane_to_chart(self, h: ProjHyperplane) -> tuple:
        """Coefficients (a, c) of h's equation a·z + c = 0 in chart coordinates."""
        inv_t = linalg.transpose(self.inverse)
        return tuple(linalg.matvec(inv_t, list(h.coords)))


@dataclass(frozen=True)
class Simplex:
    """n+1 projective points spanning P^n."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple(v if isinstance(v, ProjPoint) else ProjPoint(v) for v in self.vertices)
        size = _common_dim(verts)
        if len(verts) != size:
            raise NotAFrame(f"a simplex of P^{size - 1} has {size} vertices, got {len(verts)}")
        if linalg.is_zero(linalg.det([list(v.coords) for v in verts])):
            raise NotAFrame("simplex vertices do not span the space")
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def standard(cls, n: int) -> "Simplex":
        return cls(tuple(ProjPoint(tuple(int(i == j) for j in range(n + 1))) for i in range(n + 1)))

    @property
    def n(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def matrix(self) -> list:
        """Columns are the vertices' canonical representatives."""
        return linalg.transpose([list(v.coords) for v in self.vertices])

    @cached_property
    def inverse(self) -> list:
        return linalg.inverse(self.matrix)

    @cached_property
    def faces(self) -> tuple:
        """Face i is the hyperplane through every vertex except vertex i."""
        return tuple(
            span([v for j, v in enumerate(self.vertices) if j != i]) for i in range(len(self.vertices))
        )

    def coordinates(self, p: ProjPoint) -> list:
        """Coordinates of p in the basis of vertex representatives."""
        return linalg.matvec(self.inverse, list(p.coords))

    def from_coordinates(self, y: Sequence) -> ProjPoint:
        return ProjPoint(linalg.matvec(self.matrix, list(y)))

    def hyperplane_coordinates(self, h: ProjHyperplane) -> list:
        """Coefficients of h's linear form in simplex coordinates."""
        return linalg.matvec(linalg.transpose(self.matrix), list(h.coords))

    def hyperplane_from_coordinates(self, c: Sequence) -> ProjHyperplane:
        return ProjHyperplane(linalg.matvec(linalg.transpose(self.inverse), list(c)))

    def is_generic_point(self, p: ProjPoint) -> bool:
        return not any(lies_on(p, f) for f in self.faces)

    def is_generic_hyperplane(self, h: ProjHyperplane) -> bool:
        return not any(lies_on(v, h) for v in self.vertices)

    def dual(self) -> "Simplex":
        """The simplex of P(V*) whose vertices are the faces' dual points."""
        return self._dual

    @cached_property
    def _dual(self) -> "Simplex":
        return Simplex(tuple(ProjPoint(f.coords) for f in self.faces))
