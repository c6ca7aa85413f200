"""Projective frames, adapted bases, dual frames and the frame polarity p ↦ p•."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import linalg
from .errors import NotAFrame, NotGeneric
from .projective_core import ProjHyperplane, ProjPoint, Simplex, canonical_coords


@dataclass(frozen=True)
class ProjFrame:
    """n+2 points of P^n, any n+1 of which span the space.

    The last point plays the role of the unit point r_+. ``dual`` marks a
    frame living in P(V*) (its points are linear forms on V).
    """

    points: tuple
    dual: bool = False

    def __post_init__(self):
        pts = tuple(p if isinstance(p, ProjPoint) else ProjPoint(p) for p in self.points)
        size = {len(p) for p in pts}
        if len(size) != 1:
            raise NotAFrame("mixed dimensions")
        size = size.pop()
        if len(pts) != size + 1:
            raise NotAFrame(f"a frame of P^{size - 1} has {size + 1} points, got {len(pts)}")
        for subset in combinations(pts, size):
            if linalg.is_zero(linalg.det([list(p.coords) for p in subset])):
                raise NotAFrame("some n+1 points of the frame do not span the space")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points) - 2


@dataclass(frozen=True)
class AdaptedBasis:
    """Basis vectors b_i with r_i = P(b_i) and r_+ = P(b_1 + ... + b_{n+1})."""

    columns: tuple

    def matrix(self) -> list:
        """The basis vectors as matrix columns."""
        return linalg.transpose([list(c) for c in self.columns])


def adapted_basis(frame: ProjFrame) -> AdaptedBasis:
    """The adapted basis, scaled so its first column is canonical."""
    vertices = frame.points[:-1]
    unit = frame.points[-1]
    mat = linalg.transpose([list(p.coords) for p in vertices])
    try:
        weights = linalg.solve(mat, list(unit.coords))
    except ZeroDivisionError as exc:
        raise NotAFrame("frame points are dependent") from exc
    if any(linalg.is_zero(w) for w in weights):
        raise NotAFrame("unit point lies on a face of the frame")
    columns = [[w * x for x in p.coords] for w, p in zip(weights, vertices)]
    first = columns[0]
    target = canonical_coords(first)
    k = next(i for i, x in enumerate(first) if not linalg.is_zero(x))
    s = target[k] / first[k]
    return AdaptedBasis(tuple(tuple(s * x for x in col) for col in columns))


def dual_frame(frame: ProjFrame) -> ProjFrame:
    """The frame of the dual space attached to the dual of an adapted basis."""
    basis = adapted_basis(frame)
    rows = linalg.inverse(basis.matrix())
    unit = [sum(col) for col in zip(*rows)]
    return ProjFrame(tuple(ProjPoint(r) for r in rows) + (ProjPoint(unit),), dual=not frame.dual)


def _check_generic_point(p: ProjPoint, simplex: Simplex):
    if len(p) != len(simplex.vertices):
        raise ValueError("dimension mismatch between point and simplex")
    if not simplex.is_generic_point(p):
        raise NotGeneric(f"{p} lies on a face of the simplex")


def frame_polar_point(p: ProjPoint, simplex: Simplex) -> ProjHyperplane:
    """p•: the hyperplane dual to the unit point of the dual frame of (Δ, p)."""
    _check_generic_point(p, simplex)
    frame = ProjFrame(simplex.vertices + (p,))
    q = dual_frame(frame).points[-1]
    return ProjHyperplane(q.coords)


def frame_polar_hyperplane(h: ProjHyperplane, simplex: Simplex) -> ProjPoint:
    """H•: the frame polarity applied in the dual space, w.r.t. the dual simplex."""
    if not simplex.is_generic_hyperplane(h):
        raise NotGeneric(f"{h} passes through a vertex of the simplex")
    image = frame_polar_point(ProjPoint(h.coords), simplex.dual())
    return ProjPoint(image.coords)
