"""Fourth harmonics, the harmonic polarity p ↦ p#, and ruler construction traces."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import linalg
from .errors import (
    BadAuxiliary,
    ConcurrencyFailure,
    DegenerateQuadruple,
    DegenerateSpan,
    DegenerateTriple,
    NotCollinear,
    NotGeneric,
    ParseError,
)
from .projective_core import (
    ProjHyperplane,
    ProjPoint,
    Simplex,
    intersect,
    is_collinear,
    join,
    line_coordinates,
    line_meet_hyperplane,
    lies_on,
    span,
)


def fourth_harmonic(a: ProjPoint, b: ProjPoint, c: ProjPoint) -> ProjPoint:
    """The point d with cross_ratio(a, b, c, d) = -1.

    Writing c = s·a + t·b, the conjugate is s·a - t·b.
    """
    if a == b:
        raise DegenerateTriple("a == b")
    if c == a or c == b:
        raise DegenerateTriple("c coincides with a or b")
    try:
        s, t = line_coordinates(a, b, c)
    except DegenerateQuadruple as exc:
        raise DegenerateTriple(str(exc)) from exc
    return ProjPoint([s * x - t * y for x, y in zip(a.coords, b.coords)])


def _hyperplane_through(points: Sequence[ProjPoint]) -> ProjHyperplane:
    kernel = linalg.nullspace([list(p.coords) for p in points])
    if len(kernel) != 1:
        raise ConcurrencyFailure(f"points span codimension {len(kernel)}, expected a hyperplane")
    return ProjHyperplane(kernel[0])


def _check_point(p: ProjPoint, simplex: Simplex):
    if len(p) != len(simplex.vertices):
        raise ValueError("dimension mismatch between point and simplex")
    if not simplex.is_generic_point(p):
        raise NotGeneric(f"{p} lies on a face of the simplex")


def _line_meet_span(a: ProjPoint, b: ProjPoint, subspace: Sequence[ProjPoint]) -> ProjPoint:
    """(ab) ∩ span(subspace), when that span has codimension one in span(a, b, subspace)."""
    cols = [list(r) for r in zip(*(v.coords for v in subspace), a.coords, b.coords)]
    kernel = linalg.nullspace(cols)
    if len(kernel) != 1:
        raise DegenerateSpan("line does not meet the subspace in a single point")
    k = kernel[0]
    return ProjPoint([sum(c * v.coords[r] for c, v in zip(k, subspace)) for r in range(len(a))])


def _polar_points_recursive(p: ProjPoint, vertices: tuple) -> list[ProjPoint]:
    """Points spanning the harmonic polar of p w.r.t. the simplex ``vertices``.

    On a line this is the fourth harmonic. Otherwise u_i = (p_i p) ∩ face_i
    is polarized inside face_i w.r.t. the face's own simplex.
    """
    if len(vertices) == 2:
        return [fourth_harmonic(vertices[0], vertices[1], p)]
    out = []
    for i, vi in enumerate(vertices):
        face = vertices[:i] + vertices[i + 1:]
        u = _line_meet_span(vi, p, face)
        out.extend(_polar_points_recursive(u, face))
    return out


def harmonic_polar_point(p: ProjPoint, simplex: Simplex, method: str = "recursive") -> ProjHyperplane:
    """p#, the harmonic polar of a generic point.

    ``method="recursive"`` polarizes u_i = H_i ∩ (p_i p) inside each face;
    ``method="pairs"`` uses the fourth harmonics v'_ij of (p_i, p_j, v_ij).
    """
    _check_point(p, simplex)
    if method == "recursive":
        pts = _polar_points_recursive(p, simplex.vertices)
    elif method == "pairs":
        pts = [v for _, _, _, v in pair_harmonics(p, simplex)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return _hyperplane_through(pts)


def pair_harmonics(p: ProjPoint, simplex: Simplex) -> list[tuple]:
    """Tuples (i, j, v_ij, v'_ij) for every edge (p_i p_j) of the simplex.

    v_ij is the edge's intersection with the hyperplane through p and the
    other vertices; v'_ij is its fourth harmonic w.r.t. (p_i, p_j).
    """
    _check_point(p, simplex)
    verts = simplex.vertices
    out = []
    for i, j in combinations(range(len(verts)), 2):
        others = [v for k, v in enumerate(verts) if k not in (i, j)]
        h = span(others + [p])
        v = line_meet_hyperplane(verts[i], verts[j], h)
        out.append((i, j, v, fourth_harmonic(verts[i], verts[j], v)))
    return out


def harmonic_points(p: ProjPoint, simplex: Simplex) -> tuple[list, list]:
    """Planar case: u_i = (p_i p) ∩ D_i and u'_i its fourth harmonic on D_i."""
    if simplex.n != 2:
        raise ValueError("harmonic_points is the planar construction")
    _check_point(p, simplex)
    us, uprimes = [], []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        pi, pj, pk = simplex.vertices[i], simplex.vertices[j], simplex.vertices[k]
        u = intersect(join(pi, p), join(pj, pk))
        us.append(u)
        uprimes.append(fourth_harmonic(pj, pk, u))
    return us, uprimes


def harmonic_polar_hyperplane(h: ProjHyperplane, simplex: Simplex) -> ProjPoint:
    """D#, the harmonic pole of a generic hyperplane.

    In the plane: u'_i = D ∩ D_i, u_i = fourth harmonic of (p_j, p_k, u'_i),
    and the lines (p_i u_i) concur at D#. In higher dimension the harmonic
    polarity is applied in the dual space w.r.t. the dual simplex.
    """
    if len(h) != len(simplex.vertices):
        raise ValueError("dimension mismatch between hyperplane and simplex")
    if not simplex.is_generic_hyperplane(h):
        raise NotGeneric(f"{h} passes through a vertex of the simplex")
    if simplex.n != 2:
        image = harmonic_polar_point(ProjPoint(h.coords), simplex.dual())
        return ProjPoint(image.coords)
    lines = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        pi, pj, pk = simplex.vertices[i], simplex.vertices[j], simplex.vertices[k]
        uprime = intersect(h, join(pj, pk))
        u = fourth_harmonic(pj, pk, uprime)
        lines.append(join(pi, u))
    x = intersect(lines[0], lines[1])
    if not lies_on(x, lines[2]):
        raise ConcurrencyFailure("the three lines (p_i u_i) are not concurrent")
    return x


# --- ruler construction traces ---------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    kind: str  # "pick-point" | "join" | "meet"
    label: str
    args: tuple
    value: object
    figure_line: int | None = None


@dataclass
class ConstructionTrace:
    steps: list = field(default_factory=list)
    result: str = ""

    def pick(self, label, p: ProjPoint):
        self.steps.append(TraceStep("pick-point", label, tuple(str(x) for x in p.coords), p))
        return p

    def join(self, label, a, b, figure_line=None):
        pa, pb = self[a], self[b]
        try:
            line = join(pa, pb)
        except DegenerateSpan as exc:
            raise BadAuxiliary(f"cannot join {a} and {b}") from exc
        self.steps.append(TraceStep("join", label, (a, b), line, figure_line))
        return line

    def meet(self, label, l1, l2):
        try:
            pt = intersect(self[l1], self[l2])
        except DegenerateSpan as exc:
            raise BadAuxiliary(f"lines {l1} and {l2} coincide") from exc
        self.steps.append(TraceStep("meet", label, (l1, l2), pt))
        return pt

    def __getitem__(self, label):
        for s in self.steps:
            if s.label == label:
                return s.value
        raise KeyError(label)

    @property
    def value(self):
        return self[self.result]

    def to_text(self) -> str:
        lines = []
        for k, s in enumerate(self.steps, 1):
            lines.append(f"STEP {k} {s.kind} {s.label} {' '.join(s.args)}")
        for s in self.steps:
            if s.figure_line is not None:
                lines.append(f"FIGLINE {s.label} {s.figure_line}")
        lines.append(f"RESULT {self.result}")
        return "\n".join(lines) + "\n"


def replay(text: str):
    """Re-execute a serialized trace with join/meet only; returns the final element."""
    values = {}
    result = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        tok = raw.split()
        if not tok or tok[0].startswith("#"):
            continue
        if tok[0] == "STEP":
            if len(tok) < 4:
                raise ParseError("truncated STEP", lineno)
            kind, label, args = tok[2], tok[3], tok[4:]
            try:
                if kind == "pick-point":
                    values[label] = ProjPoint(args)
                elif kind == "join":
                    values[label] = join(values[args[0]], values[args[1]])
                elif kind == "meet":
                    values[label] = intersect(values[args[0]], values[args[1]])
                else:
                    raise ParseError(f"unknown step kind {kind!r}", lineno)
            except KeyError as exc:
                raise ParseError(f"undefined label {exc.args[0]}", lineno) from exc
        elif tok[0] == "RESULT":
            result = tok[1]
        elif tok[0] == "FIGLINE":
            continue
        else:
            raise ParseError(f"unknown record {tok[0]!r}", lineno)
    if result is None or result not in values:
        raise ParseError("trace has no valid RESULT")
    return values[result]


def ruler_trace(a: ProjPoint, b: ProjPoint, c: ProjPoint, m: ProjPoint, n: ProjPoint) -> ConstructionTrace:
    """Complete-quadrangle construction of the fourth harmonic of (a, b, c).

    x = (an) ∩ (bm), y = (am) ∩ (bn), result = (xy) ∩ (ab). The four
    quadrangle sides carry figure numbers 1-4 in construction order.
    """
    if a.dim != 2:
        raise ValueError("ruler constructions live in the projective plane")
    fourth_harmonic(a, b, c)  # validates the triple
    if is_collinear([a, b, m]):
        raise BadAuxiliary("m lies on the line (ab)")
    if n == c or n == m or not is_collinear([c, m, n]):
        raise BadAuxiliary("n must lie on (cm) and differ from c and m")
    t = ConstructionTrace()
    t.pick("a", a)
    t.pick("b", b)
    t.pick("c", c)
    t.pick("m", m)
    t.pick("n", n)
    t.join("ab", "a", "b")
    t.join("cm", "c", "m")
    t.join("am", "a", "m", figure_line=1)
    t.join("bm", "b", "m", figure_line=2)
    t.join("an", "a", "n", figure_line=3)
    t.join("bn", "b", "n", figure_line=4)
    t.meet("x", "an", "bm")
    t.meet("y", "am", "bn")
    t.join("xy", "x", "y")
    t.meet("d", "xy", "ab")
    t.result = "d"
    return t


def harmonic_trace(p: ProjPoint, simplex: Simplex) -> ConstructionTrace:
    """Ruler trace of the planar harmonic polar p#, using m = p_i, n = p.

    With these auxiliary points u'_i = (p_j p_k) ∩ (u_j u_k).
    """
    if simplex.n != 2:
        raise ValueError("planar construction only")
    _check_point(p, simplex)
    t = ConstructionTrace()
    for i, v in enumerate(simplex.vertices, 1):
        t.pick(f"p{i}", v)
    t.pick("p", p)
    for i in range(1, 4):
        j, k = [x for x in range(1, 4) if x != i]
        t.join(f"P{i}", f"p{i}", "p")
        t.join(f"D{i}", f"p{j}", f"p{k}")
        t.meet(f"u{i}", f"P{i}", f"D{i}")
    for i in range(1, 4):
        j, k = [x for x in range(1, 4) if x != i]
        t.join(f"U{i}", f"u{j}", f"u{k}")
        t.meet(f"v{i}", f"U{i}", f"D{i}")
    t.join("polar", "v1", "v2")
    t.result = "polar"
    return t
