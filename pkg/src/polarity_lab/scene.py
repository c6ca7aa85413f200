"""Line-oriented scene files.

::

    DIM 2
    MODE exact
    POINT p1 1 0 0
    HYPERPLANE D 6 3 2
    POLYTOPE K (0,0) (2,0) (2,1) (0,2)
    SIMPLEX T p1 p2 p3
    FORM C ((1,1,1),1,1)

Rationals are written ``a/b``; ``#`` starts a comment.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic_polarity import SymmetricForm
from .errors import GeometryError, ParseError
from .polytope import ConvexPolytope
from .projective_core import ProjHyperplane, ProjPoint, Simplex


@dataclass
class Scene:
    dim: int = 2
    mode: str = "exact"
    points: dict = field(default_factory=dict)
    hyperplanes: dict = field(default_factory=dict)
    polytopes: dict = field(default_factory=dict)
    simplices: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)

    def names(self) -> set:
        return set(self.points) | set(self.hyperplanes) | set(self.polytopes) | set(self.simplices) | set(self.forms)

    @property
    def simplex(self) -> Simplex | None:
        """The first declared simplex, if any."""
        return next(iter(self.simplices.values()), None)

    def scalar(self, text: str):
        value = Fraction(text)
        return float(value) if self.mode == "float" else value


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_scene(text: str) -> Scene:
    scene = Scene()
    seen_dim = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0].upper()
        try:
            if key == "DIM":
                if seen_dim or scene.names():
                    raise ParseError("DIM must come first and only once", lineno)
                scene.dim = int(tok[1])
                if scene.dim < 1:
                    raise ParseError("dimension must be positive", lineno)
                seen_dim = True
                continue
            if key == "MODE":
                if tok[1] not in ("exact", "float"):
                    raise ParseError(f"unknown mode {tok[1]!r}", lineno)
                scene.mode = tok[1]
                continue
            if len(tok) < 2:
                raise ParseError(f"{key} needs a name", lineno)
            name = tok[1]
            if name in scene.names():
                raise ParseError(f"duplicate name {name!r}", lineno)
            args = tok[2:]
            if key in ("POINT", "HYPERPLANE"):
                if len(args) != scene.dim + 1:
                    raise ParseError(f"{key} needs {scene.dim + 1} coordinates", lineno)
                coords = [scene.scalar(a) for a in args]
                if key == "POINT":
                    scene.points[name] = ProjPoint(coords)
                else:
                    scene.hyperplanes[name] = ProjHyperplane(coords)
            elif key == "POLYTOPE":
                verts = []
                for a in args:
                    if not (a.startswith("(") and a.endswith(")")):
                        raise ParseError(f"vertex {a!r} must look like (x,y)", lineno)
                    parts = a[1:-1].split(",")
                    if len(parts) != scene.dim:
                        raise ParseError(f"vertex {a!r} needs {scene.dim} coordinates", lineno)
                    verts.append(tuple(scene.scalar(x) for x in parts))
                scene.polytopes[name] = ConvexPolytope(tuple(verts))
            elif key == "SIMPLEX":
                if len(args) != scene.dim + 1:
                    raise ParseError(f"SIMPLEX needs {scene.dim + 1} point names", lineno)
                missing = [a for a in args if a not in scene.points]
                if missing:
                    raise ParseError(f"undefined points {missing}", lineno)
                scene.simplices[name] = Simplex(tuple(scene.points[a] for a in args))
            elif key == "FORM":
                records = [ast.literal_eval(a) for a in args]
                for r in records:
                    if len(r) != 3 or len(r[0]) != scene.dim + 1:
                        raise ParseError(f"bad form record {r!r}", lineno)
                scene.forms[name] = SymmetricForm.from_records(records)
            else:
                raise ParseError(f"unknown keyword {tok[0]!r}", lineno)
        except ParseError:
            raise
        except (GeometryError, ValueError, IndexError, SyntaxError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), lineno) from exc
    return scene


def load_scene(path) -> Scene:
    with open(path, encoding="utf-8") as fh:
        return parse_scene(fh.read())


def dump_scene(scene: Scene) -> str:
    lines = [f"DIM {scene.dim}", f"MODE {scene.mode}"]
    for name, p in scene.points.items():
        lines.append(f"POINT {name} " + " ".join(_fmt(x) for x in p.coords))
    for name, h in scene.hyperplanes.items():
        lines.append(f"HYPERPLANE {name} " + " ".join(_fmt(x) for x in h.coords))
    for name, k in scene.polytopes.items():
        lines.append(f"POLYTOPE {name} " + " ".join("(" + ",".join(_fmt(x) for x in v) + ")" for v in k.vertices))
    for name, s in scene.simplices.items():
        labels = []
        for v in s.vertices:
            labels.append(next(n for n, p in scene.points.items() if p == v))
        lines.append(f"SIMPLEX {name} " + " ".join(labels))
    for name, f in scene.forms.items():
        recs = " ".join(f"({tuple(a)!r},{num},{den})".replace(" ", "") for a, num, den in f.to_records())
        lines.append(f"FORM {name} {recs}")
    return "\n".join(lines) + "\n"


def standard_scene(n: int = 2) -> Scene:
    scene = Scene(dim=n)
    sim = Simplex.standard(n)
    for i, v in enumerate(sim.vertices, 1):
        scene.points[f"p{i}"] = v
    scene.simplices["D"] = sim
    return scene
