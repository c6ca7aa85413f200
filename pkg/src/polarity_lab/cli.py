"""``polarity-lab`` command line.

Exit codes: 0 success, 1 verification failure, 2 parse or input error,
3 solver failure.
"""
from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from .convex_polarity import SantaloConfig, double_polar_orbit, dual_centroid, solve_santalo
from .errors import GeometryError, NoConvergence, ParseError, UnsupportedDimension
from .figures import FIGURES, render_figure
from .polytope import ConvexPolytope, centroid
from .projective_core import ProjPoint, Simplex
from .scene import Scene, load_scene, standard_scene
from .theorem import verify_theorem

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SOLVER = 0, 1, 2, 3

DEFAULT_BODY = ((0, 0), (2, 0), (2, 1), (0, 2))


def _scene(args) -> Scene:
    scene = load_scene(args.scene) if args.scene else standard_scene(args.dim)
    if args.mode:
        scene.mode = args.mode
    return scene


def _float_simplex(s: Simplex) -> Simplex:
    return Simplex(tuple(ProjPoint([float(x) for x in v.coords]) for v in s.vertices))


def _emit(text: str, out):
    if out and out != "-":
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_tuple(text: str, n: int) -> tuple:
    parts = text.strip("()").split(",")
    if len(parts) != n:
        raise ParseError(f"expected {n} comma-separated coordinates, got {text!r}")
    try:
        return tuple(Fraction(p) for p in parts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def _body(scene: Scene, name: str | None) -> ConvexPolytope:
    if name:
        if name not in scene.polytopes:
            raise ParseError(f"no polytope named {name!r}")
        body = scene.polytopes[name]
    elif scene.polytopes:
        body = next(iter(scene.polytopes.values()))
    else:
        body = ConvexPolytope(DEFAULT_BODY)
    return body.to_float() if scene.mode == "float" or not body.is_simplex else body


def cmd_verify(args) -> int:
    scene = _scene(args)
    simplex = scene.simplex
    if simplex is None:
        raise ParseError("scene declares no SIMPLEX")
    if scene.mode == "float":
        simplex = _float_simplex(simplex)
    report = verify_theorem(simplex, args.samples, args.seed)
    _emit(report.to_text(), args.out)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_figure(args) -> int:
    scene = _scene(args)
    if scene.dim != 2:
        raise UnsupportedDimension("figures are planar")
    simplex = scene.simplex or Simplex.standard(2)
    p = scene.points.get(args.point) if args.point else None
    if p is None:
        p = scene.points.get("p", ProjPoint([1, 1, 1]))
    ruler = None
    if all(k in scene.points for k in "abcmn"):
        ruler = tuple(scene.points[k] for k in "abcmn")
    _emit(render_figure(args.which, p, simplex, ruler), args.out)
    return EXIT_OK


def cmd_santalo(args) -> int:
    scene = _scene(args)
    body = _body(scene, args.body).to_float()
    start = _parse_tuple(args.start, body.n) if args.start else None
    cfg = SantaloConfig(tol=args.tol, max_iter=args.max_iter, start=start)
    res = solve_santalo(body, cfg)
    cen = centroid(body)
    lines = [
        "santalo point: " + " ".join(f"{v:.12g}" for v in res.point),
        f"gradient norm: {res.gradient_norm:.3e}",
        f"iterations: {res.iterations}",
        "centroid of K: " + " ".join(f"{float(v):.12g}" for v in cen),
        "centroid of K^x: " + " ".join(f"{float(v):.3e}" for v in dual_centroid(body, res.point)),
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_orbit(args) -> int:
    scene = _scene(args)
    body = _body(scene, args.body)
    start = _parse_tuple(args.start, body.n) if args.start else centroid(body)
    result = double_polar_orbit(start, body, args.steps)
    _emit(result.to_csv(), args.out)
    if result.stopped:
        print(f"orbit stopped: {result.stopped}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scene", help="scene file (default: the standard simplex)")
    common.add_argument("--dim", type=int, default=2, help="dimension of the default scene")
    common.add_argument("--mode", choices=("exact", "float"), help="override the scene's arithmetic mode")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="polarity-lab", description="Polarities with respect to a simplex.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check that the four polarities coincide")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", parents=[common], help="write an SVG figure")
    p.add_argument("--which", choices=FIGURES, default="harmonic")
    p.add_argument("--point", help="name of the scene point to use (default: 'p' or [1:1:1])")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("santalo", parents=[common], help="solve for the Santaló point of a body")
    p.add_argument("--body", help="polytope name (default: first polytope in the scene)")
    p.add_argument("--start", help="starting point x,y (default: centroid)")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=100)
    p.set_defaults(func=cmd_santalo)

    p = sub.add_parser("orbit", parents=[common], help="iterate the double convex polar as CSV")
    p.add_argument("--body", help="polytope name (default: first polytope in the scene)")
    p.add_argument("--start", help="starting point x,y (default: centroid)")
    p.add_argument("--steps", type=int, default=20)
    p.set_defaults(func=cmd_orbit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except NoConvergence as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        for k, x in enumerate(exc.iterates):
            print(f"  iterate {k}: " + " ".join(f"{float(v):.12g}" for v in x), file=sys.stderr)
        return EXIT_SOLVER
    except (ParseError, GeometryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
