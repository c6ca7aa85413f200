"""Iterate the double convex polar on a polygon and write the orbit as CSV."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from polarity_lab.convex_polarity import double_polar_orbit
from polarity_lab.polytope import ConvexPolytope, centroid


@dataclass
class OrbitConfig:
    vertices: tuple = ((0, 0), (2, 0), (2, 1), (0, 2))
    start: tuple | None = None  # centroid when omitted
    steps: int = 30


def run(cfg: OrbitConfig) -> str:
    body = ConvexPolytope(cfg.vertices)
    result = double_polar_orbit(cfg.start or centroid(body), body, cfg.steps)
    return result.to_csv()


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=OrbitConfig.steps)
    ap.add_argument("--start", type=float, nargs=2)
    a = ap.parse_args()
    print(run(OrbitConfig(start=tuple(a.start) if a.start else None, steps=a.steps)), end="")
