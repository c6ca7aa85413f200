"""Compare the Newton Santaló point of a polygon with a brute-force grid minimum of vol(K^x)."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

import numpy as np

from polarity_lab.convex_polarity import dual_volume, solve_santalo
from polarity_lab.polytope import ConvexPolytope, centroid


@dataclass
class GridConfig:
    vertices: tuple = ((0, 0), (2, 0), (2, 1), (0, 2))
    resolution: int = 60


def run(cfg: GridConfig):
    body = ConvexPolytope(cfg.vertices).to_float()
    lo = np.min(np.array(body.vertices), axis=0)
    hi = np.max(np.array(body.vertices), axis=0)
    best, best_x = np.inf, None
    for x in np.linspace(lo[0], hi[0], cfg.resolution)[1:-1]:
        for y in np.linspace(lo[1], hi[1], cfg.resolution)[1:-1]:
            if body.contains_interior((x, y)):
                v = float(dual_volume(body, (x, y)))
                if v < best:
                    best, best_x = v, (x, y)
    res = solve_santalo(body)
    print("centroid      ", " ".join(f"{float(c):.8f}" for c in centroid(body)))
    print("newton        ", " ".join(f"{c:.8f}" for c in res.point), f"({res.iterations} iterations)")
    print("grid minimum  ", " ".join(f"{c:.8f}" for c in best_x), f"(vol {best:.6f})")
    print("newton volume ", f"{float(dual_volume(body, res.point)):.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=GridConfig.resolution)
    run(GridConfig(resolution=ap.parse_args().resolution))
