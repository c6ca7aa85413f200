"""The four polarities w.r.t. a simplex, side by side, and seeded verification runs."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .algebraic_polarity import cubic_polar_point, last_polar_inverse
from .convex_polarity import simplex_convex_polar
from .frame_polarity import frame_polar_hyperplane, frame_polar_point
from .harmonic_polarity import harmonic_polar_hyperplane, harmonic_polar_point
from .projective_core import ProjHyperplane, ProjPoint, Simplex

POLARITIES = ("frame", "harmonic", "cubic", "convex")


def four_polars(p: ProjPoint, simplex: Simplex) -> dict:
    """p•, p#, p⊥, p° for a generic point."""
    return {
        "frame": frame_polar_point(p, simplex),
        "harmonic": harmonic_polar_point(p, simplex),
        "cubic": cubic_polar_point(p, simplex),
        "convex": simplex_convex_polar(p, simplex),
    }


def four_poles(h: ProjHyperplane, simplex: Simplex) -> dict:
    """H•, H#, H⊥, H° for a generic hyperplane."""
    return {
        "frame": frame_polar_hyperplane(h, simplex),
        "harmonic": harmonic_polar_hyperplane(h, simplex),
        "cubic": last_polar_inverse(h, simplex),
        "convex": simplex_convex_polar(h, simplex),
    }


def inverse_map(name: str):
    return {
        "frame": frame_polar_hyperplane,
        "harmonic": harmonic_polar_hyperplane,
        "cubic": last_polar_inverse,
        "convex": simplex_convex_polar,
    }[name]


def random_generic(rng: random.Random, simplex: Simplex, kind=ProjPoint, lo=-9, hi=9):
    """A uniformly drawn integer point (or hyperplane) that is generic; also
    returns how many draws were rejected."""
    rejected = 0
    size = simplex.n + 1
    exact = all(v.exact for v in simplex.vertices)
    while True:
        coords = [rng.randint(lo, hi) for _ in range(size)]
        if not any(coords):
            rejected += 1
            continue
        x = kind(coords if exact else [float(c) for c in coords])
        generic = simplex.is_generic_point(x) if kind is ProjPoint else simplex.is_generic_hyperplane(x)
        if generic:
            return x, rejected
        rejected += 1


@dataclass
class VerificationReport:
    dimension: int
    samples: int
    seed: int
    rejections: int = 0
    pair_agreement: dict = field(default_factory=dict)
    involution_failures: dict = field(default_factory=dict)
    method_agreement: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        pairs_ok = all(v == self.samples for v in self.pair_agreement.values())
        inv_ok = not any(self.involution_failures.values())
        return pairs_ok and inv_ok and self.method_agreement == self.samples

    def to_text(self) -> str:
        lines = [
            f"dimension {self.dimension}, samples {self.samples}, seed {self.seed}",
            f"rejected non-generic draws: {self.rejections}",
        ]
        for (a, b), count in sorted(self.pair_agreement.items()):
            lines.append(f"{a} == {b}: {count}/{self.samples}")
        lines.append(f"harmonic recursive == pairs method: {self.method_agreement}/{self.samples}")
        for name in POLARITIES:
            lines.append(f"{name} involutive: {self.samples - self.involution_failures.get(name, 0)}/{self.samples}")
        for f in self.failures[:10]:
            lines.append(f"FAIL {f}")
        lines.append("RESULT " + ("all four polarities coincide" if self.ok else "MISMATCH"))
        return "\n".join(lines) + "\n"


def verify_theorem(simplex: Simplex, samples: int = 100, seed: int = 1, rng=None, tol: float = 1e-9) -> VerificationReport:
    """Check p• = p# = p⊥ = p° and involutivity on seeded random generic points.

    Exact simplices are compared by canonical equality; float simplices up
    to ``tol``.
    """
    rng = rng or random.Random(seed)
    exact = all(v.exact for v in simplex.vertices)

    def same(a, b):
        return a == b if exact else a.isclose(b, tol)

    report = VerificationReport(simplex.n, samples, seed)
    report.pair_agreement = {pair: 0 for pair in combinations(POLARITIES, 2)}
    report.involution_failures = {name: 0 for name in POLARITIES}
    for _ in range(samples):
        p, rejected = random_generic(rng, simplex)
        report.rejections += rejected
        polars = four_polars(p, simplex)
        for a, b in report.pair_agreement:
            if same(polars[a], polars[b]):
                report.pair_agreement[(a, b)] += 1
            else:
                report.failures.append(f"{p}: {a}={polars[a]} {b}={polars[b]}")
        if same(harmonic_polar_point(p, simplex, method="pairs"), polars["harmonic"]):
            report.method_agreement += 1
        for name in POLARITIES:
            if not same(inverse_map(name)(polars[name], simplex), p):
                report.involution_failures[name] += 1
                report.failures.append(f"{p}: {name} not involutive")
    return report
