"""Run the four-polarity check in several dimensions and print the reports."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from polarity_lab.projective_core import Simplex
from polarity_lab.theorem import verify_theorem


@dataclass
class VerifyConfig:
    dims: tuple = (2, 3, 4)
    samples: int = 100
    seed: int = 1


def run(cfg: VerifyConfig) -> bool:
    ok = True
    for n in cfg.dims:
        start = time.perf_counter()
        report = verify_theorem(Simplex.standard(n), cfg.samples, cfg.seed)
        print(report.to_text().rstrip())
        print(f"({time.perf_counter() - start:.2f} s)\n")
        ok = ok and report.ok
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dims", type=int, nargs="+", default=list(VerifyConfig.dims))
    ap.add_argument("--samples", type=int, default=VerifyConfig.samples)
    ap.add_argument("--seed", type=int, default=VerifyConfig.seed)
    a = ap.parse_args()
    raise SystemExit(0 if run(VerifyConfig(tuple(a.dims), a.samples, a.seed)) else 1)
