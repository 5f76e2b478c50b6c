"""Check the projective inversion identity on random functions and report residuals.

    python scripts/inversion_sweep.py --n 2 --functions 50 --points 20 --seed 1
"""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

import numpy as np

from eulercalc import radon as rd
from eulercalc import sampling


@dataclass
class InversionConfig:
    n: int = 2
    functions: int = 50
    points: int = 20
    max_terms: int = 5
    with_constant: bool = True
    seed: int = 0


def run(cfg: InversionConfig) -> dict:
    rng = np.random.default_rng(cfg.seed)
    nonzero = 0
    checked = 0
    integrals = []
    t0 = time.perf_counter()
    for _ in range(cfg.functions):
        phi = sampling.random_proj_fn(rng, cfg.n, 1, cfg.max_terms, with_constant=cfg.with_constant)
        report = rd.verify_inversion(phi, sampling.sample_points(rng, phi, cfg.points))
        checked += len(report.points)
        nonzero += sum(1 for r in report.residuals if r != 0)
        integrals.append(str(report.euler_integral))
    return {
        "config": asdict(cfg),
        "points_checked": checked,
        "nonzero_residuals": nonzero,
        "euler_integrals": integrals,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(InversionConfig()).items():
        kind = (lambda s: s.lower() in ("1", "true", "yes")) if isinstance(default, bool) else type(default)
        ap.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, default=default)
    result = run(InversionConfig(**vars(ap.parse_args())))
    print(json.dumps(result, indent=2))


if __name__ == "__main__":
    main()
