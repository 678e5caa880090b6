"""Median trace distance of linear-inversion tomography versus shots per basis.

    python scripts/scaling_study.py --d 3 --trials 20 --shots 100 1000 10000 100000
"""

import argparse
from dataclasses import dataclass, field

import numpy as np

from finite_radon.geometry import make_geometry
from finite_radon.tomography import (
    estimate_marginals,
    random_pure_state,
    reconstruct_state,
    simulate_measurements,
)


@dataclass
class ScalingConfig:
    d: int = 3
    trials: int = 20
    shots: list[int] = field(default_factory=lambda: [100, 1_000, 10_000, 100_000])
    project_psd: bool = False


def run(cfg: ScalingConfig) -> list[dict]:
    g = make_geometry(cfg.d)
    rows = []
    for n in cfg.shots:
        tds, fids = [], []
        for seed in range(cfg.trials):
            psi = random_pure_state(cfg.d, np.random.default_rng(seed))
            rho = np.outer(psi, psi.conj())
            rec = simulate_measurements(rho, n, seed, g)
            rep = reconstruct_state(estimate_marginals(rec), g, cfg.project_psd, true_rho=rho)
            tds.append(rep.trace_distance)
            fids.append(rep.fidelity)
        rows.append({"shots": n, "median_td": float(np.median(tds)), "median_fidelity": float(np.median(fids))})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--shots", type=int, nargs="+", default=[100, 1_000, 10_000, 100_000])
    ap.add_argument("--project-psd", action="store_true")
    ns = ap.parse_args()
    rows = run(ScalingConfig(ns.d, ns.trials, ns.shots, ns.project_psd))
    print(f"{'shots':>8}  {'median TD':>12}  {'median F':>10}")
    for r in rows:
        print(f"{r['shots']:>8}  {r['median_td']:>12.6f}  {r['median_fidelity']:>10.6f}")
    if len(rows) > 1:
        x = np.log([r["shots"] for r in rows])
        y = np.log([r["median_td"] for r in rows])
        print(f"log-log slope: {np.polyfit(x, y, 1)[0]:.3f}")


if __name__ == "__main__":
    main()
