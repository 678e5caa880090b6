"""Scan pure states cos(t/2)|0> + e^{i phi} sin(t/2)|1> for the most negative V(j).

    python scripts/negativity_scan.py --d 3 --grid 61
"""

import argparse

import numpy as np

from finite_radon.geometry import make_geometry
from finite_radon.phase_space import quasi_distribution


def scan(d: int, grid: int):
    g = make_geometry(d)
    best = (np.inf, None, None)
    for t in np.linspace(0, np.pi, grid):
        for phi in np.linspace(0, 2 * np.pi, grid, endpoint=False):
            psi = np.zeros(d, dtype=complex)
            psi[0], psi[1] = np.cos(t / 2), np.exp(1j * phi) * np.sin(t / 2)
            V = quasi_distribution(np.outer(psi, psi.conj()), g).values
            k = int(np.argmin(V))
            if V[k] < best[0]:
                best = (float(V[k]), (float(t), float(phi)), g.line_at(k))
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--grid", type=int, default=61)
    ns = ap.parse_args()
    value, (t, phi), line = scan(ns.d, ns.grid)
    print(f"min V = {value:.6f} at t={t:.4f}, phi={phi:.4f}, line {tuple(line)}")


if __name__ == "__main__":
    main()
