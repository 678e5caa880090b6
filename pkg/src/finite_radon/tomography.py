"""Finite-shot MUB tomography: simulate, estimate marginals, invert.

Sampling uses numpy's PCG64 generator. A single integer seed is expanded with
``SeedSequence(seed).spawn(d + 1)``, giving basis ``b`` its own stream
(child ``b + 1``), so each basis is drawn independently and reproducibly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Geometry
from .mub import _all_point_operators
from .phase_space import PointMarginals, radon_forward_direct, radon_inverse, reconstruct_operator

VALIDITY_TOL = 1e-9
EIG_CUTOFF = 1e-14


class InvalidStateError(ValueError):
    """Raised when an operator is not a valid density matrix."""


@dataclass
class MeasurementRecord:
    d: int
    shots: int
    counts: np.ndarray  # (d+1, d): row b+1 holds outcome counts for basis b

    def __post_init__(self):
        self.counts = np.asarray(self.counts, dtype=np.int64)
        if self.counts.shape != (self.d + 1, self.d):
            raise ValueError(f"counts shape {self.counts.shape} != {(self.d + 1, self.d)}")
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if (self.counts < 0).any():
            raise ValueError("counts must be non-negative")
        sums = self.counts.sum(axis=1)
        if (sums != self.shots).any():
            b = int(np.flatnonzero(sums != self.shots)[0]) - 1
            raise ValueError(f"counts for basis {b} sum to {sums[b + 1]}, expected {self.shots}")


@dataclass
class ReconstructionReport:
    rho_hat: np.ndarray
    shots: int | None
    min_eigenvalue: float
    fidelity: float | None = None
    trace_distance: float | None = None
    projected: bool = False
    extra: dict = field(default_factory=dict)


def check_density_matrix(rho, d: int, tol: float = VALIDITY_TOL) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (d, d):
        raise InvalidStateError(f"state shape {rho.shape} does not match d={d}")
    if np.abs(rho - rho.conj().T).max() > tol:
        raise InvalidStateError("state is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidStateError(f"state trace is {np.trace(rho).real:.6g}, not 1")
    if np.linalg.eigvalsh(rho).min() < -tol:
        raise InvalidStateError("state is not positive semidefinite")
    return rho


def basis_probabilities(rho, g: Geometry) -> np.ndarray:
    """Outcome distributions, shape ``(d+1, d)``, row ``b+1`` for basis ``b``."""
    return radon_forward_direct(rho, g).values.real.reshape(g.d + 1, g.d)


def simulate_measurements(rho, shots: int, seed: int, g: Geometry) -> MeasurementRecord:
    """Draw ``shots`` outcomes per basis from ``tr(rho A_(m,b))``."""
    d = g.d
    if isinstance(shots, bool) or int(shots) != shots or shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots!r}")
    rho = check_density_matrix(rho, d)
    probs = np.clip(basis_probabilities(rho, g), 0.0, None)
    probs /= probs.sum(axis=1, keepdims=True)
    streams = np.random.SeedSequence(seed).spawn(d + 1)
    counts = np.array(
        [np.random.Generator(np.random.PCG64(s)).multinomial(shots, pr) for s, pr in zip(streams, probs)]
    )
    return MeasurementRecord(d, int(shots), counts)


def estimate_marginals(rec: MeasurementRecord) -> PointMarginals:
    return PointMarginals(rec.d, (rec.counts / rec.shots).reshape(-1))


def exact_marginals(rho, g: Geometry) -> PointMarginals:
    return PointMarginals(g.d, basis_probabilities(rho, g).reshape(-1))


def project_psd(rho: np.ndarray) -> np.ndarray:
    """Clip eigenvalues at zero and renormalize to unit trace."""
    w, U = np.linalg.eigh((rho + rho.conj().T) / 2)
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    return (U * w) @ U.conj().T


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity ``(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2``, clipped to [0, 1].

    ``rho`` must be PSD; ``sigma`` may be an unphysical estimate, in which case
    negative eigenvalues of the inner product are dropped.
    """
    w, U = np.linalg.eigh(rho)
    w[w < EIG_CUTOFF * w.max()] = 0.0
    sq = (U * np.sqrt(w)) @ U.conj().T
    inner = sq @ sigma @ sq
    ev = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    # sqrt amplifies roundoff-level eigenvalues (1e-17 -> 3e-9)
    ev[ev < EIG_CUTOFF * max(ev.max(), 0.0)] = 0.0
    f = float(np.sum(np.sqrt(ev)) ** 2)
    return min(max(f, 0.0), 1.0)


def trace_distance(rho, sigma) -> float:
    diff = np.asarray(rho) - np.asarray(sigma)
    return 0.5 * float(np.abs(np.linalg.eigvalsh((diff + diff.conj().T) / 2)).sum())


def reconstruct_state(
    p: PointMarginals,
    g: Geometry,
    project_psd_flag: bool = False,
    true_rho=None,
    shots: int | None = None,
) -> ReconstructionReport:
    """Linear inversion: inverse Radon transform followed by the line expansion.

    Equivalent to ``sum_alpha p_alpha A_alpha - I``. Scoring fields are filled
    only when ``true_rho`` is given.
    """
    rho_hat = reconstruct_operator(radon_inverse(p, g), g)
    if project_psd_flag:
        rho_hat = project_psd(rho_hat)
    report = ReconstructionReport(
        rho_hat=rho_hat,
        shots=shots,
        min_eigenvalue=float(np.linalg.eigvalsh(rho_hat).min()),
        projected=project_psd_flag,
    )
    if true_rho is not None:
        true_rho = np.asarray(true_rho, dtype=complex)
        report.fidelity = fidelity(true_rho, rho_hat)
        report.trace_distance = trace_distance(true_rho, rho_hat)
    return report


def point_expansion(p: PointMarginals, g: Geometry) -> np.ndarray:
    """``sum_alpha p_alpha A_alpha - I``: the closed form of :func:`reconstruct_state`."""
    A = _all_point_operators(g.d)
    return np.tensordot(p.values, A, axes=1) - np.eye(g.d)


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ket."""
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random full-rank (or given rank) density matrix from a Ginibre matrix."""
    k = d if rank is None else rank
    G = rng.normal(size=(d, k)) + 1j * rng.normal(size=(d, k))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real
