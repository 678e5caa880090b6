"""Quasi-distribution over lines and the finite Radon transform.

``V(j; B) = tr(B P_j)`` maps an operator to a function on the d^2 lines.
The forward Radon transform averages ``V`` over the d lines through each
point, giving the point marginals ``p_alpha = tr(rho A_alpha)``; the inverse
sums the marginals along a line, ``V(j) = sum_{alpha in j} p_alpha - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import Geometry
from .line_operators import all_line_operators
from .mub import _all_point_operators

TOL = 1e-12


@dataclass(frozen=True, eq=False)
class QuasiDistribution:
    """Values indexed by canonical line index. Real for Hermitian operators."""

    d: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.d * self.d,):
            raise ValueError(
                f"quasi-distribution for d={self.d} needs {self.d * self.d} values, "
                f"got shape {self.values.shape}"
            )


@dataclass(frozen=True, eq=False)
class PointMarginals:
    """Values ``tr(rho A_alpha)`` indexed by canonical point index."""

    d: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.d * (self.d + 1),):
            raise ValueError(
                f"point marginals for d={self.d} need {self.d * (self.d + 1)} values, "
                f"got shape {self.values.shape}"
            )

    def column(self, b: int) -> np.ndarray:
        return self.values[(b + 1) * self.d : (b + 2) * self.d]


def _as_operator(B, d: int) -> np.ndarray:
    B = np.asarray(B, dtype=complex)
    if B.shape != (d, d):
        raise ValueError(f"operator shape {B.shape} does not match d={d}")
    return B


def _maybe_real(values: np.ndarray, tol: float = TOL) -> np.ndarray:
    scale = max(1.0, float(np.abs(values).max(initial=0.0)))
    if np.abs(values.imag).max(initial=0.0) <= tol * scale:
        return values.real.copy()
    return values


def quasi_distribution(B, g: Geometry) -> QuasiDistribution:
    """``V(j) = tr(B P_j)`` for every line.

    Returned values are real when the imaginary residue is below tolerance
    (always the case for Hermitian ``B``), complex otherwise.
    """
    B = _as_operator(B, g.d)
    P = all_line_operators(g)
    values = np.einsum("ab,jba->j", B, P)
    return QuasiDistribution(g.d, _maybe_real(values))


def reconstruct_operator(V: QuasiDistribution, g: Geometry) -> np.ndarray:
    """``(1/d) sum_j V(j) P_j``; inverts :func:`quasi_distribution` exactly."""
    _check_dim(V.d, g)
    P = all_line_operators(g)
    return np.tensordot(V.values, P, axes=1) / g.d


def pair_expectation(V_rho: QuasiDistribution, V_B: QuasiDistribution):
    """``tr(rho B) = (1/d) sum_j V(j; rho) V(j; B)``."""
    if V_rho.d != V_B.d:
        raise ValueError(f"dimension mismatch: {V_rho.d} vs {V_B.d}")
    out = np.dot(V_rho.values, V_B.values) / V_rho.d
    return float(out) if np.isrealobj(out) else complex(out)


def radon_forward(V: QuasiDistribution, g: Geometry) -> PointMarginals:
    """``p_alpha = (1/d) sum_j V(j) Lambda[alpha, j]``."""
    _check_dim(V.d, g)
    return PointMarginals(g.d, g.lambda_matrix() @ V.values / g.d)


def radon_forward_direct(rho, g: Geometry) -> PointMarginals:
    """``p_alpha = tr(rho A_alpha)`` computed from the projectors directly."""
    rho = _as_operator(rho, g.d)
    A = _all_point_operators(g.d)
    return PointMarginals(g.d, _maybe_real(np.einsum("ab,kba->k", rho, A)))


def radon_inverse(p: PointMarginals, g: Geometry) -> QuasiDistribution:
    """``V(j) = sum_{alpha in j} p_alpha - 1`` (unit-trace normalization)."""
    _check_dim(p.d, g)
    return QuasiDistribution(g.d, g.lambda_matrix().T @ p.values - 1)


def _check_dim(d: int, g: Geometry) -> None:
    if d != g.d:
        raise ValueError(f"dimension mismatch: data has d={d}, geometry has d={g.d}")
