"""Line operators ``P_j = sum_{alpha in j} A_alpha - I`` and their identities."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Geometry, Line, Point, incidence, lines_through_point
from .mub import _all_point_operators, point_operator

TOL = 1e-12


def line_operator(j: Line, g: Geometry) -> np.ndarray:
    """Hermitian, unit-trace operator attached to line ``j``."""
    return all_line_operators(g)[g.line_index(j)].copy()


def all_line_operators(g: Geometry) -> np.ndarray:
    """Every ``P_j`` stacked in line-index order, shape ``(d^2, d, d)``.

    Cached on the geometry instance; built from its incidence table, so a
    corrupted geometry yields the corresponding (non-orthogonal) operators.
    """
    cached = g.__dict__.get("_line_ops")
    if cached is None:
        d = g.d
        A = _all_point_operators(d)
        idx = np.arange(d + 1) * d + g.table  # (d^2, d+1) point indices
        cached = A[idx].sum(axis=1) - np.eye(d)
        cached.setflags(write=False)
        object.__setattr__(g, "_line_ops", cached)
    return cached


def lambda_trace(alpha: Point, j: Line, g: Geometry) -> float:
    """``tr(A_alpha P_j)``, real part; equals ``incidence(alpha, j)``."""
    A = point_operator(alpha, g.dim)
    return float(np.trace(A @ all_line_operators(g)[g.line_index(j)]).real)


def lambda_trace_matrix(g: Geometry) -> np.ndarray:
    """All ``tr(A_alpha P_j)`` at once, shape ``(d(d+1), d^2)``, complex."""
    A = _all_point_operators(g.d)
    P = all_line_operators(g)
    return np.einsum("aij,kji->ak", A, P)


def point_from_lines(alpha: Point, g: Geometry) -> np.ndarray:
    """Average of the ``d`` line operators through ``alpha``."""
    P = all_line_operators(g)
    idx = [g.line_index(j) for j in lines_through_point(alpha, g)]
    return P[idx].sum(axis=0) / g.d


# -- identity verification ---------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    max_dev: float
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "pass": bool(self.passed), "max_dev": float(self.max_dev)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class IdentityReport:
    d: int
    checks: list[IdentityCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def max_dev(self) -> float:
        return max((c.max_dev for c in self.checks), default=0.0)

    @property
    def first_failure(self) -> IdentityCheck | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {"d": self.d, "checks": [c.to_dict() for c in self.checks]}


def verify_operator_identities(
    g: Geometry, operators: np.ndarray | None = None, tol: float = TOL
) -> IdentityReport:
    """Check the line-operator identities over every line of ``g``.

    ``operators`` overrides the line operators (shape ``(d^2, d, d)``), which
    is how fault injection is tested. Each check reports the maximum absolute
    elementwise deviation and, on failure, the worst line (pair).
    """
    d = g.d
    P = all_line_operators(g) if operators is None else np.asarray(operators, dtype=complex)
    A = _all_point_operators(d)
    eye = np.eye(d)
    report = IdentityReport(d)

    def add(name: str, dev: np.ndarray, label) -> None:
        worst = int(np.argmax(dev))
        mx = float(dev.flat[worst])
        witness = None if mx <= tol else {**label(worst), "deviation": mx}
        report.checks.append(IdentityCheck(name, mx <= tol, mx, witness))

    def one_line(k: int) -> dict:
        return {"line": list(g.line_at(k))}

    def line_pair(k: int) -> dict:
        i, j = divmod(k, d * d)
        return {"lines": [list(g.line_at(i)), list(g.line_at(j))]}

    add("trace_P_is_1", np.abs(np.trace(P, axis1=1, axis2=2) - 1), one_line)

    gram = np.einsum("iab,jba->ij", P, P)
    add("trace_PjPk_is_d_delta", np.abs(gram - d * np.eye(d * d)), line_pair)

    sq = np.einsum("iab,ibc->iac", P, P) - eye
    add("P_squared_is_I", np.abs(sq).reshape(d * d, -1).max(axis=1), one_line)

    lam_hs = np.einsum("aij,kji->ak", A, P)
    lam_geo = g.lambda_matrix()
    dev = np.abs(lam_hs - lam_geo).max(axis=0)
    add("lambda_trace_equals_incidence", dev, one_line)

    # sum_{a != a' in j} A_a A_a' == sum_{a in j} A_a, per line
    idx = np.arange(d + 1) * d + g.table
    S = A[idx].sum(axis=1)
    cross = np.einsum("iab,ibc->iac", S, S) - np.einsum("ikab,ikbc->iac", A[idx], A[idx])
    add("fluctuation_distillation", np.abs(cross - S).reshape(d * d, -1).max(axis=1), one_line)

    # hermiticity is implied for the built operators but not for injected ones
    herm = np.abs(P - P.conj().transpose(0, 2, 1)).reshape(d * d, -1).max(axis=1)
    add("P_hermitian", herm, one_line)

    # column resolutions: each column of projectors, (1/d) sum P and
    # (1/(d+1)) sum A all equal I
    cols = np.abs(A.reshape(d + 1, d, d, d).sum(axis=1) - eye).reshape(d + 1, -1).max(axis=1)
    add("column_projectors_resolve_I", cols, lambda k: {"column": k - 1})
    chain = np.array(
        [np.abs(P.sum(axis=0) / d - eye).max(), np.abs(A.sum(axis=0) / (d + 1) - eye).max()]
    )
    add("line_and_point_sums_resolve_I", chain, lambda k: {"sum": ["lines", "points"][k]})

    return report
