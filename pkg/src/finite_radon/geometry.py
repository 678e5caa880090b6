"""Dual affine plane geometry (DAPG) realized on a (d+1)-column grid.

Points are ``(m, b)`` with row ``m`` in ``[0, d)`` and column ``b`` in
``[-1, d)``; column ``b = -1`` is the computational basis. A line is labelled
by its rows at columns -1 and 0, ``j = (m_minus1, m0)``, and meets column
``b >= 0`` at row ``b/2 * (c - 1) + m0`` with ``c = 2 * m_minus1`` (mod d).

Enumeration orders:

* lines, row-major: ``line_index = m_minus1 * d + m0``
* points, column-major: ``point_index = (b + 1) * d + m``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .prime_field import PrimeDim, half, make_prime_dim


class Point(NamedTuple):
    m: int
    b: int


class Line(NamedTuple):
    m_minus1: int
    m0: int


def line_row(j: Line, b: int, p: PrimeDim) -> int:
    """Row of line ``j`` in column ``b`` straight from the line equation."""
    d = p.d
    if not -1 <= b < d:
        raise ValueError(f"column b={b} out of range [-1, {d})")
    if b == -1:
        return j.m_minus1 % d
    c = (2 * j.m_minus1) % d
    return (half(b, p) * (c - 1) + j.m0) % d


@dataclass(frozen=True, eq=False)
class Geometry:
    """Incidence structure for dimension ``d``.

    ``table[line_index, b + 1]`` holds the row at which the line meets column
    ``b``. The table is built from the line equation by :func:`make_geometry`;
    it is stored explicitly so that verification can be run on an arbitrary
    (e.g. deliberately corrupted) incidence structure.
    """

    dim: PrimeDim
    table: np.ndarray = field(repr=False)

    @property
    def d(self) -> int:
        return self.dim.d

    @property
    def n_points(self) -> int:
        return self.d * (self.d + 1)

    @property
    def n_lines(self) -> int:
        return self.d * self.d

    def points(self) -> list[Point]:
        d = self.d
        return [Point(m, b) for b in range(-1, d) for m in range(d)]

    def lines(self) -> list[Line]:
        d = self.d
        return [Line(a, c) for a in range(d) for c in range(d)]

    def point_index(self, alpha: Point) -> int:
        m, b = alpha
        self._check_point(m, b)
        return (b + 1) * self.d + m

    def line_index(self, j: Line) -> int:
        a, c = j
        if not (0 <= a < self.d and 0 <= c < self.d):
            raise ValueError(f"line {tuple(j)} out of range for d={self.d}")
        return a * self.d + c

    def point_at(self, index: int) -> Point:
        b, m = divmod(index, self.d)
        return Point(m, b - 1)

    def line_at(self, index: int) -> Line:
        return Line(*divmod(index, self.d))

    def with_table(self, table: np.ndarray) -> "Geometry":
        table = np.array(table, dtype=np.int64)
        if table.shape != self.table.shape:
            raise ValueError(f"table shape {table.shape} != {self.table.shape}")
        if ((table < 0) | (table >= self.d)).any():
            raise ValueError(f"table rows must lie in [0, {self.d})")
        table.setflags(write=False)
        return Geometry(self.dim, table)

    def lambda_matrix(self) -> np.ndarray:
        """0/1 incidence matrix of shape ``(d(d+1), d^2)``: points x lines."""
        lam = self.__dict__.get("_lam")
        if lam is None:
            lam = _lambda_matrix(self)
            lam.setflags(write=False)
            object.__setattr__(self, "_lam", lam)
        return lam

    def _check_point(self, m: int, b: int) -> None:
        if not (0 <= m < self.d and -1 <= b < self.d):
            raise ValueError(f"point {(m, b)} out of range for d={self.d}")


def make_geometry(d: int | PrimeDim) -> Geometry:
    p = make_prime_dim(d)
    n = p.d
    table = np.array(
        [[line_row(Line(a, c), b, p) for b in range(-1, n)] for a in range(n) for c in range(n)],
        dtype=np.int64,
    )
    table.setflags(write=False)
    return Geometry(p, table)


def _lambda_matrix(g: Geometry) -> np.ndarray:
    d = g.d
    lam = np.zeros((g.n_points, g.n_lines), dtype=np.int64)
    cols = np.arange(d + 1)
    for li in range(g.n_lines):
        lam[cols * d + g.table[li], li] = 1
    return lam


def point_on_line(j: Line, b: int, g: Geometry) -> Point:
    if not -1 <= b < g.d:
        raise ValueError(f"column b={b} out of range [-1, {g.d})")
    return Point(int(g.table[g.line_index(j), b + 1]), b)


def incidence(alpha: Point, j: Line, g: Geometry) -> int:
    m, b = alpha
    return int(point_on_line(j, b, g).m == m)


def points_on_line(j: Line, g: Geometry) -> list[Point]:
    return [point_on_line(j, b, g) for b in range(-1, g.d)]


def lines_through_point(alpha: Point, g: Geometry) -> list[Line]:
    g._check_point(*alpha)
    m, b = alpha
    hits = np.flatnonzero(g.table[:, b + 1] == m)
    return [g.line_at(int(i)) for i in hits]


# -- axiom verification ------------------------------------------------------


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    max_dev: float = 0.0
    witness: dict | None = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "pass": bool(self.passed), "max_dev": float(self.max_dev)}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class AxiomReport:
    d: int
    checks: list[AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> AxiomCheck | None:
        return next((c for c in self.checks if not c.passed), None)

    def to_dict(self) -> dict:
        return {"d": self.d, "checks": [c.to_dict() for c in self.checks]}


def verify_dapg_axioms(g: Geometry) -> AxiomReport:
    """Check DAPG properties (a)-(e) exhaustively on ``g``.

    All checks run; ``first_failure`` names the earliest violated one. For
    count-type checks ``max_dev`` is the largest absolute deviation of an
    integer count from its required value.
    """
    d = g.d
    lam = g.lambda_matrix()
    checks: list[AxiomCheck] = []

    # (a) counts
    n_lines, n_points = lam.shape[1], lam.shape[0]
    dev = abs(n_lines - d * d) + abs(n_points - d * (d + 1))
    bad_rows = np.flatnonzero((g.table < 0) | (g.table >= d))
    checks.append(
        AxiomCheck(
            "dapg_a_counts",
            dev == 0 and bad_rows.size == 0,
            float(dev),
            None if dev == 0 and bad_rows.size == 0
            else {"n_lines": int(n_lines), "n_points": int(n_points)},
        )
    )

    # (b) two distinct lines share exactly one point; two points in distinct
    # columns lie on exactly one common line
    shared = lam.T @ lam
    off = ~np.eye(n_lines, dtype=bool)
    line_dev = np.abs(shared - 1)[off]
    common = lam @ lam.T
    col = np.repeat(np.arange(d + 1), d)
    cross = col[:, None] != col[None, :]
    pt_dev = np.abs(common - 1)[cross]
    witness = None
    if line_dev.max(initial=0) or pt_dev.max(initial=0):
        if line_dev.max(initial=0):
            i, k = _first_pair(np.where(off, shared != 1, False))
            witness = {
                "lines": [list(g.line_at(i)), list(g.line_at(k))],
                "shared_points": int(shared[i, k]),
            }
        else:
            i, k = _first_pair(np.where(cross, common != 1, False))
            witness = {
                "points": [list(g.point_at(i)), list(g.point_at(k))],
                "common_lines": int(common[i, k]),
            }
    checks.append(
        AxiomCheck(
            "dapg_b_unique_join_meet",
            witness is None,
            float(max(line_dev.max(initial=0), pt_dev.max(initial=0))),
            witness,
        )
    )

    # (c) d lines per point, d+1 points per line
    per_point = lam.sum(axis=1)
    per_line = lam.sum(axis=0)
    dev_c = max(np.abs(per_point - d).max(), np.abs(per_line - (d + 1)).max())
    witness = None
    if dev_c:
        bad = np.flatnonzero(per_point != d)
        if bad.size:
            witness = {"point": list(g.point_at(int(bad[0]))), "lines": int(per_point[bad[0]])}
        else:
            bad = np.flatnonzero(per_line != d + 1)
            witness = {"line": list(g.line_at(int(bad[0]))), "points": int(per_line[bad[0]])}
    checks.append(AxiomCheck("dapg_c_degrees", dev_c == 0, float(dev_c), witness))

    # (d) the d+1 columns partition the points into sets of d mutually
    # unconnected points
    same = (col[:, None] == col[None, :]) & ~np.eye(n_points, dtype=bool)
    dev_d = int(common[same].max(initial=0))
    witness = None
    if dev_d:
        i, k = _first_pair(same & (common != 0))
        witness = {"points": [list(g.point_at(i)), list(g.point_at(k))], "common_lines": int(common[i, k])}
    checks.append(AxiomCheck("dapg_d_parallel_classes", dev_d == 0, float(dev_d), witness))

    # (e) each point is connected to every point outside its column
    miss = cross & (common == 0)
    witness = None
    if miss.any():
        i, k = _first_pair(miss)
        witness = {"points": [list(g.point_at(i)), list(g.point_at(k))]}
    checks.append(AxiomCheck("dapg_e_cross_connected", witness is None, float(miss.any()), witness))

    return AxiomReport(d, checks)


def _first_pair(mask: np.ndarray) -> tuple[int, int]:
    i, k = np.argwhere(mask)[0]
    return int(i), int(k)
