"""File formats: operator/ket JSON, incidence and distribution CSVs, records."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .geometry import Geometry
from .phase_space import PointMarginals, QuasiDistribution
from .tomography import MeasurementRecord, ReconstructionReport


class FormatError(ValueError):
    """Input file does not match its schema."""


def _num(x: float) -> str:
    return format(float(x), ".17g")


# -- JSON: operators and kets ------------------------------------------------


def operator_to_json(op: np.ndarray) -> dict:
    op = np.asarray(op, dtype=complex)
    return {"d": int(op.shape[0]), "re": op.real.tolist(), "im": op.imag.tolist()}


def operator_from_json(obj: dict, d: int | None = None) -> np.ndarray:
    _require(obj, ("d", "re", "im"), "operator")
    n = obj["d"]
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"operator: 're'/'im' must be numeric matrices ({exc})") from None
    if re.shape != (n, n) or im.shape != (n, n):
        raise FormatError(f"operator: 're' and 'im' must be {n}x{n}, got {re.shape} and {im.shape}")
    if d is not None and n != d:
        raise FormatError(f"operator: dimension mismatch, file has d={n}, expected d={d}")
    return re + 1j * im


def ket_to_json(ket: np.ndarray) -> dict:
    ket = np.asarray(ket, dtype=complex)
    return {"d": int(ket.shape[0]), "re": ket.real.tolist(), "im": ket.imag.tolist()}


def ket_from_json(obj: dict) -> np.ndarray:
    _require(obj, ("d", "re", "im"), "ket")
    re = np.asarray(obj["re"], dtype=float)
    im = np.asarray(obj["im"], dtype=float)
    if re.shape != (obj["d"],) or im.shape != (obj["d"],):
        raise FormatError(f"ket: 're' and 'im' must have length {obj['d']}")
    return re + 1j * im


def read_operator(path, d: int | None = None) -> np.ndarray:
    """Read an operator file; a ket file (1-d arrays) is read as its projector."""
    obj = _load_json(path)
    _require(obj, ("d", "re", "im"), "operator")
    if np.ndim(obj["re"]) == 1:
        ket = ket_from_json(obj)
        if d is not None and ket.shape[0] != d:
            raise FormatError(f"ket: dimension mismatch, file has d={ket.shape[0]}, expected d={d}")
        return np.outer(ket, ket.conj())
    return operator_from_json(obj, d)


def write_json(path, obj: dict) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _load_json(path) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise FormatError(f"{path}: top level must be an object")
    return obj


def _require(obj: dict, keys, what: str) -> None:
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"{what}: missing field(s) {', '.join(map(repr, missing))}")


# -- CSV: geometry -------------------------------------------------------------

INCIDENCE_HEADER = ["line_index", "m_minus1", "m0", "b", "m"]
LAMBDA_HEADER = ["point_index", "line_index", "lambda"]
QUASI_HEADER = ["line_index", "m_minus1", "m0", "value"]
MARGINALS_HEADER = ["point_index", "m", "b", "value"]


def write_incidence_csv(path, g: Geometry) -> int:
    rows = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(INCIDENCE_HEADER)
        for li, (a, c) in enumerate(g.lines()):
            for b in range(-1, g.d):
                w.writerow([li, a, c, b, int(g.table[li, b + 1])])
                rows += 1
    return rows


def write_lambda_csv(path, g: Geometry) -> int:
    lam = g.lambda_matrix()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(LAMBDA_HEADER)
        for pi in range(lam.shape[0]):
            for li in range(lam.shape[1]):
                w.writerow([pi, li, int(lam[pi, li])])
    return lam.size


def read_incidence_csv(path, d: int) -> np.ndarray:
    """Rebuild the ``(d^2, d+1)`` incidence table written by :func:`write_incidence_csv`."""
    rows = _read_csv(path, INCIDENCE_HEADER)
    table = np.full((d * d, d + 1), -1, dtype=np.int64)
    for r in rows:
        table[int(r["line_index"]), int(r["b"]) + 1] = int(r["m"])
    if (table < 0).any():
        raise FormatError(f"{path}: incidence table incomplete for d={d}")
    return table


def read_lambda_csv(path, d: int) -> np.ndarray:
    rows = _read_csv(path, LAMBDA_HEADER)
    lam = np.zeros((d * (d + 1), d * d), dtype=np.int64)
    for r in rows:
        lam[int(r["point_index"]), int(r["line_index"])] = int(r["lambda"])
    return lam


# -- CSV: distributions -------------------------------------------------------


def write_quasi_csv(path, V: QuasiDistribution) -> None:
    """One row per line; a ``value_im`` column is added for complex values."""
    cplx = np.iscomplexobj(V.values)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(QUASI_HEADER + (["value_im"] if cplx else []))
        for li, v in enumerate(V.values):
            a, c = divmod(li, V.d)
            row = [li, a, c, _num(v.real)]
            if cplx:
                row.append(_num(v.imag))
            w.writerow(row)


def read_quasi_csv(path, d: int | None = None) -> QuasiDistribution:
    rows = _read_csv(path, QUASI_HEADER)
    n = _square_root(len(rows), path)
    if d is not None and n != d:
        raise FormatError(f"{path}: dimension mismatch, file has d={n}, expected d={d}")
    values = np.zeros(n * n, dtype=complex if "value_im" in rows[0] else float)
    for r in rows:
        li = int(r["line_index"])
        values[li] = float(r["value"])
        if "value_im" in r:
            values[li] += 1j * float(r["value_im"])
    return QuasiDistribution(n, values)


def write_marginals_csv(path, p: PointMarginals) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(MARGINALS_HEADER)
        for pi, v in enumerate(np.real(p.values)):
            b, m = divmod(pi, p.d)
            w.writerow([pi, m, b - 1, _num(v)])


def read_marginals_csv(path, d: int | None = None) -> PointMarginals:
    rows = _read_csv(path, MARGINALS_HEADER)
    n = _marginal_dim(len(rows), path)
    if d is not None and n != d:
        raise FormatError(f"{path}: dimension mismatch, file has d={n}, expected d={d}")
    values = np.zeros(n * (n + 1))
    for r in rows:
        pi, m, b = int(r["point_index"]), int(r["m"]), int(r["b"])
        if pi != (b + 1) * n + m:
            raise FormatError(f"{path}: point_index {pi} inconsistent with (m={m}, b={b})")
        values[pi] = float(r["value"])
    return PointMarginals(n, values)


def _read_csv(path, header: list[str]) -> list[dict]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        missing = [h for h in header if h not in fields]
        if missing:
            raise FormatError(f"{path}: missing column(s) {', '.join(missing)}")
        try:
            rows = list(reader)
        except csv.Error as exc:
            raise FormatError(f"{path}: {exc}") from None
    if not rows:
        raise FormatError(f"{path}: no data rows")
    return rows


def _square_root(n: int, path) -> int:
    r = int(round(n**0.5))
    if r * r != n:
        raise FormatError(f"{path}: {n} rows is not d^2 for any d")
    return r


def _marginal_dim(n: int, path) -> int:
    r = int((n**0.5))
    if r * (r + 1) != n:
        raise FormatError(f"{path}: {n} rows is not d(d+1) for any d")
    return r


# -- JSON: distributions, records and reports ----------------------------------


def quasi_to_json(V: QuasiDistribution) -> dict:
    out = {"d": V.d, "values": np.real(V.values).tolist()}
    if np.iscomplexobj(V.values):
        out["values_im"] = V.values.imag.tolist()
    return out


def quasi_from_json(obj: dict) -> QuasiDistribution:
    _require(obj, ("d", "values"), "quasi-distribution")
    values = np.asarray(obj["values"], dtype=float)
    if "values_im" in obj:
        values = values + 1j * np.asarray(obj["values_im"], dtype=float)
    return QuasiDistribution(int(obj["d"]), values)


def marginals_to_json(p: PointMarginals) -> dict:
    return {"d": p.d, "values": np.real(p.values).tolist()}


def marginals_from_json(obj: dict) -> PointMarginals:
    _require(obj, ("d", "values"), "point marginals")
    return PointMarginals(int(obj["d"]), np.asarray(obj["values"], dtype=float))


def record_to_json(rec: MeasurementRecord) -> dict:
    return {
        "d": rec.d,
        "shots": rec.shots,
        "counts": {str(b): rec.counts[b + 1].tolist() for b in range(-1, rec.d)},
    }


def record_from_json(obj: dict) -> MeasurementRecord:
    _require(obj, ("d", "shots", "counts"), "measurement record")
    d = int(obj["d"])
    try:
        counts = [obj["counts"][str(b)] for b in range(-1, d)]
    except KeyError as exc:
        raise FormatError(f"measurement record: no counts for basis {exc.args[0]}") from None
    try:
        return MeasurementRecord(d, int(obj["shots"]), np.asarray(counts))
    except ValueError as exc:
        raise FormatError(f"measurement record: {exc}") from None


def report_to_json(rep: ReconstructionReport) -> dict:
    out = {
        "d": int(rep.rho_hat.shape[0]),
        "shots": rep.shots,
        "projected": rep.projected,
        "rho_hat": operator_to_json(rep.rho_hat),
        "min_eigenvalue": rep.min_eigenvalue,
        "fidelity": rep.fidelity,
        "trace_distance": rep.trace_distance,
    }
    out.update(rep.extra)
    return out
