"""Command-line entry point: ``finite-radon {geometry,verify,radon,tomography}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .geometry import make_geometry, verify_dapg_axioms
from .line_operators import verify_operator_identities
from .phase_space import quasi_distribution, radon_forward, radon_inverse, reconstruct_operator
from .prime_field import DimensionError, make_prime_dim
from .tomography import (
    InvalidStateError,
    check_density_matrix,
    estimate_marginals,
    exact_marginals,
    random_pure_state,
    reconstruct_state,
    simulate_measurements,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    command: str
    d: int
    out: Path | None = None
    fmt: str = "csv"
    seed: int = 0
    shots: int | None = None  # None means exact probabilities
    project_psd: bool = False
    input: Path | None = None
    direction: str = "forward"
    random_state: bool = False

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "CliConfig":
        make_prime_dim(ns.d)
        cfg = cls(command=ns.command, d=ns.d, out=ns.out, fmt=ns.format, seed=ns.seed)
        if ns.command == "radon":
            cfg.input, cfg.direction = ns.input, ns.direction
        if ns.command == "tomography":
            cfg.input, cfg.random_state = ns.state, ns.random
            cfg.project_psd = ns.project_psd
            cfg.shots = ns.shots
        return cfg


def _shots(text: str) -> int | None:
    if text == "exact":
        return None
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--shots must be a positive integer or 'exact', got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"--shots must be >= 1, got {n}")
    return n


def _seed(text: str) -> int:
    try:
        s = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed must be an integer, got {text!r}")
    if not 0 <= s < 2**64:
        raise argparse.ArgumentTypeError("--seed must fit in an unsigned 64-bit integer")
    return s


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--d", type=int, required=True, help="odd prime dimension")
    common.add_argument("--out", type=Path, default=None, help="output directory or file")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=_seed, default=0)

    parser = argparse.ArgumentParser(prog="finite-radon", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("geometry", parents=[common], help="write incidence and Lambda tables")
    sub.add_parser("verify", parents=[common], help="check geometry axioms and operator identities")

    radon = sub.add_parser("radon", parents=[common], help="forward or inverse finite Radon transform")
    radon.add_argument("--direction", choices=("forward", "inverse"), default="forward")
    radon.add_argument(
        "--input", type=Path, required=True,
        help="operator JSON (forward) or point-marginals CSV/JSON (inverse)",
    )

    tomo = sub.add_parser("tomography", parents=[common], help="simulate MUB tomography")
    src = tomo.add_mutually_exclusive_group(required=True)
    src.add_argument("--state", type=Path, help="density matrix (operator JSON) or ket JSON")
    src.add_argument("--random", action="store_true", help="Haar-random pure state drawn from --seed")
    tomo.add_argument("--shots", type=_shots, default=None, required=True, help="shots per basis, or 'exact'")
    tomo.add_argument("--project-psd", action="store_true", help="clip negative eigenvalues of the estimate")
    return parser


def cmd_geometry(cfg: CliConfig) -> int:
    g = make_geometry(cfg.d)
    out = cfg.out or Path(f"geometry_d{cfg.d}")
    out.mkdir(parents=True, exist_ok=True)
    if cfg.fmt == "json":
        io.write_json(out / "geometry.json", {
            "d": g.d,
            "lines": [list(j) for j in g.lines()],
            "table": g.table.tolist(),
            "lambda": g.lambda_matrix().tolist(),
        })
        summary = {"d": g.d, "lines": g.n_lines, "points": g.n_points, "files": ["geometry.json"]}
    else:
        n_inc = io.write_incidence_csv(out / "incidence.csv", g)
        n_lam = io.write_lambda_csv(out / "lambda.csv", g)
        summary = {
            "d": g.d, "lines": g.n_lines, "points": g.n_points,
            "incidence_rows": n_inc, "lambda_rows": n_lam,
            "files": ["incidence.csv", "lambda.csv"],
        }
    print(json.dumps(summary))
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    g = make_geometry(cfg.d)
    axioms = verify_dapg_axioms(g)
    ids = verify_operator_identities(g)
    checks = [c.to_dict() for c in axioms.checks + ids.checks]
    report = {"d": g.d, "checks": checks}
    text = json.dumps(report, indent=2)
    if cfg.out:
        cfg.out.write_text(text + "\n")
    print(text)
    failed = [c["name"] for c in checks if not c["pass"]]
    if failed:
        print(f"check failed: {failed[0]}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_radon(cfg: CliConfig) -> int:
    g = make_geometry(cfg.d)
    out = cfg.out or Path(".")
    out.mkdir(parents=True, exist_ok=True)
    if cfg.direction == "forward":
        rho = io.read_operator(cfg.input, g.d)
        V = quasi_distribution(rho, g)
        p = radon_forward(V, g)
        files = _write_dists(out, cfg.fmt, V=V, p=p)
    else:
        if cfg.input.suffix == ".json":
            p = io.marginals_from_json(io._load_json(cfg.input))
            if p.d != g.d:
                raise io.FormatError(f"{cfg.input}: dimension mismatch, file has d={p.d}, expected d={g.d}")
        else:
            p = io.read_marginals_csv(cfg.input, g.d)
        V = radon_inverse(p, g)
        rho = reconstruct_operator(V, g)
        files = _write_dists(out, cfg.fmt, V=V)
        io.write_json(out / "operator.json", io.operator_to_json(rho))
        files.append("operator.json")
    print(json.dumps({"d": g.d, "direction": cfg.direction, "files": files}))
    return EXIT_OK


def _write_dists(out: Path, fmt: str, V=None, p=None) -> list[str]:
    files = []
    if V is not None:
        if fmt == "json":
            io.write_json(out / "quasi.json", io.quasi_to_json(V))
            files.append("quasi.json")
        else:
            io.write_quasi_csv(out / "quasi.csv", V)
            files.append("quasi.csv")
    if p is not None:
        if fmt == "json":
            io.write_json(out / "marginals.json", io.marginals_to_json(p))
            files.append("marginals.json")
        else:
            io.write_marginals_csv(out / "marginals.csv", p)
            files.append("marginals.csv")
    return files


def cmd_tomography(cfg: CliConfig) -> int:
    g = make_geometry(cfg.d)
    if cfg.random_state:
        psi = random_pure_state(g.d, np.random.default_rng(cfg.seed))
        rho = np.outer(psi, psi.conj())
    else:
        rho = check_density_matrix(io.read_operator(cfg.input, g.d), g.d)
    if cfg.shots is None:
        p = exact_marginals(rho, g)
        record = None
    else:
        record = simulate_measurements(rho, cfg.shots, cfg.seed, g)
        p = estimate_marginals(record)
    rep = reconstruct_state(p, g, cfg.project_psd, true_rho=rho, shots=cfg.shots)
    rep.extra["seed"] = cfg.seed
    rep.extra["mode"] = "exact" if cfg.shots is None else "sampled"
    rep.extra["rho_true"] = io.operator_to_json(rho)
    if record is not None:
        rep.extra["record"] = io.record_to_json(record)
    text = json.dumps(io.report_to_json(rep), indent=2)
    if cfg.out:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text + "\n")
    print(text)
    return EXIT_OK


COMMANDS = {
    "geometry": cmd_geometry,
    "verify": cmd_verify,
    "radon": cmd_radon,
    "tomography": cmd_tomography,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = CliConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except (DimensionError, io.FormatError, InvalidStateError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
