"""Command-line front end.

Subcommands: ``spectrum``, ``density``, ``entropy``, ``tables`` and
``check-uncertainty``. Results go to stdout (or ``--output``) as CSV or
JSON; diagnostics go to stderr.

Exit codes: 0 success, 1 usage or invalid parameters, 2 quadrature failed
to converge, 3 reference-table deviation or uncertainty bound violated.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from .entropy_momentum import entropy_momentum_1d, entropy_momentum_3d, uncertainty_check
from .entropy_position import entropy_position_1d, entropy_position_nd
from .model import ModelParams, QuantumNumbers, energy, frequency
from .specfun import ConvergenceError, DomainError, QuadratureSpec, UnsupportedCaseError
from .tables import TABLES, compare, regenerate
from .transform import TransformSpec, sample_density

__all__ = ["main", "RunConfig", "build_parser", "EXIT_OK", "EXIT_USAGE", "EXIT_CONVERGENCE", "EXIT_GOLDEN"]

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE, EXIT_GOLDEN = 0, 1, 2, 3
N_MAX_LIMIT = 200
TOL_ENV = "DARBOUX_QUAD_TOL"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    dim: int = 1
    lambdas: list = field(default_factory=lambda: [0.0])
    omega: float = 1.0
    hbar: float = 1.0
    n: int | None = None
    l: int = 0
    m: int = 0
    n_max: int | None = None
    space: str = "position"
    grid: tuple | None = None
    fmt: str = "csv"
    tol: float | None = None
    output: str | None = None
    ids: list = field(default_factory=lambda: sorted(TABLES))
    round_display: bool = False
    timestamp: bool = False

    def __post_init__(self):
        if self.fmt not in ("csv", "json"):
            raise UsageError(f"format must be csv or json, got {self.fmt!r}")
        if self.n_max is not None and not 0 <= self.n_max <= N_MAX_LIMIT:
            raise UsageError(f"--n-max must lie in [0, {N_MAX_LIMIT}]")
        if self.n is not None and self.n < 0:
            raise UsageError("--n must be >= 0")
        if self.grid is not None and self.grid[2] < 1:
            raise UsageError("grid count must be >= 1")
        if any(i not in TABLES for i in self.ids):
            raise UsageError(f"table ids must be drawn from {sorted(TABLES)}")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")

    def params(self, lam: float) -> ModelParams:
        return ModelParams(lam, self.omega, self.hbar, self.dim)

    def n_values(self) -> list[int]:
        if self.n is not None:
            return [self.n]
        return list(range((self.n_max if self.n_max is not None else 0) + 1))

    def mu_chain(self) -> tuple:
        if self.dim == 1:
            return ()
        if self.dim == 2:
            return (self.l,)
        return (self.l,) * (self.dim - 2) + (abs(self.m),)

    def quantum(self, n: int) -> QuantumNumbers:
        if self.dim == 1:
            return QuantumNumbers(n)
        return QuantumNumbers(n, self.l, self.mu_chain())

    def quad_spec(self) -> QuadratureSpec:
        tol = self.tol
        if tol is None and os.environ.get(TOL_ENV):
            try:
                tol = float(os.environ[TOL_ENV])
            except ValueError as exc:
                raise UsageError(f"{TOL_ENV} must be a number") from exc
        return QuadratureSpec(rel_tol=tol) if tol is not None else QuadratureSpec()

    def transform_spec(self) -> TransformSpec:
        return TransformSpec(quad=self.quad_spec())


def _parse_lambdas(text: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad lambda list {text!r}") from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty lambda list")
    return vals


def _parse_grid(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must be min:max:count")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc
    if count < 1:
        raise argparse.ArgumentTypeError("grid count must be >= 1")
    if count > 1 and not hi > lo:
        raise argparse.ArgumentTypeError("grid max must exceed min")
    return lo, hi, count


def _parse_ids(text: str) -> list[int]:
    try:
        ids = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad id list {text!r}") from exc
    if not ids or any(i not in TABLES for i in ids):
        raise argparse.ArgumentTypeError(f"ids must be drawn from {sorted(TABLES)}")
    return ids


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--dim", type=int, default=1)
    common.add_argument("--lambda", dest="lambdas", type=_parse_lambdas, default=[0.0],
                        help="deformation, or a comma-separated list")
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--hbar", type=float, default=1.0)
    common.add_argument("--n", type=int)
    common.add_argument("--l", type=int, default=0)
    common.add_argument("--m", type=int, default=0)
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--space", choices=("position", "momentum"), default="position")
    common.add_argument("--grid", type=_parse_grid, help="min:max:count")
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, help=f"quadrature relative tolerance (env {TOL_ENV})")
    common.add_argument("--output", help="write results to PATH instead of stdout")
    common.add_argument("--round", dest="round_display", action="store_true",
                        help="print 4 significant digits in CSV output")
    common.add_argument("--timestamp", action="store_true", help="add a generation timestamp")

    parser = _Parser(prog="darboux3", description="Darboux III oscillator: spectra, densities and entropies.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="energies and frequencies")
    sub.add_parser("density", parents=[common], help="sample a probability density on a grid")
    sub.add_parser("entropy", parents=[common], help="Shannon entropy of states")
    tp = sub.add_parser("tables", parents=[common], help="regenerate reference tables and diff them")
    tp.add_argument("--ids", type=_parse_ids, default=sorted(TABLES))
    sub.add_parser("check-uncertainty", parents=[common], help="entropic uncertainty audit")
    return parser


def _config_from_args(ns: argparse.Namespace) -> RunConfig:
    kwargs = {k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__}
    return RunConfig(**kwargs)


# ---------------------------------------------------------------- output

def _fmt_value(v, rounded: bool) -> str:
    if isinstance(v, float):
        # repr is the shortest string that round-trips to the same double
        return f"{v:.4g}" if rounded else repr(v)
    return str(v)


def _render(cfg: RunConfig, columns: list[str], rows: list[list], meta: dict) -> str:
    if cfg.timestamp:
        from datetime import datetime, timezone
        meta = dict(meta, timestamp=datetime.now(timezone.utc).isoformat())
    if cfg.fmt == "json":
        payload = {"meta": meta, "columns": columns, "rows": rows}
        return json.dumps(payload, indent=2, allow_nan=True) + "\n"
    buf = io.StringIO()
    if cfg.timestamp:
        buf.write(f"# generated {meta['timestamp']}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt_value(v, cfg.round_display) for v in row])
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _base_meta(cfg: RunConfig) -> dict:
    return {"command": cfg.command, "dim": cfg.dim, "omega": cfg.omega, "hbar": cfg.hbar}


# -------------------------------------------------------------- commands

def cmd_spectrum(cfg: RunConfig) -> int:
    rows = []
    for lam in cfg.lambdas:
        p = cfg.params(lam)
        for n in cfg.n_values():
            q = cfg.quantum(n)
            rows.append([lam, n, q.l, energy(p, q), frequency(p, q)])
    _emit(cfg, _render(cfg, ["lambda", "n", "l", "energy", "frequency"], rows, _base_meta(cfg)))
    return EXIT_OK


def cmd_density(cfg: RunConfig) -> int:
    if cfg.grid is None:
        raise UsageError("density needs --grid min:max:count")
    if len(cfg.lambdas) != 1:
        raise UsageError("density takes a single --lambda value")
    lo, hi, count = cfg.grid
    grid = np.linspace(lo, hi, count)
    curve = sample_density(cfg.params(cfg.lambdas[0]), cfg.quantum(cfg.n or 0), cfg.space, grid,
                           cfg.transform_spec())
    axis = "x" if cfg.space == "position" else "p"
    if cfg.dim > 1:
        axis = "r" if cfg.space == "position" else "p"
    rows = [[float(a), float(v)] for a, v in zip(curve.abscissae, curve.values)]
    meta = dict(_base_meta(cfg), **{k: v for k, v in curve.meta.items() if k not in ("dim", "omega", "hbar")})
    _emit(cfg, _render(cfg, [axis, "density"], rows, meta))
    return EXIT_OK


def _entropy_one(cfg: RunConfig, p: ModelParams, q: QuantumNumbers):
    if cfg.space == "position":
        if cfg.dim == 1:
            return entropy_position_1d(p, q.n, cfg.quad_spec())
        return entropy_position_nd(p, q, cfg.quad_spec())
    if cfg.dim == 1:
        return entropy_momentum_1d(p, q.n, cfg.transform_spec())
    if cfg.dim == 3:
        return entropy_momentum_3d(p, q.n, q.l, q.chain_for(3), cfg.transform_spec())
    raise UnsupportedCaseError(f"momentum space is only available for N = 1 and N = 3, got N = {cfg.dim}")


def cmd_entropy(cfg: RunConfig) -> int:
    rows = []
    for lam in cfg.lambdas:
        p = cfg.params(lam)
        for n in cfg.n_values():
            q = cfg.quantum(n)
            rep = _entropy_one(cfg, p, q)
            rows.append([lam, n, q.l, cfg.space, rep.entropy, rep.err_est])
    _emit(cfg, _render(cfg, ["lambda", "n", "l", "space", "entropy", "err_est"], rows,
                       dict(_base_meta(cfg), mu_chain=list(cfg.mu_chain()))))
    return EXIT_OK


def cmd_check_uncertainty(cfg: RunConfig) -> int:
    rows, violated = [], []
    for lam in cfg.lambdas:
        p = cfg.params(lam)
        for n in cfg.n_values():
            q = cfg.quantum(n)
            rep = uncertainty_check(p, q, cfg.quad_spec(), cfg.transform_spec())
            rows.append([lam, n, q.l, rep.s_rho, rep.s_gamma, rep.total, rep.bbm_bound, rep.margin,
                         rep.err_est, rep.saturated])
            if not rep.satisfied:
                violated.append((lam, n, rep.margin))
    cols = ["lambda", "n", "l", "s_rho", "s_gamma", "total", "bbm_bound", "margin", "err_est", "saturated"]
    _emit(cfg, _render(cfg, cols, rows, dict(_base_meta(cfg), mu_chain=list(cfg.mu_chain()))))
    for lam, n, margin in violated:
        print(f"bound violated: lambda={lam:g} n={n} margin={margin:.3e}", file=sys.stderr)
    return EXIT_GOLDEN if violated else EXIT_OK


def cmd_tables(cfg: RunConfig) -> int:
    results = regenerate(cfg.ids, cfg.quad_spec(), cfg.transform_spec())
    rows, failed = [], False
    for tid in cfg.ids:
        diff = compare(tid, results[tid])
        print(diff.report(), file=sys.stderr)
        failed |= not diff.passed
        for q, lam, n, comp, gold, dev in diff.rows:
            rows.append([tid, q, lam, n, comp, gold, dev])
    cols = ["table", "quantity", "lambda", "n", "value", "reference", "abs_deviation"]
    _emit(cfg, _render(cfg, cols, rows, {"command": "tables", "ids": list(cfg.ids)}))
    return EXIT_GOLDEN if failed else EXIT_OK


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "density": cmd_density,
    "entropy": cmd_entropy,
    "tables": cmd_tables,
    "check-uncertainty": cmd_check_uncertainty,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(ns)
        return _COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError, UnsupportedCaseError) as exc:
        print(f"darboux3: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        est = "" if math.isnan(exc.value) else f" (best estimate {exc.value:.6g} +/- {exc.err_est:.1e})"
        print(f"darboux3: quadrature did not converge: {exc}{est}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
