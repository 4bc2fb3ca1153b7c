"""Regeneration of the reference tables and comparison against the stored values."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field
from importlib import resources

from .entropy_momentum import entropy_momentum_1d, entropy_momentum_3d
from .entropy_position import entropy_position_1d, entropy_position_nd
from .model import ModelParams, QuantumNumbers, energy, frequency
from .specfun import QuadratureSpec
from .transform import TransformSpec

__all__ = ["TABLES", "TableDef", "Cell", "load_golden", "regenerate", "compare", "TableDiff"]


@dataclass(frozen=True)
class TableDef:
    table_id: int
    title: str
    dim: int
    lambdas: tuple
    n_max: int
    quantities: tuple
    tolerance: float


_L1 = (0.0, 0.025, 0.05, 0.075, 0.1)
_L3 = (0.0, 0.01, 0.02, 0.03, 0.04)

TABLES = {
    1: TableDef(1, "1D spectrum E_n and frequencies Omega_n", 1, _L1, 9, ("energy", "frequency"), 5e-4),
    2: TableDef(2, "1D position entropy S_rho", 1, _L1, 15, ("s_rho",), 1.5e-3),
    3: TableDef(3, "1D momentum entropy S_gamma", 1, _L1, 15, ("s_gamma",), 2e-3),
    4: TableDef(4, "1D total entropy S_rho + S_gamma", 1, _L1, 15, ("total",), 2e-3),
    5: TableDef(5, "1D total entropy, large lambda", 1, (0.0, 0.25, 0.5, 0.75, 1.0), 2, ("total",), 2e-3),
    6: TableDef(6, "3D position entropy, l = m = 0", 3, _L3, 9, ("s_rho",), 2e-3),
    7: TableDef(7, "3D momentum entropy, l = m = 0", 3, _L3, 9, ("s_gamma",), 2e-3),
    8: TableDef(8, "3D total entropy, l = m = 0", 3, _L3, 9, ("total",), 2e-3),
}


@dataclass(frozen=True)
class Cell:
    quantity: str
    lam: float
    n: int
    value: float


def load_golden(table_id: int) -> list[Cell]:
    text = resources.files("darboux3").joinpath(f"data/table{table_id}.csv").read_text()
    rows = csv.DictReader(line for line in io.StringIO(text) if not line.startswith("#"))
    return [Cell(r["quantity"], float(r["lambda"]), int(r["n"]), float(r["value"])) for r in rows]


class _Cache:
    """Entropies shared between tables computed in one run."""

    def __init__(self, spec: QuadratureSpec, tspec: TransformSpec):
        self.spec, self.tspec = spec, tspec
        self._pos, self._mom = {}, {}

    def position(self, dim, lam, n):
        key = (dim, lam, n)
        if key not in self._pos:
            params = ModelParams(lam, dim=dim)
            if dim == 1:
                self._pos[key] = entropy_position_1d(params, n, self.spec).entropy
            else:
                self._pos[key] = entropy_position_nd(params, QuantumNumbers(n), self.spec).entropy
        return self._pos[key]

    def momentum(self, dim, lam, n):
        key = (dim, lam, n)
        if key not in self._mom:
            params = ModelParams(lam, dim=dim)
            if dim == 1:
                self._mom[key] = entropy_momentum_1d(params, n, self.tspec).entropy
            else:
                self._mom[key] = entropy_momentum_3d(params, n, 0, None, self.tspec).entropy
        return self._mom[key]


def _cell_value(cache: _Cache, tdef: TableDef, quantity: str, lam: float, n: int) -> float:
    if quantity == "energy":
        return energy(ModelParams(lam, dim=tdef.dim), n)
    if quantity == "frequency":
        return frequency(ModelParams(lam, dim=tdef.dim), n)
    if quantity == "s_rho":
        return cache.position(tdef.dim, lam, n)
    if quantity == "s_gamma":
        return cache.momentum(tdef.dim, lam, n)
    if quantity == "total":
        return cache.position(tdef.dim, lam, n) + cache.momentum(tdef.dim, lam, n)
    raise ValueError(f"unknown table quantity {quantity!r}")


def regenerate(ids, spec: QuadratureSpec | None = None, tspec: TransformSpec | None = None,
               progress=None, timings: dict | None = None) -> dict[int, list[Cell]]:
    """Recompute every cell of the requested tables on their reference (lambda, n) grids.

    Entropies are shared between tables, so a table that reuses states computed
    for an earlier one costs almost nothing. When ``timings`` is given it is
    filled with the wall time spent on each table.
    """
    spec = spec or QuadratureSpec()
    tspec = tspec or TransformSpec(quad=spec)
    cache = _Cache(spec, tspec)
    out = {}
    for tid in ids:
        t0 = time.perf_counter()
        tdef = TABLES[tid]
        cells = []
        for quantity in tdef.quantities:
            for lam in tdef.lambdas:
                for n in range(tdef.n_max + 1):
                    cells.append(Cell(quantity, lam, n, _cell_value(cache, tdef, quantity, lam, n)))
                    if progress:
                        progress(tid, quantity, lam, n)
        out[tid] = cells
        if timings is not None:
            timings[tid] = time.perf_counter() - t0
    return out


@dataclass
class TableDiff:
    table_id: int
    tolerance: float
    rows: list = field(default_factory=list)  # (quantity, lam, n, computed, golden, deviation)

    @property
    def max_deviation(self) -> float:
        return max((r[5] for r in self.rows), default=0.0)

    @property
    def offenders(self) -> list:
        return [r for r in self.rows if r[5] > self.tolerance]

    @property
    def passed(self) -> bool:
        return not self.offenders

    def report(self) -> str:
        tdef = TABLES[self.table_id]
        lines = [f"table {self.table_id}: {tdef.title}",
                 f"  cells: {len(self.rows)}  max |dev|: {self.max_deviation:.2e}  tolerance: {self.tolerance:.1e}"
                 f"  -> {'PASS' if self.passed else 'FAIL'}"]
        for q, lam, n, comp, gold, dev in self.offenders:
            lines.append(f"  offending cell {q} lambda={lam:g} n={n}: computed {comp:.5f} reference {gold:g}"
                         f" |dev| {dev:.2e}")
        return "\n".join(lines)


def compare(table_id: int, cells: list[Cell]) -> TableDiff:
    golden = {(c.quantity, round(c.lam, 6), c.n): c.value for c in load_golden(table_id)}
    diff = TableDiff(table_id, TABLES[table_id].tolerance)
    for c in cells:
        ref = golden[(c.quantity, round(c.lam, 6), c.n)]
        diff.rows.append((c.quantity, c.lam, c.n, c.value, ref, abs(c.value - ref)))
    return diff
