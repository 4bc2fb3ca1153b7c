"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``; the summary
section at the end lists every criterion with its measured figure.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest
from scipy import special

from conftest import ACCEPTANCE_LINES
from darboux3.entropy_momentum import bbm_bound, entropy_momentum_1d, entropy_momentum_3d, momentum_norm
from darboux3.entropy_position import (
    entropy_position_1d,
    entropy_position_1d_direct,
    entropy_position_nd,
    entropy_position_nd_direct,
    hermite_moment,
    ho_entropy_1d,
    laguerre_cross_moment,
)
from darboux3.model import ModelParams, QuantumNumbers, energy, frequency
from darboux3.specfun import PolyFamily, QuadratureSpec, eval_poly, integrate, xlogx
from darboux3.states import State1D, rho_1d
from darboux3.tables import TABLES, compare, regenerate
from darboux3.transform import ho_momentum_density_1d, momentum_density_1d


@contextmanager
def criterion(number, title):
    notes = []
    try:
        yield notes
    except BaseException:
        ACCEPTANCE_LINES.append(f"criterion {number:>2} FAIL  {title}: {'; '.join(notes)}")
        print(ACCEPTANCE_LINES[-1])
        raise
    ACCEPTANCE_LINES.append(f"criterion {number:>2} PASS  {title}: {'; '.join(notes)}")
    print(ACCEPTANCE_LINES[-1])


@pytest.fixture(scope="module")
def regenerated():
    """All eight tables from one shared cache, with the wall time spent on each."""
    elapsed = {}
    return regenerate(sorted(TABLES), timings=elapsed), elapsed


def _check_table(tid, cells, notes):
    diff = compare(tid, cells)
    notes.append(f"table {tid} max|dev| {diff.max_deviation:.2e} (tol {diff.tolerance:.1e})")
    for q, lam, n, comp, gold, dev in diff.offenders:
        notes.append(f"table {tid} {q} lambda={lam:g} n={n}: {comp:.5f} vs {gold:g}")
    return diff.passed


def test_criterion_01_spectrum():
    with criterion(1, "spectrum, Table 1") as notes:
        t0 = time.perf_counter()
        cells = regenerate([1])[1]
        dt = time.perf_counter() - t0
        ok = _check_table(1, cells, notes)
        notes.append(f"runtime {dt:.3f} s (limit 1 s)")
        assert ok and dt < 1.0


def test_criterion_02_position_1d(regenerated):
    cells, elapsed = regenerated
    with criterion(2, "1D position entropy, Table 2") as notes:
        ok = _check_table(2, cells[2], notes)
        notes.append(f"runtime {elapsed[2]:.1f} s (limit 30 s)")
        assert ok and elapsed[2] < 30


def test_criterion_03_momentum_1d(regenerated):
    cells, elapsed = regenerated
    with criterion(3, "1D momentum entropy, Table 3") as notes:
        ok = _check_table(3, cells[3], notes)
        notes.append(f"runtime {elapsed[3]:.1f} s (limit 300 s)")
        assert ok and elapsed[3] < 300


def test_criterion_04_totals_and_crossover(regenerated):
    cells, _ = regenerated
    with criterion(4, "1D totals, Tables 4 and 5, crossover") as notes:
        ok4 = _check_table(4, cells[4], notes)
        ok5 = _check_table(5, cells[5], notes)
        grid = (0.25, 0.5, 0.75, 1.0)
        rows = {n: [c.value for c in cells[5] if c.n == n and c.lam in grid] for n in (0, 1, 2)}
        rising = all(b > a for a, b in zip(rows[0], rows[0][1:]))
        falling = all(all(b < a for a, b in zip(rows[n], rows[n][1:])) for n in (1, 2))
        notes.append(f"n=0 increasing {rising}, n=1,2 decreasing {falling}")
        assert ok4 and ok5 and rising and falling


def test_criterion_05_entropies_3d(regenerated):
    cells, elapsed = regenerated
    with criterion(5, "3D entropies, Tables 6, 7, 8") as notes:
        ok = all([_check_table(t, cells[t], notes) for t in (6, 7, 8)])
        total = elapsed[6] + elapsed[7] + elapsed[8]
        notes.append(f"runtime {total:.1f} s (limit 600 s)")
        assert ok and total < 600


def test_criterion_06_bbm(regenerated):
    cells, _ = regenerated
    with criterion(6, "BBM bound and ground-state saturation") as notes:
        worst = math.inf
        for tid, dim in ((4, 1), (5, 1), (8, 3)):
            for c in cells[tid]:
                worst = min(worst, c.value - bbm_bound(dim))
        ground1 = next(c.value for c in cells[4] if c.lam == 0 and c.n == 0)
        ground3 = next(c.value for c in cells[8] if c.lam == 0 and c.n == 0)
        sat1, sat3 = ground1 - bbm_bound(1), ground3 - bbm_bound(3)
        notes.append(f"min margin {worst:.3e}; ground-state margins {sat1:.1e} (N=1, {ground1:.4f}), "
                     f"{sat3:.1e} (N=3, {ground3:.4f})")
        assert worst >= -1e-4
        assert abs(sat1) < 1e-3 and abs(sat3) < 1e-3
        assert ground1 == pytest.approx(2.145, abs=5e-4) and ground3 == pytest.approx(6.434, abs=5e-4)


ORACLE_SAMPLE = (
    [(1, 0.0, n, 0, ()) for n in (0, 3, 8)]
    + [(1, 0.025, n, 0, ()) for n in (1, 12)]
    + [(1, 0.05, n, 0, ()) for n in (5, 15)]
    + [(1, 0.1, n, 0, ()) for n in (2, 10)]
    + [(1, 0.75, 1, 0, ())]
    + [(3, 0.0, 0, 0, (0, 0)), (3, 0.01, 4, 0, (0, 0)), (3, 0.04, 9, 0, (0, 0)), (3, 0.02, 2, 1, (1, 0)),
       (3, 0.03, 1, 3, (3, 2)), (2, 0.05, 3, 0, (0,)), (2, 0.1, 2, 2, (2,)), (4, 0.02, 1, 0, (0, 0, 0)),
       (5, 0.01, 2, 0, (0, 0, 0, 0)), (3, 0.5, 3, 2, (2, 2))]
)


def test_criterion_07_oracle_equivalence():
    with criterion(7, "formula vs direct position entropy") as notes:
        assert len(ORACLE_SAMPLE) == 20
        worst = 0.0
        for dim, lam, n, l, chain in ORACLE_SAMPLE:
            p = ModelParams(lam, dim=dim)
            if dim == 1:
                a, b = entropy_position_1d(p, n).entropy, entropy_position_1d_direct(p, n).entropy
            else:
                q = QuantumNumbers(n, l, chain)
                a, b = entropy_position_nd(p, q).entropy, entropy_position_nd_direct(p, q).entropy
            worst = max(worst, abs(a - b))
        notes.append(f"20 states, max |formula - direct| {worst:.2e} (tol 1e-6)")
        assert worst <= 1e-6


def test_criterion_08_moment_identities():
    with criterion(8, "Hermite and Laguerre moment identities") as notes:
        worst_h = 0.0
        for n in range(11):
            h = PolyFamily.hermite(n)
            for k in (0, 2, 4):
                val = integrate(lambda z: z**k * eval_poly(h, z) ** 2 * np.exp(-z * z), -math.inf, math.inf,
                                initial_panels=n + 2)[0]
                worst_h = max(worst_h, abs(hermite_moment(n, k) / val - 1))
        # off-diagonal cross moments can vanish, so errors are measured relative to
        # sqrt of the two diagonal norms
        worst_l = 0.0
        for alpha in (0.5, 1.5, 2.5):
            for n in range(11):
                for m in range(11):
                    ln, lm = PolyFamily.laguerre(n, alpha), PolyFamily.laguerre(m, alpha)
                    for mu in (alpha, alpha + 1, alpha + 2):
                        scale = math.sqrt(laguerre_cross_moment(n, n, alpha, alpha, mu)
                                          * laguerre_cross_moment(m, m, alpha, alpha, mu))
                        spec = QuadratureSpec(abs_tol=1e-13 * scale)
                        val = integrate(lambda z: z**mu * eval_poly(ln, z) * eval_poly(lm, z) * np.exp(-z),
                                        0.0, math.inf, spec, initial_panels=n + m + 2)[0]
                        closed = laguerre_cross_moment(n, m, alpha, alpha, mu)
                        worst_l = max(worst_l, abs(closed - val) / max(abs(closed), scale))
        notes.append(f"Hermite max rel {worst_h:.1e}; Laguerre max rel {worst_l:.1e} (tol 1e-9)")
        assert worst_h <= 1e-9 and worst_l <= 1e-9


def test_criterion_09_parseval():
    with criterion(9, "Parseval normalisation of momentum densities") as notes:
        worst = 0.0
        count = 0
        for lam in TABLES[3].lambdas:
            for n in range(16):
                worst = max(worst, abs(momentum_norm(ModelParams(lam), n) - 1))
                count += 1
        for lam in TABLES[5].lambdas:
            for n in range(3):
                worst = max(worst, abs(momentum_norm(ModelParams(lam), n) - 1))
                count += 1
        for lam in TABLES[7].lambdas:
            for n in range(10):
                worst = max(worst, abs(momentum_norm(ModelParams(lam, dim=3), QuantumNumbers(n)) - 1))
                count += 1
        notes.append(f"{count} states, max |norm - 1| {worst:.2e} (tol 1e-6)")
        assert worst <= 1e-6


def _ho_radial_entropy_3d(n):
    """Oscillator (l = 0) radial entropy plus log 4 pi, from scipy's Laguerre polynomials."""
    norm = 2 * math.factorial(n) / math.gamma(n + 1.5)

    def f(r):
        rho = norm * np.exp(-r * r) * special.eval_genlaguerre(n, 0.5, r * r) ** 2
        return -xlogx(rho) * r * r

    return integrate(f, 0.0, math.inf, initial_panels=n + 4)[0] + math.log(4 * math.pi)


def test_criterion_10_flat_limit():
    with criterion(10, "flat limit at lambda = 1e-8") as notes:
        lam = 1e-8
        p1, p3 = ModelParams(lam), ModelParams(lam, dim=3)
        dev = {}
        dev["energy"] = max(max(abs(energy(p1, n) - (n + 0.5)) for n in range(10)),
                            max(abs(energy(p3, QuantumNumbers(n)) - (2 * n + 1.5)) for n in range(10)))
        dev["frequency"] = max(abs(frequency(p1, n) - 1.0) for n in range(10))
        x = np.linspace(-10, 10, 801)
        dens = 0.0
        for n in range(11):
            ho = eval_poly(PolyFamily.hermite(n), x) ** 2 * np.exp(-x * x) / (
                math.sqrt(math.pi) * 2**n * math.factorial(n))
            dens = max(dens, np.max(np.abs(rho_1d(State1D.build(p1, n), x) - ho)))
            dens = max(dens, np.max(np.abs(momentum_density_1d(p1, n, x) - ho_momentum_density_1d(n, x))))
        dev["densities"] = dens
        ent = 0.0
        for n in range(11):
            ref = ho_entropy_1d(n)
            ent = max(ent, abs(entropy_position_1d(p1, n).entropy - ref))
            ent = max(ent, abs(entropy_momentum_1d(p1, n).entropy - ref))
        for n in range(4):
            ref = _ho_radial_entropy_3d(n)
            ent = max(ent, abs(entropy_position_nd(p3, QuantumNumbers(n)).entropy - ref))
            ent = max(ent, abs(entropy_momentum_3d(p3, n).entropy - ref))
        dev["entropies"] = ent
        notes.append(", ".join(f"{k} {v:.1e}" for k, v in dev.items()) + " (tol 1e-5)")
        assert all(v <= 1e-5 for v in dev.values())
