"""Special functions and the adaptive quadrature engine.

Everything here works on numpy arrays. Polynomials are always evaluated by
their three-term recurrences; the log-scaled variant rescales on the fly so
degrees in the hundreds stay finite far out on the real line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "DomainError",
    "ConvergenceError",
    "UnsupportedCaseError",
    "PolyFamily",
    "QuadratureSpec",
    "eval_poly",
    "eval_poly_log_scaled",
    "ln_gamma",
    "spherical_bessel",
    "integrate",
    "envelope_cutoff",
    "gauss_legendre_panels",
    "xlogx",
    "MAX_DEGREE",
]

MAX_DEGREE = 200

_RESCALE_AT = 1e150
_LOG_RESCALE = math.log(_RESCALE_AT)


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class UnsupportedCaseError(NotImplementedError):
    """Combination of inputs for which no formula is implemented."""


class ConvergenceError(RuntimeError):
    """Adaptive quadrature ran out of budget.

    The best available estimate is kept on the exception so callers can
    decide whether it is good enough.
    """

    def __init__(self, message: str, value: float = math.nan, err_est: float = math.inf):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


@dataclass(frozen=True)
class PolyFamily:
    """One member of the Hermite, associated Laguerre or Gegenbauer families.

    ``kind`` is ``"hermite"``, ``"laguerre"`` or ``"gegenbauer"``; ``alpha`` is
    ignored for Hermite.
    """

    kind: str
    degree: int
    alpha: float = 0.0
    max_degree: int = MAX_DEGREE

    def __post_init__(self):
        if self.kind not in ("hermite", "laguerre", "gegenbauer"):
            raise DomainError(f"unknown polynomial family {self.kind!r}")
        if int(self.degree) != self.degree or self.degree < 0:
            raise DomainError(f"degree must be a non-negative integer, got {self.degree}")
        if self.degree > self.max_degree:
            raise DomainError(f"degree {self.degree} exceeds the configured maximum {self.max_degree}")
        if self.kind == "laguerre" and not self.alpha > -1:
            raise DomainError(f"associated Laguerre requires alpha > -1, got {self.alpha}")
        if self.kind == "gegenbauer" and not self.alpha > -0.5:
            raise DomainError(f"Gegenbauer requires alpha > -1/2, got {self.alpha}")

    @classmethod
    def hermite(cls, n: int) -> "PolyFamily":
        return cls("hermite", n)

    @classmethod
    def laguerre(cls, n: int, alpha: float) -> "PolyFamily":
        return cls("laguerre", n, float(alpha))

    @classmethod
    def gegenbauer(cls, n: int, alpha: float) -> "PolyFamily":
        return cls("gegenbauer", n, float(alpha))


def _first_two(family: PolyFamily, z):
    a = family.alpha
    if family.kind == "hermite":
        return np.ones_like(z), 2.0 * z
    if family.kind == "laguerre":
        return np.ones_like(z), 1.0 + a - z
    return np.ones_like(z), 2.0 * a * z


def _step(family: PolyFamily, k: int, z, p_k, p_km1):
    """Return p_{k+1} from p_k and p_{k-1}."""
    a = family.alpha
    if family.kind == "hermite":
        return 2.0 * z * p_k - 2.0 * k * p_km1
    if family.kind == "laguerre":
        return ((2 * k + 1 + a - z) * p_k - (k + a) * p_km1) / (k + 1)
    return (2.0 * (k + a) * z * p_k - (k + 2.0 * a - 1.0) * p_km1) / (k + 1)


def _as_float_array(z):
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(z)):
        raise DomainError("polynomial argument must be finite")
    return z


def eval_poly(family: PolyFamily, z):
    """Evaluate the polynomial at ``z`` (scalar or array) by recurrence."""
    z = _as_float_array(z)
    p_prev, p = _first_two(family, z)
    if family.degree == 0:
        out = p_prev
    else:
        for k in range(1, family.degree):
            p_prev, p = p, _step(family, k, z, p, p_prev)
        out = p
    return out if out.ndim else float(out)


def eval_poly_log_scaled(family: PolyFamily, z):
    """Return ``(sign, log_abs)`` of the polynomial at ``z``.

    Overflow-safe: the recurrence pair is rescaled whenever it grows past
    1e150 and the discarded factor is carried in log form. Zeros give
    ``sign == 0`` and ``log_abs == -inf``.
    """
    z = _as_float_array(z)
    p_prev, p = _first_two(family, z)
    p_prev = np.array(p_prev, dtype=float)
    p = np.array(p, dtype=float)
    shift = np.zeros_like(z)
    if family.degree == 0:
        p = p_prev
    else:
        for k in range(1, family.degree):
            p_prev, p = p, _step(family, k, z, p, p_prev)
            big = np.abs(p) > _RESCALE_AT
            if np.any(big):
                p = np.where(big, p / _RESCALE_AT, p)
                p_prev = np.where(big, p_prev / _RESCALE_AT, p_prev)
                shift = shift + np.where(big, _LOG_RESCALE, 0.0)
    sign = np.sign(p)
    with np.errstate(divide="ignore"):
        log_abs = np.log(np.abs(p)) + shift
    if sign.ndim == 0:
        return int(sign), float(log_abs)
    return sign.astype(int), log_abs


def ln_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def _sph_series(l: int, z):
    # j_l(z) = z^l/(2l+1)!! * sum_k (-z^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
    lead = np.exp(l * np.log(np.where(z > 0, z, 1.0)) - sum(math.log(2 * i + 1) for i in range(l + 1)))
    if l > 0:
        lead = np.where(z > 0, lead, 0.0)
    term = np.ones_like(z)
    total = np.ones_like(z)
    h = -0.5 * z * z
    for k in range(1, 40):
        term = term * h / (k * (2 * l + 2 * k + 1))
        total = total + term
        if np.all(np.abs(term) <= 1e-17 * np.abs(total)):
            break
    return lead * total


def _sph_upward(l: int, z):
    s, c = np.sin(z), np.cos(z)
    j0 = s / z
    if l == 0:
        return j0
    j1 = s / (z * z) - c / z
    for k in range(1, l):
        j0, j1 = j1, (2 * k + 1) / z * j1 - j0
    return j1


def _sph_downward(l: int, z):
    """Miller recurrence normalised with sum_k (2k+1) j_k^2 = 1."""
    start = l + int(math.sqrt(40 * (l + 1))) + 20 + int(np.max(z))
    f_next = np.zeros_like(z)
    f = np.full_like(z, 1e-30)
    norm = np.zeros_like(z)
    f_l = np.zeros_like(z)
    f0 = f1 = None
    for k in range(start, -1, -1):
        # f is f_k, f_next is f_{k+1}
        norm = norm + (2 * k + 1) * f * f
        if k == l:
            f_l = f.copy()
        if k == 1:
            f1 = f.copy()
        if k == 0:
            f0 = f.copy()
            break
        f_prev = (2 * k + 1) / z * f - f_next
        f_next, f = f, f_prev
        big = np.abs(f) > 1e100
        if np.any(big):
            scale = np.where(big, 1e-100, 1.0)
            f, f_next, f_l = f * scale, f_next * scale, f_l * scale
            norm = norm * scale * scale
    if f1 is None:
        f1 = np.zeros_like(z)
    # sign from whichever of j0, j1 is better conditioned
    j0 = np.sin(z) / z
    j1 = np.sin(z) / (z * z) - np.cos(z) / z
    ref_sign = np.where(np.abs(j0) >= np.abs(j1), np.sign(j0) * np.sign(f0), np.sign(j1) * np.sign(f1))
    return ref_sign * f_l / np.sqrt(norm)


def spherical_bessel(l: int, z):
    """Spherical Bessel function of the first kind j_l(z) for z >= 0.

    Power series for z < 1, upward recurrence for z >= l and normalised
    downward recurrence in between.
    """
    if int(l) != l or l < 0 or l > 100:
        raise DomainError(f"spherical_bessel order must be an integer in [0, 100], got {l}")
    z = np.asarray(z, dtype=float)
    if np.any(z < 0) or not np.all(np.isfinite(z)):
        raise DomainError("spherical_bessel needs finite z >= 0")
    out = np.empty_like(z)
    small = z < 1.0
    up = (~small) & (z >= l)
    mid = (~small) & (~up)
    if np.any(small):
        out[small] = _sph_series(l, z[small])
    if np.any(up):
        out[up] = _sph_upward(l, z[up])
    if np.any(mid):
        out[mid] = _sph_downward(l, z[mid])
    return out if out.ndim else float(out)


def xlogx(y):
    """y*log(y) with the 0*log(0) = 0 convention (y >= 0)."""
    y = np.asarray(y, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(y > 0, y * np.log(np.where(y > 0, y, 1.0)), 0.0)
    return out


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 4096
    truncation_threshold: float = 1e-18

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0 and self.truncation_threshold > 0):
            raise DomainError("quadrature tolerances must be strictly positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


# 7-point Gauss / 15-point Kronrod pair on [-1, 1] (QUADPACK qk15 constants)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_K_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_WEIGHTS = np.zeros(15)
_G_WEIGHTS[[1, 3, 5]] = _WG[:3]
_G_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
_G_WEIGHTS[7] = _WG[3]
_EPS = np.finfo(float).eps


def _kronrod_batch(f, lo, hi):
    """Apply the G7/K15 pair to every interval [lo_i, hi_i] in one call of f."""
    center = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    x = center[:, None] + half[:, None] * _K_NODES[None, :]
    fx = np.asarray(f(x.ravel()), dtype=float).reshape(x.shape)
    if not np.all(np.isfinite(fx)):
        raise ConvergenceError("integrand returned a non-finite value")
    k = half * (fx @ _K_WEIGHTS)
    g = half * (fx @ _G_WEIGHTS)
    mean = (fx @ _K_WEIGHTS) * 0.5
    resasc = np.abs(half) * (np.abs(fx - mean[:, None]) @ _K_WEIGHTS)
    resabs = np.abs(half) * (np.abs(fx) @ _K_WEIGHTS)
    err = np.abs(k - g)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where(resasc > 0, scaled, err)
    floor = 50.0 * _EPS * resabs
    err = np.where(resabs > np.finfo(float).tiny / (50 * _EPS), np.maximum(err, floor), err)
    return k, err


def envelope_cutoff(envelope: Callable, threshold: float, start: float = 8.0, origin: float = 0.0,
                    direction: float = 1.0, max_doublings: int = 40) -> float:
    """Smallest doubled distance beyond which ``|envelope|`` stays below ``threshold``.

    Distances are measured from ``origin`` along ``direction``; the envelope is
    sampled on [d, 2d] at each trial distance d, starting at ``start``.
    """
    d = float(start)
    for _ in range(max_doublings):
        pts = origin + direction * np.linspace(d, 2 * d, 33)
        if np.max(np.abs(np.asarray(envelope(pts), dtype=float))) < threshold:
            return origin + direction * d
        d *= 2.0
    raise ConvergenceError(f"integrand envelope does not fall below {threshold} within |z| < {d}")


def integrate(f: Callable, a: float, b: float, spec: QuadratureSpec | None = None,
              points: Sequence[float] | None = None, initial_panels: int = 1) -> tuple[float, float]:
    """Globally adaptive Gauss-Kronrod quadrature of a vectorised ``f`` over (a, b).

    ``f`` must accept a 1-D array of abscissae. Infinite limits are replaced
    by the point where the integrand envelope drops below
    ``spec.truncation_threshold`` (doubling from |z| = 8). ``points`` adds
    interior breakpoints; ``initial_panels`` splits each piece evenly before
    refinement starts.

    Returns ``(value, err_est)``; raises :class:`ConvergenceError` when more
    than ``spec.max_subdivisions`` intervals would be needed.
    """
    spec = spec or QuadratureSpec()
    a, b = float(a), float(b)
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    if a == b:
        return 0.0, 0.0
    if math.isinf(a) and math.isinf(b):
        a = envelope_cutoff(f, spec.truncation_threshold, origin=0.0, direction=-1.0)
        b = envelope_cutoff(f, spec.truncation_threshold, origin=0.0, direction=1.0)
    elif math.isinf(b):
        b = envelope_cutoff(f, spec.truncation_threshold, start=max(8.0, abs(a)), origin=0.0 if a >= 0 else a)
        b = max(b, a + 8.0)
    elif math.isinf(a):
        a = envelope_cutoff(f, spec.truncation_threshold, start=max(8.0, abs(b)), origin=0.0 if b <= 0 else b,
                            direction=-1.0)
        a = min(a, b - 8.0)

    edges = [a] + sorted(p for p in (points or ()) if a < p < b) + [b]
    lo, hi = [], []
    for x0, x1 in zip(edges[:-1], edges[1:]):
        grid = np.linspace(x0, x1, max(1, initial_panels) + 1)
        lo.extend(grid[:-1])
        hi.extend(grid[1:])
    lo, hi = np.array(lo), np.array(hi)
    val, err = _kronrod_batch(f, lo, hi)

    while True:
        total = float(np.sum(val))
        errsum = float(np.sum(err))
        tol = max(spec.abs_tol, spec.rel_tol * abs(total))
        if errsum <= tol:
            break
        width = hi - lo
        splittable = width > 64 * _EPS * np.maximum(np.abs(lo), np.abs(hi)) + 1e-300
        pick = splittable & (err > tol / len(err))
        if not np.any(pick):
            pick = splittable & (err >= np.max(np.where(splittable, err, 0.0)))
            if not np.any(pick):
                break  # round-off limited; report what we have
        if len(err) + int(np.sum(pick)) > spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature did not reach tolerance {tol:.3g} within {spec.max_subdivisions} subintervals",
                value=sign * total, err_est=errsum)
        mid = 0.5 * (lo[pick] + hi[pick])
        new_lo = np.concatenate([lo[pick], mid])
        new_hi = np.concatenate([mid, hi[pick]])
        new_val, new_err = _kronrod_batch(f, new_lo, new_hi)
        keep = ~pick
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        val = np.concatenate([val[keep], new_val])
        err = np.concatenate([err[keep], new_err])
    return sign * float(np.sum(val)), float(np.sum(err))


def gauss_legendre_panels(a: float, b: float, width: float, order: int = 31) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of composite Gauss-Legendre panels covering [a, b].

    Panels are equal and no wider than ``width``.
    """
    if order < 1:
        raise DomainError("panel rule order must be positive")
    npanels = max(1, int(math.ceil((b - a) / width)))
    t, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(a, b, npanels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    wx = (half[:, None] * w[None, :]).ravel()
    return x, wx
