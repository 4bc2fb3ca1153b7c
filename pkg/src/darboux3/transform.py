"""Momentum-space amplitudes by direct quadrature of the Fourier integrals.

The 1D eigenfunctions have definite parity, so the Fourier integral is a
single real cosine or sine transform over the half line. The 3D radial
amplitude is the order-l spherical Bessel transform of R(r). Both use
composite Gauss-Legendre panels narrow enough to resolve the oscillation at
the largest requested momentum. Momentum p is the wavenumber conjugate to
x (kernel e^{ipx}).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import ModelParams, QuantumNumbers
from .specfun import (
    DomainError,
    PolyFamily,
    QuadratureSpec,
    eval_poly,
    envelope_cutoff,
    gauss_legendre_panels,
    spherical_bessel,
)
from .states import RadialState, State1D, psi_1d, radial_R, radial_density, rho_1d

__all__ = [
    "SampledCurve",
    "TransformSpec",
    "Fourier1D",
    "Hankel3D",
    "momentum_density_1d",
    "momentum_radial_K",
    "momentum_window",
    "sample_density",
    "ho_momentum_density_1d",
]

_CHUNK = 1 << 22


@dataclass
class SampledCurve:
    abscissae: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.abscissae = np.asarray(self.abscissae, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.abscissae.shape != self.values.shape or self.abscissae.ndim != 1:
            raise DomainError("abscissae and values must be 1-D and of equal length")
        if np.any(np.diff(self.abscissae) <= 0):
            raise DomainError("abscissae must be strictly increasing")


@dataclass(frozen=True)
class TransformSpec:
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    r_max_policy: float = 1e-18
    panel_rule_order: int = 31
    max_p: float | None = None
    tail_threshold: float = 1e-16

    def __post_init__(self):
        if self.panel_rule_order < 7 or self.panel_rule_order % 2 == 0:
            raise DomainError("panel_rule_order must be odd and >= 7")
        if self.max_p is not None and not self.max_p > 0:
            raise DomainError("max_p must be positive")


def _panel_width(p_max: float) -> float:
    return min(math.pi / (2.0 * max(p_max, 1.0)), 0.5)


class Fourier1D:
    """gamma(p) = |(2 pi)^{-1/2} int e^{ipx} psi(x) dx|^2 for one 1D eigenstate.

    Node tables are built lazily for the largest |p| seen so far and are
    reused afterwards.
    """

    def __init__(self, params: ModelParams, n: int, tspec: TransformSpec | None = None):
        self.state = State1D.build(params, n)
        self.tspec = tspec or TransformSpec()
        st = self.state
        self.x_max = envelope_cutoff(lambda x: psi_1d(st, x), self.tspec.r_max_policy,
                                     start=8.0 / math.sqrt(st.width))
        self._p_cap = -1.0
        self._nodes = None

    def _grid(self, p_max):
        if p_max > self._p_cap:
            x, w = gauss_legendre_panels(0.0, self.x_max, _panel_width(p_max), self.tspec.panel_rule_order)
            self._nodes = (x, w * psi_1d(self.state, x))
            self._p_cap = p_max
        return self._nodes

    def amplitude(self, p):
        """The real half-line transform: int_0^inf psi cos(px) dx (even n) or sin (odd n)."""
        p = np.abs(np.asarray(p, dtype=float))
        flat = p.ravel()
        x, fw = self._grid(float(np.max(flat)) if flat.size else 0.0)
        trig = np.cos if self.state.n % 2 == 0 else np.sin
        out = np.empty_like(flat)
        step = max(1, _CHUNK // x.size)
        for i in range(0, flat.size, step):
            out[i:i + step] = trig(np.outer(flat[i:i + step], x)) @ fw
        return out.reshape(p.shape)

    def density(self, p):
        # full line = 2 * half line; gamma = (2 * half)^2 / (2 pi)
        amp = self.amplitude(p)
        return (2.0 / math.pi) * amp * amp


class Hankel3D:
    """K(p) = sqrt(2/pi) int j_l(p r) R(r) r^2 dr for a 3D radial state."""

    def __init__(self, params: ModelParams, n: int, l: int = 0, tspec: TransformSpec | None = None):
        if params.dim != 3:
            raise DomainError("the spherical Bessel transform is implemented for N = 3 only")
        self.state = RadialState.build(params, n, l)
        self.tspec = tspec or TransformSpec()
        st = self.state
        self.r_max = envelope_cutoff(lambda r: radial_R(st, r) * r * r, self.tspec.r_max_policy,
                                     start=8.0 / math.sqrt(st.width))
        self._p_cap = -1.0
        self._nodes = None

    def _grid(self, p_max):
        if p_max > self._p_cap:
            r, w = gauss_legendre_panels(0.0, self.r_max, _panel_width(p_max), self.tspec.panel_rule_order)
            self._nodes = (r, w * radial_R(self.state, r) * r * r)
            self._p_cap = p_max
        return self._nodes

    def amplitude(self, p):
        p = np.asarray(p, dtype=float)
        if np.any(p < 0):
            raise DomainError("radial momentum must be >= 0")
        flat = p.ravel()
        r, fw = self._grid(float(np.max(flat)) if flat.size else 0.0)
        l = self.state.l
        out = np.empty_like(flat)
        step = max(1, _CHUNK // r.size)
        for i in range(0, flat.size, step):
            arg = np.outer(flat[i:i + step], r)
            if l == 0:
                kern = np.sinc(arg / math.pi)
            else:
                kern = spherical_bessel(l, arg)
            out[i:i + step] = kern @ fw
        return math.sqrt(2.0 / math.pi) * out.reshape(p.shape)

    def density(self, p):
        """gamma(p) = K(p)^2."""
        k = self.amplitude(p)
        return k * k


def momentum_window(transform, tspec: TransformSpec | None = None, radial_power: int = 0) -> float:
    """Momentum cutoff beyond which density * p^radial_power * (1 + p^2) stays below the tail threshold."""
    tspec = tspec or transform.tspec
    if tspec.max_p is not None:
        return float(tspec.max_p)
    width = math.sqrt(transform.state.width)
    thr = tspec.tail_threshold

    def env(p):
        return transform.density(p) * (1.0 + p * p) * p**radial_power

    return envelope_cutoff(env, thr, start=4.0 * width)


def momentum_density_1d(params: ModelParams, n: int, p, tspec: TransformSpec | None = None):
    """gamma(p) for the 1D eigenstate n; even in p by construction."""
    if params.dim != 1:
        raise DomainError("momentum_density_1d needs dim = 1")
    out = Fourier1D(params, n, tspec).density(p)
    return out if np.ndim(out) else float(out)


def momentum_radial_K(params: ModelParams, n: int, l: int, p, tspec: TransformSpec | None = None):
    """Radial momentum amplitude K_{n,l}(p) of a 3D state."""
    out = Hankel3D(params, n, l, tspec).amplitude(p)
    return out if np.ndim(out) else float(out)


def ho_momentum_density_1d(n: int, p, omega: float = 1.0):
    """Undeformed oscillator momentum density (hbar = 1), used as a reference."""
    p = np.asarray(p, dtype=float)
    h = eval_poly(PolyFamily.hermite(n), p / math.sqrt(omega))
    log_pref = -0.5 * math.log(omega * math.pi) - n * math.log(2.0) - math.lgamma(n + 1)
    return np.exp(log_pref - p * p / omega) * h * h


def sample_density(params: ModelParams, q: QuantumNumbers | int, space: str, grid,
                   tspec: TransformSpec | None = None) -> SampledCurve:
    """Sample a density on ``grid``.

    1D: rho(x) or gamma(p). N >= 2: the radial probability density
    r^{N-1} R(r)^2 (= 4 pi r^2 rho(r) for N = 3, l = 0), and for N = 3 in
    momentum space p^2 K(p)^2. Both radial curves integrate to one.
    """
    if isinstance(q, int):
        q = QuantumNumbers(q)
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise DomainError("grid must be non-empty")
    tspec = tspec or TransformSpec()
    dim = params.dim
    meta = {"n": q.n, "l": q.l, "mu_chain": list(q.chain_for(dim)), "lambda": params.lam,
            "omega": params.omega, "hbar": params.hbar, "dim": dim, "space": space}
    if space not in ("position", "momentum"):
        raise DomainError(f"space must be 'position' or 'momentum', got {space!r}")
    if dim == 1:
        if space == "position":
            values = rho_1d(State1D.build(params, q.n), grid)
            meta["quantity"] = "rho(x)"
        else:
            values = Fourier1D(params, q.n, tspec).density(grid)
            meta["quantity"] = "gamma(p)"
    else:
        if np.any(grid < 0):
            raise DomainError("radial grids must be >= 0")
        if space == "position":
            st = RadialState.build(params, q.n, q.l)
            values = radial_density(st, grid) * grid ** (dim - 1)
            meta["quantity"] = "r^(N-1) R(r)^2"
        else:
            if dim != 3:
                raise DomainError(f"momentum space is only available for N = 1 and N = 3, got N = {dim}")
            values = Hankel3D(params, q.n, q.l, tspec).density(grid) * grid * grid
            meta["quantity"] = "p^2 K(p)^2"
    return SampledCurve(grid, values, meta)
