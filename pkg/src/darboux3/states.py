"""Position-space eigenfunctions and probability densities.

With general hbar the Gaussian width of a state is Omega/hbar; for
hbar = 1 this is the energy-dependent frequency itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, QuantumNumbers, frequency, principal_index
from .specfun import DomainError, PolyFamily, eval_poly, eval_poly_log_scaled, ln_gamma

__all__ = [
    "State1D",
    "RadialState",
    "AngularState",
    "psi_1d",
    "rho_1d",
    "radial_R",
    "radial_density",
    "angular_norm_sq",
    "y_squared_3d",
    "sphere_area",
]


@dataclass(frozen=True)
class State1D:
    params: ModelParams
    n: int
    omega_n: float
    norm: float

    @classmethod
    def build(cls, params: ModelParams, n: int) -> "State1D":
        if params.dim != 1:
            raise DomainError("State1D needs a one-dimensional model")
        q = QuantumNumbers(n)
        om = frequency(params, q)
        return cls(params, n, om, math.exp(0.5 * _log_norm_sq_1d(params, n, om)))

    @property
    def width(self) -> float:
        """Omega/hbar, the Gaussian width parameter."""
        return self.omega_n / self.params.hbar

    @property
    def deformation(self) -> float:
        """lam/width, the ratio that enters every closed form."""
        return self.params.lam / self.width

    @property
    def log_norm_sq(self) -> float:
        return _log_norm_sq_1d(self.params, self.n, self.omega_n)


def _log_norm_sq_1d(params, n, om):
    k = om / params.hbar
    return (0.5 * math.log(k / math.pi) - n * math.log(2.0) - math.lgamma(n + 1)
            - math.log1p((n + 0.5) * params.lam / k))


def psi_1d(state: State1D, x):
    """Eigenfunction value at x (scalar or array); parity (-1)^n."""
    x = np.asarray(x, dtype=float)
    k = state.width
    h = eval_poly(PolyFamily.hermite(state.n), math.sqrt(k) * x)
    out = state.norm * np.sqrt(1.0 + state.params.lam * x * x) * np.exp(-0.5 * k * x * x) * h
    return out if out.ndim else float(out)


def rho_1d(state: State1D, x):
    """Probability density |psi|^2, assembled in log space so large n cannot overflow."""
    x = np.asarray(x, dtype=float)
    k = state.width
    sign, log_h = eval_poly_log_scaled(PolyFamily.hermite(state.n), math.sqrt(k) * x)
    log_rho = state.log_norm_sq + np.log1p(state.params.lam * x * x) - k * x * x + 2.0 * log_h
    out = np.where(sign != 0, np.exp(log_rho), 0.0)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class RadialState:
    params: ModelParams
    n: int
    l: int
    omega_nl: float
    norm: float

    @classmethod
    def build(cls, params: ModelParams, n: int, l: int = 0) -> "RadialState":
        if params.dim < 2:
            raise DomainError("radial states need dim >= 2; use State1D for N = 1")
        om = frequency(params, QuantumNumbers(n, l))
        return cls(params, n, l, om, math.exp(0.5 * _log_norm_sq_radial(params, n, l, om)))

    @property
    def width(self) -> float:
        return self.omega_nl / self.params.hbar

    @property
    def deformation(self) -> float:
        return self.params.lam / self.width

    @property
    def laguerre_alpha(self) -> float:
        return self.l - 1 + self.params.dim / 2

    @property
    def nu(self) -> float:
        return principal_index(self.params.dim, QuantumNumbers(self.n, self.l))

    @property
    def log_norm_sq(self) -> float:
        return _log_norm_sq_radial(self.params, self.n, self.l, self.omega_nl)


def _log_norm_sq_radial(params, n, l, om):
    N = params.dim
    k = om / params.hbar
    nu = 2 * n + l + N / 2
    return (math.log(2.0) + math.lgamma(n + 1) + (l + N / 2) * math.log(k)
            - ln_gamma(n + l + N / 2) - math.log1p(nu * params.lam / k))


def radial_R(state: RadialState, r):
    """Radial wavefunction at r >= 0."""
    r = np.asarray(r, dtype=float)
    k = state.width
    lag = eval_poly(PolyFamily.laguerre(state.n, state.laguerre_alpha), k * r * r)
    out = state.norm * np.sqrt(1.0 + state.params.lam * r * r) * r**state.l * np.exp(-0.5 * k * r * r) * lag
    return out if out.ndim else float(out)


def radial_density(state: RadialState, r):
    """R(r)^2 computed in log space."""
    r = np.asarray(r, dtype=float)
    k = state.width
    z = k * r * r
    sign, log_l = eval_poly_log_scaled(PolyFamily.laguerre(state.n, state.laguerre_alpha), z)
    with np.errstate(divide="ignore"):
        log_r = np.where(r > 0, np.log(np.where(r > 0, r, 1.0)), -np.inf)
    log_pow = 2 * state.l * log_r if state.l else 0.0
    log_rho = state.log_norm_sq + np.log1p(state.params.lam * r * r) + log_pow - z + 2.0 * log_l
    out = np.where(sign != 0, np.exp(log_rho), 0.0)
    return out if out.ndim else float(out)


def _log_fact(x: int) -> float:
    return math.lgamma(x + 1)


def angular_norm_sq(dim: int, mu_chain) -> float:
    """Squared normalisation of the hyperspherical harmonic labelled by ``mu_chain``.

    ``mu_chain`` = (mu_1 = l, ..., mu_{N-1} = |m|), non-increasing.
    """
    mu = tuple(int(m) for m in mu_chain)
    if dim < 2 or len(mu) != dim - 1:
        raise DomainError(f"mu chain for N={dim} needs {dim - 1} entries, got {mu}")
    if any(m < 0 for m in mu) or any(a < b for a, b in zip(mu, mu[1:])):
        raise DomainError(f"mu chain must be non-increasing and non-negative, got {mu}")
    N = dim
    log_m2 = -math.log(2 * math.pi)
    for k in range(1, N - 1):
        mk, mk1 = mu[k - 1], mu[k]
        log_m2 += (math.lgamma((N - k + 1) / 2 + mk1) + _log_fact(mk - mk1)
                   + math.log((N - k - 1) / 2 + mk) + _log_fact(N - k + 2 * mk1 - 2)
                   - 0.5 * math.log(math.pi) - math.lgamma((N - k) / 2 + mk1)
                   - math.log((N - k - 1) / 2 + mk1) - _log_fact(N - k + mk + mk1 - 2))
    return math.exp(log_m2)


@dataclass(frozen=True)
class AngularState:
    dim: int
    mu_chain: tuple
    norm_sq: float

    @classmethod
    def build(cls, dim: int, mu_chain) -> "AngularState":
        mu = tuple(int(m) for m in mu_chain)
        return cls(dim, mu, angular_norm_sq(dim, mu))


def y_squared_3d(l: int, m: int, theta):
    """|Y_lm(theta, phi)|^2 on the unit sphere; depends only on |m|."""
    m = abs(int(m))
    if m > l:
        raise DomainError(f"|m| = {m} exceeds l = {l}")
    theta = np.asarray(theta, dtype=float)
    c = eval_poly(PolyFamily.gegenbauer(l - m, m + 0.5), np.cos(theta))
    out = angular_norm_sq(3, (l, m)) * c * c * np.sin(theta) ** (2 * m)
    return out if out.ndim else float(out)


def sphere_area(dim: int) -> float:
    """Area of the unit sphere S^{N-1} embedded in R^N."""
    return 2.0 * math.pi ** (dim / 2) / math.gamma(dim / 2)
