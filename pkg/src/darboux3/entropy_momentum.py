"""Momentum-space entropies, total entropies and the entropic uncertainty check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy_position import EntropyReport, angular_entropy_JY, entropy_position_1d, entropy_position_nd
from .model import ModelParams, QuantumNumbers
from .specfun import DomainError, QuadratureSpec, UnsupportedCaseError, integrate, xlogx
from .transform import Fourier1D, Hankel3D, TransformSpec, momentum_window

__all__ = [
    "UncertaintyReport",
    "entropy_momentum_1d",
    "entropy_momentum_3d",
    "momentum_norm",
    "uncertainty_check",
    "bbm_bound",
    "SATURATION_MARGIN",
]

SATURATION_MARGIN = 1e-3


def bbm_bound(dim: int) -> float:
    """N (1 + log pi)."""
    return dim * (1.0 + math.log(math.pi))


@dataclass
class UncertaintyReport:
    s_rho: float
    s_gamma: float
    total: float
    bbm_bound: float
    margin: float
    err_est: float

    @property
    def saturated(self) -> bool:
        return self.margin < SATURATION_MARGIN

    @property
    def satisfied(self) -> bool:
        return self.margin >= -self.err_est

    def as_dict(self) -> dict:
        return {"s_rho": self.s_rho, "s_gamma": self.s_gamma, "total": self.total,
                "bbm_bound": self.bbm_bound, "margin": self.margin, "err_est": self.err_est,
                "saturated": self.saturated}


def _panels(n: int) -> int:
    return max(8, 2 * n + 2)


def entropy_momentum_1d(params: ModelParams, n: int, tspec: TransformSpec | None = None) -> EntropyReport:
    """-int gamma log gamma dp for the 1D eigenstate n."""
    if params.dim != 1:
        raise DomainError("entropy_momentum_1d needs dim = 1")
    tspec = tspec or TransformSpec()
    ft = Fourier1D(params, n, tspec)
    p_max = momentum_window(ft, tspec)
    ft.density(np.array([p_max]))  # fix the node table once for the whole window
    value, err = integrate(lambda p: -2.0 * xlogx(ft.density(p)), 0.0, p_max, tspec.quad,
                           initial_panels=_panels(n))
    return EntropyReport(value, err, {"radial": value}, space="momentum")


def entropy_momentum_3d(params: ModelParams, n: int, l: int = 0, mu_chain=None,
                        tspec: TransformSpec | None = None) -> EntropyReport:
    """Momentum entropy of a 3D state: radial part from K(p) minus the position-space J_Y."""
    if params.dim != 3:
        raise DomainError("entropy_momentum_3d needs dim = 3")
    tspec = tspec or TransformSpec()
    chain = QuantumNumbers(n, l, tuple(mu_chain or ())).chain_for(3)
    jy = angular_entropy_JY(3, chain, tspec.quad)
    hk = Hankel3D(params, n, l, tspec)
    p_max = momentum_window(hk, tspec, radial_power=2)
    hk.density(np.array([p_max]))
    value, err = integrate(lambda p: -xlogx(hk.density(p)) * p * p, 0.0, p_max, tspec.quad,
                           initial_panels=_panels(n))
    terms = {"radial": value, "angular": -jy}
    return EntropyReport(math.fsum(terms.values()), err, terms, space="momentum")


def momentum_norm(params: ModelParams, q: QuantumNumbers | int, tspec: TransformSpec | None = None) -> float:
    """int gamma dp (1D) or int K^2 p^2 dp (3D); one for a correct transform."""
    tspec = tspec or TransformSpec()
    if isinstance(q, int):
        q = QuantumNumbers(q)
    if params.dim == 1:
        ft = Fourier1D(params, q.n, tspec)
        p_max = momentum_window(ft, tspec)
        ft.density(np.array([p_max]))
        return 2.0 * integrate(ft.density, 0.0, p_max, tspec.quad, initial_panels=_panels(q.n))[0]
    if params.dim == 3:
        hk = Hankel3D(params, q.n, q.l, tspec)
        p_max = momentum_window(hk, tspec, radial_power=2)
        hk.density(np.array([p_max]))
        return integrate(lambda p: hk.density(p) * p * p, 0.0, p_max, tspec.quad,
                         initial_panels=_panels(q.n))[0]
    raise UnsupportedCaseError(f"momentum space is only available for N = 1 and N = 3, got N = {params.dim}")


def uncertainty_check(params: ModelParams, q: QuantumNumbers | int, spec: QuadratureSpec | None = None,
                      tspec: TransformSpec | None = None) -> UncertaintyReport:
    """Position and momentum entropies of one state against the bound N (1 + log pi)."""
    spec = spec or QuadratureSpec()
    tspec = tspec or TransformSpec(quad=spec)
    if isinstance(q, int):
        q = QuantumNumbers(q)
    if params.dim == 1:
        pos = entropy_position_1d(params, q.n, spec)
        mom = entropy_momentum_1d(params, q.n, tspec)
    elif params.dim == 3:
        pos = entropy_position_nd(params, q, spec)
        mom = entropy_momentum_3d(params, q.n, q.l, q.chain_for(3), tspec)
    else:
        raise UnsupportedCaseError(f"momentum space is only available for N = 1 and N = 3, got N = {params.dim}")
    bound = bbm_bound(params.dim)
    total = pos.entropy + mom.entropy
    return UncertaintyReport(pos.entropy, mom.entropy, total, bound, total - bound, pos.err_est + mom.err_est)
