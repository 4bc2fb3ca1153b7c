"""Shannon entropy in position space.

The formula route reduces every entropy to closed-form moments plus a few
one-dimensional integrals over the scaled variable z (z = sqrt(width) x in
one dimension, z = width r^2 for radial states). The ``*_direct`` functions
integrate -rho log rho straight from the densities and serve as the
independent check of the formula route.
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
    UnsupportedCaseError,
    eval_poly_log_scaled,
    integrate,
    ln_gamma,
    xlogx,
)
from .states import RadialState, State1D, radial_density, rho_1d, sphere_area

__all__ = [
    "EntropyReport",
    "hermite_moment",
    "laguerre_cross_moment",
    "integral_I_alpha",
    "entropy_position_1d",
    "entropy_position_radial",
    "angular_entropy_JY",
    "entropy_position_nd",
    "entropy_position_1d_direct",
    "entropy_position_nd_direct",
    "ho_entropy_1d",
]

_LOG_SQRT_PI = 0.5 * math.log(math.pi)


@dataclass
class EntropyReport:
    """Entropy in nats with its error estimate and the named terms it is built from."""

    entropy: float
    err_est: float
    breakdown: dict = field(default_factory=dict)
    space: str = "position"
    integrals: dict = field(default_factory=dict)

    @property
    def s_rho(self) -> float:
        return self.entropy

    def as_dict(self) -> dict:
        return {"space": self.space, "entropy": self.entropy, "err_est": self.err_est,
                "breakdown": dict(self.breakdown)}


def _log_hermite_norm(n: int) -> float:
    """log(sqrt(pi) 2^n n!)."""
    return _LOG_SQRT_PI + n * math.log(2.0) + math.lgamma(n + 1)


def hermite_moment(n: int, k: int, scaled: bool = False) -> float:
    """Integral of z^k H_n(z)^2 exp(-z^2) over the real line, for k in {0, 2, 4} (odd k gives 0).

    With ``scaled=True`` the result is divided by sqrt(pi) 2^n n!, which keeps
    it finite for any n.
    """
    if n < 0 or int(n) != n:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    if k % 2 == 1 and k > 0:
        return 0.0
    if k == 0:
        factor = 1.0
    elif k == 2:
        factor = n + 0.5
    elif k == 4:
        factor = 1.5 * n * n + 1.5 * n + 0.75
    else:
        raise DomainError(f"hermite_moment supports k in {{0, 2, 4}} or odd k, got {k}")
    if scaled:
        return factor
    return math.exp(_log_hermite_norm(n)) * factor


def _gen_binomial(x: float, j: int) -> float:
    """Generalised binomial coefficient C(x, j) for integer j >= 0."""
    if j < 0:
        return 0.0
    out = 1.0
    for i in range(j):
        out *= (x - i) / (i + 1)
    return out


def laguerre_cross_moment(n: int, m: int, alpha: float, beta: float, mu: float) -> float:
    """Integral over (0, inf) of z^mu L_n^alpha(z) L_m^beta(z) exp(-z), via the finite binomial sum."""
    if not (mu > -1 and alpha > -1 and beta > -1):
        raise DomainError("laguerre_cross_moment needs mu, alpha, beta > -1")
    if n < 0 or m < 0:
        raise DomainError("polynomial degrees must be non-negative")
    total = 0.0
    for k in range(min(n, m) + 1):
        total += _gen_binomial(mu - alpha, n - k) * _gen_binomial(mu - beta, m - k) * _gen_binomial(mu + k, k)
    return (-1) ** (n + m) * math.gamma(mu + 1) * total


def _integral_I_alpha(n: int, alpha: float, spec: QuadratureSpec, scaled: bool = True):
    """I^alpha / (sqrt(pi) 2^n n!) (or unscaled), with its error estimate."""
    herm = PolyFamily.hermite(n)
    shift = _log_hermite_norm(n) if scaled else 0.0

    def f(z):
        sign, log_h = eval_poly_log_scaled(herm, z)
        log_def = np.log1p(alpha * z * z)
        w = np.exp(log_def - z * z + 2.0 * log_h - shift)
        return np.where(sign != 0, 2.0 * w * (log_def + 2.0 * log_h), 0.0)

    # integrand is even: twice the half line
    return integrate(f, 0.0, math.inf, spec, initial_panels=max(4, n + 1))


def integral_I_alpha(n: int, alpha: float, spec: QuadratureSpec | None = None) -> float:
    """Integral of (1 + alpha z^2) e^{-z^2} H_n^2 log((1 + alpha z^2) H_n^2) over the real line."""
    if alpha < 0:
        raise DomainError(f"alpha must be >= 0, got {alpha}")
    return _integral_I_alpha(n, alpha, spec or QuadratureSpec(), scaled=False)[0]


def entropy_position_1d(params: ModelParams, n: int, spec: QuadratureSpec | None = None) -> EntropyReport:
    """Position entropy of the 1D eigenstate n from the Hermite-moment formula."""
    if params.dim != 1:
        raise DomainError("entropy_position_1d needs dim = 1")
    spec = spec or QuadratureSpec()
    st = State1D.build(params, n)
    k, a = st.width, st.deformation
    d = 1.0 + (n + 0.5) * a
    integral, err = _integral_I_alpha(n, a, spec)
    terms = {
        "log_width": -0.5 * math.log(k),
        "log_hermite_norm": _log_hermite_norm(n),
        "log_deformation": math.log1p((n + 0.5) * a),
        "moments": (hermite_moment(n, 2, scaled=True) + a * hermite_moment(n, 4, scaled=True)) / d,
        "integral": -integral / d,
    }
    return EntropyReport(math.fsum(terms.values()), err / d, terms)


def _laguerre_weight(state: RadialState):
    """Vectorised z -> (sign, log of n!/Gamma(n+alpha+1) z^alpha e^{-z} L_n^alpha(z)^2, log L^2)."""
    alpha = state.laguerre_alpha
    lag = PolyFamily.laguerre(state.n, alpha)
    shift = math.lgamma(state.n + 1) - ln_gamma(state.n + alpha + 1)

    def weight(z):
        sign, log_l = eval_poly_log_scaled(lag, z)
        log_w = alpha * np.log(z) - z + 2.0 * log_l + shift
        return sign, log_w, 2.0 * log_l

    return weight


def _j_integral(weight, extra_power: int, log_factor, spec: QuadratureSpec, panels: int):
    def f(z):
        sign, log_w, log_l2 = weight(z)
        w = np.exp(log_w) * (z if extra_power else 1.0)
        with np.errstate(invalid="ignore"):
            return np.where(sign != 0, w * log_factor(z, log_l2), 0.0)

    return integrate(f, 0.0, math.inf, spec, initial_panels=panels)


def entropy_position_radial(params: ModelParams, n: int, l: int = 0,
                            spec: QuadratureSpec | None = None) -> EntropyReport:
    """Radial part of the N-D position entropy (everything except the angular term -J_Y)."""
    if params.dim < 2:
        raise DomainError("entropy_position_radial needs dim >= 2")
    spec = spec or QuadratureSpec()
    st = RadialState.build(params, n, l)
    N = params.dim
    k, a, nu = st.width, st.deformation, st.nu
    d = 1.0 + nu * a
    weight = _laguerre_weight(st)
    panels = max(4, n + 1)

    js = {}
    errs = []
    factors = {
        "J1": (0, lambda z, _: l * np.log(z)),
        "J1_tilde": (1, lambda z, _: l * np.log(z)),
        "J2": (0, lambda z, log_l2: log_l2),
        "J2_tilde": (1, lambda z, log_l2: log_l2),
        "J3": (0, lambda z, _: np.log1p(a * z)),
        "J3_tilde": (1, lambda z, _: np.log1p(a * z)),
    }
    for name, (power, fac) in factors.items():
        if (name.startswith("J1") and l == 0) or (name.startswith("J3") and a == 0):
            js[name] = 0.0
            continue
        js[name], e = _j_integral(weight, power, fac, spec, panels)
        errs.append(e * (a if power else 1.0))
    bracket = js["J1"] + a * js["J1_tilde"] + js["J2"] + a * js["J2_tilde"] + js["J3"] + a * js["J3_tilde"]
    second = 6 * n * n + 6 * l * n + 3 * n * N + l + l * l + l * N + N / 2 + N * N / 4
    terms = {
        "log_width": -0.5 * N * math.log(k),
        "log_radial_norm": -(math.log(2.0) + math.lgamma(n + 1) - ln_gamma(n + l + N / 2)),
        "log_deformation": math.log1p(nu * a),
        "integral": -bracket / d,
        "moments": (nu + a * second) / d,
    }
    return EntropyReport(math.fsum(terms.values()), sum(errs) / d, terms, integrals=js)


def angular_entropy_JY(dim: int, mu_chain, spec: QuadratureSpec | None = None) -> float:
    """Integral of |Y|^2 log |Y|^2 over the unit sphere S^{N-1}.

    Closed form for l = 0 in any dimension and for the circle; N = 3 with any (l, m) goes through
    two Gegenbauer integrals. Other cases raise UnsupportedCaseError.
    """
    mu = tuple(int(m) for m in mu_chain)
    if len(mu) != dim - 1:
        raise DomainError(f"mu chain for N={dim} needs {dim - 1} entries, got {mu}")
    if any(m < 0 for m in mu) or any(x < y for x, y in zip(mu, mu[1:])):
        raise DomainError(f"mu chain must be non-increasing and non-negative, got {mu}")
    if dim == 2 or all(m == 0 for m in mu):
        # on the circle |Y|^2 = 1/(2 pi) whatever l is
        return -math.log(sphere_area(dim))
    if dim != 3:
        raise UnsupportedCaseError(
            f"angular entropy for N={dim} with l={mu[0]} > 0 is only available for N = 3")
    spec = spec or QuadratureSpec()
    l, m = mu
    log_fact = lambda x: math.lgamma(x + 1)  # noqa: E731
    log_a = math.log(2 * l + 1) + log_fact(l - m) - math.log(4 * math.pi) - log_fact(l + m)
    log_b = log_fact(2 * m) - m * math.log(2.0) - log_fact(m)
    coeff = 2 * math.pi * math.exp(log_a + 2 * log_b)
    geg = PolyFamily.gegenbauer(l - m, m + 0.5)

    def integrand(z):
        sign, log_c = eval_poly_log_scaled(geg, z)
        one_minus = 1.0 - z * z
        log_s = m * np.log(one_minus) if m else np.zeros_like(z)
        w = np.exp(2.0 * log_c + log_s)
        return np.where(sign != 0, w * (log_s + 2.0 * log_c), 0.0)

    jy12, _ = integrate(integrand, -1.0, 1.0, spec, initial_panels=max(2, l - m + 1))
    return log_a + 2 * log_b + coeff * jy12


def entropy_position_nd(params: ModelParams, q: QuantumNumbers, spec: QuadratureSpec | None = None) -> EntropyReport:
    """Full N-D position entropy: radial part minus the angular entropy."""
    spec = spec or QuadratureSpec()
    chain = q.chain_for(params.dim)
    radial = entropy_position_radial(params, q.n, q.l, spec)
    jy = angular_entropy_JY(params.dim, chain, spec)
    terms = dict(radial.breakdown)
    terms["angular"] = -jy
    return EntropyReport(math.fsum(terms.values()), radial.err_est, terms, integrals=radial.integrals)


def entropy_position_1d_direct(params: ModelParams, n: int, spec: QuadratureSpec | None = None) -> EntropyReport:
    """-integral of rho log rho over the real line, straight from the density."""
    spec = spec or QuadratureSpec()
    st = State1D.build(params, n)
    value, err = integrate(lambda x: -xlogx(rho_1d(st, x)), -math.inf, math.inf, spec,
                           points=[0.0], initial_panels=max(4, n + 1))
    return EntropyReport(value, err, {"direct": value})


def entropy_position_nd_direct(params: ModelParams, q: QuantumNumbers,
                               spec: QuadratureSpec | None = None) -> EntropyReport:
    """-integral of R^2 log R^2 r^{N-1} dr minus J_Y, straight from the radial density."""
    spec = spec or QuadratureSpec()
    chain = q.chain_for(params.dim)
    st = RadialState.build(params, q.n, q.l)
    N = params.dim

    def f(r):
        return -xlogx(radial_density(st, r)) * r ** (N - 1)

    value, err = integrate(f, 0.0, math.inf, spec, initial_panels=max(4, q.n + 1))
    jy = angular_entropy_JY(N, chain, spec)
    return EntropyReport(value - jy, err, {"radial": value, "angular": -jy})


def ho_entropy_1d(n: int, omega: float = 1.0, spec: QuadratureSpec | None = None) -> float:
    """Position entropy of the undeformed oscillator state n (hbar = 1), from its Hermite density."""
    spec = spec or QuadratureSpec()
    shift = _log_hermite_norm(n)
    herm = PolyFamily.hermite(n)

    def f(z):
        sign, log_h = eval_poly_log_scaled(herm, z)
        log_w = -z * z + 2.0 * log_h - shift
        return np.where(sign != 0, 2.0 * np.exp(log_w) * (-log_w), 0.0)

    value, _ = integrate(f, 0.0, math.inf, spec, initial_panels=max(4, n + 1))
    return value - 0.5 * math.log(omega)
