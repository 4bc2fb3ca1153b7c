"""Oscillator parameters, bound-state spectrum, potentials and curvature."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .specfun import DomainError

__all__ = [
    "ModelParams",
    "QuantumNumbers",
    "principal_index",
    "energy",
    "frequency",
    "potential",
    "effective_potential",
    "scalar_curvature",
]


@dataclass(frozen=True)
class ModelParams:
    """One oscillator instance: deformation ``lam`` (>= 0), ``omega``, ``hbar``, dimension ``dim``."""

    lam: float = 0.0
    omega: float = 1.0
    hbar: float = 1.0
    dim: int = 1

    def __post_init__(self):
        if not (self.lam >= 0 and math.isfinite(self.lam)):
            raise DomainError(f"lambda must be finite and >= 0, got {self.lam}")
        if not self.omega > 0:
            raise DomainError(f"omega must be > 0 for bound states, got {self.omega}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be > 0, got {self.hbar}")
        if int(self.dim) != self.dim or self.dim < 1:
            raise DomainError(f"dimension must be a positive integer, got {self.dim}")

    def with_lambda(self, lam: float) -> "ModelParams":
        return ModelParams(lam, self.omega, self.hbar, self.dim)


@dataclass(frozen=True)
class QuantumNumbers:
    """Labels of a bound state.

    ``mu_chain`` is (mu_1, ..., mu_{N-1}) with mu_1 = l and mu_{N-1} = |m|.
    When left empty for N >= 2 it is filled with the chain (l, 0, ..., 0)
    for N > 2, or (l,) for N = 2.
    """

    n: int
    l: int = 0
    mu_chain: tuple = field(default=())

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a non-negative integer, got {self.n}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")
        object.__setattr__(self, "mu_chain", tuple(int(m) for m in self.mu_chain))

    def chain_for(self, dim: int) -> tuple:
        """The full mu chain for ``dim``, validated."""
        if dim == 1:
            if self.l != 0 or self.mu_chain:
                raise DomainError("one-dimensional states carry only n (l = 0, empty mu chain)")
            return ()
        chain = self.mu_chain or (self.l,) + (0,) * (dim - 2)
        if len(chain) != dim - 1:
            raise DomainError(f"mu chain for N={dim} needs {dim - 1} entries, got {len(chain)}")
        if chain[0] != self.l:
            raise DomainError(f"mu chain must start with l={self.l}, got {chain}")
        if any(m < 0 for m in chain) or any(a < b for a, b in zip(chain, chain[1:])):
            raise DomainError(f"mu chain must be non-increasing and non-negative, got {chain}")
        return chain


def principal_index(dim: int, q: QuantumNumbers) -> float:
    """n + N/2 in one dimension, 2n + l + N/2 otherwise."""
    if dim == 1:
        if q.l != 0:
            raise DomainError("one-dimensional states have l = 0")
        return q.n + 0.5
    return 2 * q.n + q.l + dim / 2


def _nu(params: ModelParams, q) -> float:
    if isinstance(q, QuantumNumbers):
        return principal_index(params.dim, q)
    return principal_index(params.dim, QuantumNumbers(int(q)))


def energy(params: ModelParams, q) -> float:
    """Bound-state energy; ``q`` is QuantumNumbers or a bare n.

    Uses E = hbar nu omega^2 / (sqrt(hbar^2 lam^2 nu^2 + omega^2) + hbar lam nu),
    which equals -hbar^2 lam nu^2 + hbar nu sqrt(...) without the cancellation
    near the continuum edge omega^2/(2 lam).
    """
    nu = _nu(params, q)
    a = params.hbar * params.lam * nu
    return params.hbar * nu * params.omega**2 / (math.hypot(a, params.omega) + a)


def frequency(params: ModelParams, q) -> float:
    """Energy-dependent frequency sqrt(omega^2 - 2 lam E).

    Evaluated as omega^2 / (sqrt(a^2 + omega^2) + a) with a = hbar lam nu,
    the same quantity in cancellation-free form.
    """
    nu = _nu(params, q)
    a = params.hbar * params.lam * nu
    return params.omega**2 / (math.hypot(a, params.omega) + a)


def potential(params: ModelParams, r):
    """omega^2 r^2 / (2 (1 + lam r^2))."""
    r2 = r * r
    return params.omega**2 * r2 / (2.0 * (1.0 + params.lam * r2))


def effective_potential(params: ModelParams, L2: float, r):
    """Centrifugal term L^2/(2 r^2 (1 + lam r^2)) plus the oscillator potential."""
    if L2 < 0:
        raise DomainError("L^2 must be >= 0")
    if L2 > 0 and r <= 0:
        raise DomainError("effective potential diverges at r = 0 for L^2 > 0")
    r2 = r * r
    centrifugal = 0.0 if L2 == 0 else L2 / (2.0 * r2 * (1.0 + params.lam * r2))
    return centrifugal + potential(params, r)


def scalar_curvature(params: ModelParams, r):
    """Scalar curvature of the conformally flat metric (1 + lam r^2) dq^2 at radius r."""
    N, lam = params.dim, params.lam
    u = 1.0 + lam * r * r
    return -lam * (N - 1) * (2 * N + 3 * (N - 2) * lam * r * r) / u**3
