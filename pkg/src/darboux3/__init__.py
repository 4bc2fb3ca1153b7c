"""Spectrum, eigenstates and Shannon entropies of the Darboux III oscillator."""

from .entropy_momentum import (
    UncertaintyReport,
    bbm_bound,
    entropy_momentum_1d,
    entropy_momentum_3d,
    momentum_norm,
    uncertainty_check,
)
from .entropy_position import (
    EntropyReport,
    angular_entropy_JY,
    entropy_position_1d,
    entropy_position_nd,
    entropy_position_radial,
)
from .model import ModelParams, QuantumNumbers, energy, frequency, potential, scalar_curvature
from .specfun import ConvergenceError, DomainError, QuadratureSpec, UnsupportedCaseError
from .transform import SampledCurve, TransformSpec, sample_density

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "QuantumNumbers",
    "energy",
    "frequency",
    "potential",
    "scalar_curvature",
    "QuadratureSpec",
    "TransformSpec",
    "DomainError",
    "UnsupportedCaseError",
    "ConvergenceError",
    "EntropyReport",
    "UncertaintyReport",
    "entropy_position_1d",
    "entropy_position_radial",
    "entropy_position_nd",
    "angular_entropy_JY",
    "entropy_momentum_1d",
    "entropy_momentum_3d",
    "momentum_norm",
    "uncertainty_check",
    "bbm_bound",
    "SampledCurve",
    "sample_density",
]
