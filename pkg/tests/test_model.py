import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from darboux3.model import (
    ModelParams,
    QuantumNumbers,
    effective_potential,
    energy,
    frequency,
    potential,
    principal_index,
    scalar_curvature,
)
from darboux3.specfun import DomainError


def test_energy_examples():
    assert energy(ModelParams(0.0), 0) == 0.5
    assert energy(ModelParams(0.025), 0) == pytest.approx(0.494, abs=5e-4)
    assert energy(ModelParams(0.05), 2) == pytest.approx(2.207, abs=5e-4)


def test_energy_3d_uses_principal_index():
    p3 = ModelParams(0.1, dim=3)
    nu = 3.5
    closed = -0.1 * nu**2 + nu * math.sqrt(0.01 * nu**2 + 1.0)
    assert energy(p3, QuantumNumbers(1, 0)) == pytest.approx(closed, rel=1e-14)
    assert energy(p3, QuantumNumbers(1, 0)) < 1 / (2 * 0.1)


def test_frequency_examples():
    for n in range(5):
        assert frequency(ModelParams(0.0, omega=1.7), n) == 1.7
    assert frequency(ModelParams(0.1), 0) == pytest.approx(0.9512, abs=5e-5)
    assert frequency(ModelParams(0.05), 9) == pytest.approx(0.6321, abs=5e-5)


def test_potential_examples():
    assert potential(ModelParams(0.1), 0.0) == 0.0
    assert potential(ModelParams(0.0), 2.0) == 2.0
    assert abs(potential(ModelParams(0.1), 1e3) - 5.0) < 1e-4


def test_effective_potential_examples():
    p = ModelParams(0.07)
    assert effective_potential(p, 0.0, 1.3) == potential(p, 1.3)
    assert effective_potential(ModelParams(0.0), 1.0, 1.0) == 1.0
    assert abs(effective_potential(ModelParams(0.1), 1.0, 1e3) - 5.0) < 1e-4
    with pytest.raises(DomainError):
        effective_potential(p, 1.0, 0.0)


def test_scalar_curvature_examples():
    assert scalar_curvature(ModelParams(0.1, dim=3), 0.0) == pytest.approx(-1.2, rel=1e-14)
    assert scalar_curvature(ModelParams(0.0, dim=3), 2.0) == 0.0
    for r in (0.0, 0.5, 3.0):
        assert scalar_curvature(ModelParams(0.2, dim=2), r) == pytest.approx(-0.8 / (1 + 0.2 * r * r) ** 3)
    assert abs(scalar_curvature(ModelParams(0.2, dim=4), 1e4)) < 1e-6


def test_bound_state_property():
    p = ModelParams(0.3)
    energies = [energy(p, n) for n in range(500)]
    assert all(b > a for a, b in zip(energies, energies[1:]))
    assert max(energies) < 1 / (2 * 0.3)


@settings(max_examples=80, deadline=None)
@given(lam=st.floats(0, 5), omega=st.floats(0.1, 5), hbar=st.floats(0.1, 3), n=st.integers(0, 300))
def test_frequency_energy_consistency(lam, omega, hbar, n):
    p = ModelParams(lam, omega, hbar)
    om, e = frequency(p, n), energy(p, n)
    assert omega**2 - 2 * lam * e == pytest.approx(om**2, rel=1e-12, abs=1e-14 * omega**2)


def test_degeneracy_through_principal_index():
    p = ModelParams(0.04, dim=3)
    assert energy(p, QuantumNumbers(2, 0)) == energy(p, QuantumNumbers(1, 2)) == energy(p, QuantumNumbers(0, 4))
    assert principal_index(3, QuantumNumbers(1, 2)) == 5.5


def test_flat_limit_continuity():
    # the leading correction is -lam nu^2, so the 1e-7 bound only holds while nu^2 < 10
    for n in (0, 1, 2):
        assert abs(energy(ModelParams(1e-8), n) - (n + 0.5)) < 1e-7
    for n in (3, 20, 100):
        nu = n + 0.5
        assert energy(ModelParams(1e-8), n) - nu == pytest.approx(-1e-8 * nu**2, rel=1e-6)


@pytest.mark.parametrize("kwargs", [dict(lam=-0.1), dict(omega=0.0), dict(hbar=-1.0), dict(dim=0),
                                    dict(lam=math.inf)])
def test_invalid_params(kwargs):
    with pytest.raises(DomainError):
        ModelParams(**kwargs)


def test_quantum_number_chains():
    assert QuantumNumbers(0, 2).chain_for(3) == (2, 0)
    assert QuantumNumbers(0, 2).chain_for(2) == (2,)
    assert QuantumNumbers(0, 2, (2, 1, 1)).chain_for(4) == (2, 1, 1)
    for bad in [(2, 3), (1, 0)]:
        with pytest.raises(DomainError):
            QuantumNumbers(0, 2, bad).chain_for(3)
    with pytest.raises(DomainError):
        QuantumNumbers(0, 1).chain_for(1)
    with pytest.raises(DomainError):
        QuantumNumbers(-1)
