import math

import numpy as np
import pytest
from hypothesis import given, settings

from unruhqfi.errors import DomainError
from unruhqfi.estimand import Estimand
from unruhqfi.states import CorrelationTriple, build_x_state, validate_density_matrix
from unruhqfi.unruh import (
    AccelerationParameter,
    PhysicalAcceleration,
    accelerate,
    accelerated_state_derivative,
    accelerated_werner,
    accelerated_werner_derivative,
    rindler_parameter,
)

from conftest import R_MAX, r_values, triples


def region_oracle(rho_ab: np.ndarray, r: float) -> np.ndarray:
    """Embed qubit a into Rindler modes I (x) II, then trace out II."""
    c, s = math.cos(r), math.sin(r)
    v = np.zeros((4, 2))  # columns: |0>_a, |1>_a ; rows: |n_I n_II>
    v[0b00, 0] = c
    v[0b11, 0] = s
    v[0b10, 1] = 1.0
    big = np.kron(v, np.eye(2))  # (I, II, b) <- (a, b)
    full = big @ rho_ab @ big.T
    t = full.reshape(2, 2, 2, 2, 2, 2)  # I, II, b ; I', II', b'
    return np.einsum("ijkljm->iklm", t).reshape(4, 4)


@given(triples(), r_values())
@settings(max_examples=60)
def test_accelerate_matches_mode_embedding(t, r):
    np.testing.assert_allclose(accelerate(t, r), region_oracle(build_x_state(t), r), atol=1e-15)


@given(triples(), r_values())
@settings(max_examples=60)
def test_accelerated_state_is_density_matrix(t, r):
    validate_density_matrix(accelerate(t, r))


def test_r_zero_is_identity():
    t = CorrelationTriple(-0.3, -0.6, -0.5)
    np.testing.assert_array_equal(accelerate(t, 0.0), build_x_state(t))


def test_z_derivative_entries():
    r = 0.4
    c2 = math.cos(r) ** 2
    d = accelerated_state_derivative((-0.3, -0.6, -0.5), r, "z")
    np.testing.assert_allclose(np.diag(d).real, [c2 / 4, -c2 / 4, -c2 / 4, c2 / 4], atol=1e-15)
    assert d[0, 3] == 0 and d[1, 2] == 0


@pytest.mark.parametrize("est", list(Estimand))
def test_derivative_matches_central_differences(est, rng):
    h = 1e-6
    for _ in range(20):
        t = CorrelationTriple(*rng.uniform(-0.3, 0.3, 3))
        r = float(rng.uniform(0.01, R_MAX - 0.01))
        exact = accelerated_state_derivative(t, r, est)
        if est is Estimand.R:
            fd = (accelerate(t, r + h) - accelerate(t, r - h)) / (2 * h)
        else:
            e = np.array([est is Estimand.X, est is Estimand.Y, est is Estimand.Z]) * h
            base = np.array(t.as_tuple())
            fd = (accelerate(base + e, r) - accelerate(base - e, r)) / (2 * h)
        np.testing.assert_allclose(exact, fd, atol=1e-8)


def test_werner_derivative_moves_along_line():
    x, r, h = -0.6, 0.3, 1e-6
    fd = (accelerated_werner(x + h, r) - accelerated_werner(x - h, r)) / (2 * h)
    np.testing.assert_allclose(accelerated_werner_derivative(x, r, "x"), fd, atol=1e-8)
    with pytest.raises(DomainError):
        accelerated_werner_derivative(x, r, "z")


@pytest.mark.parametrize("r", [-0.1, R_MAX + 1e-6, float("nan")])
def test_r_outside_domain(r):
    with pytest.raises(DomainError):
        AccelerationParameter(r)


def test_rindler_parameter():
    # tan r = exp(-pi omega c / a)
    p = rindler_parameter(PhysicalAcceleration(a=1.0, omega=1.0))
    assert math.tan(p.r) == pytest.approx(math.exp(-math.pi))
    assert rindler_parameter(PhysicalAcceleration(a=1e12, omega=1.0)).r == pytest.approx(R_MAX, abs=1e-9)
    with pytest.raises(DomainError):
        rindler_parameter(PhysicalAcceleration(a=0.0, omega=1.0))
