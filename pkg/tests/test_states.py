import numpy as np
import pytest
from hypothesis import given

from unruhqfi.errors import DomainError
from unruhqfi.states import (
    CorrelationTriple,
    XStateCoefficients,
    build_werner,
    build_x_state,
    check_werner,
    concurrence,
    validate_density_matrix,
)

from conftest import triples, werner_values


def test_coefficients_layout():
    b = XStateCoefficients.from_triple(CorrelationTriple(-0.3, -0.6, -0.5))
    assert b.B11 == pytest.approx(0.125)
    assert b.B22 == pytest.approx(0.375)
    assert b.B33 == pytest.approx(0.375)
    assert b.B44 == pytest.approx(0.125)
    assert b.B14 == pytest.approx(0.075)
    assert b.B23 == pytest.approx(-0.225)
    rho = b.matrix()
    assert rho[3, 0] == rho[0, 3] and rho[2, 1] == rho[1, 2]


def test_matrix_reproduces_pauli_correlations():
    sx = np.array([[0, 1], [1, 0]])
    sy = np.array([[0, -1j], [1j, 0]])
    sz = np.diag([1, -1])
    t = CorrelationTriple(-0.3, -0.6, -0.5)
    rho = build_x_state(t)
    for op, want in ((sx, t.x), (sy, t.y), (sz, t.z)):
        assert np.trace(rho @ np.kron(op, op)).real == pytest.approx(want, abs=1e-15)


@pytest.mark.parametrize(
    "bad",
    [(2, 0, 0), (0, 0, 1.5), (0.9, -0.9, 0.0), (0.9, 0.9, 0.5), (float("nan"), 0, 0)],
)
def test_invalid_triples_rejected(bad):
    with pytest.raises(DomainError):
        CorrelationTriple(*bad)


def test_boundary_states_accepted():
    # singlet and the maximally mixed state sit on or inside the boundary
    CorrelationTriple(-1, -1, -1)
    CorrelationTriple(0, 0, 0)
    CorrelationTriple(1, -1, 1)


@given(triples())
def test_valid_triples_give_density_matrices(t):
    validate_density_matrix(build_x_state(t))


@given(werner_values)
def test_werner_is_diagonal_triple(x):
    assert np.array_equal(build_werner(x), build_x_state((x, x, x)))


def test_werner_range():
    check_werner(-1.0)
    check_werner(1 / 3)
    with pytest.raises(DomainError):
        check_werner(0.4)
    with pytest.raises(DomainError):
        build_werner(-1.01)


def test_validate_density_matrix_rejects():
    with pytest.raises(DomainError):
        validate_density_matrix(np.eye(3) / 3)
    with pytest.raises(DomainError):
        validate_density_matrix(np.diag([0.5, 0.5, 0.5, -0.5]))
    with pytest.raises(DomainError):
        validate_density_matrix(np.eye(4) / 2)
    m = np.eye(4, dtype=complex) / 4
    m[0, 1] = 0.1
    with pytest.raises(DomainError):
        validate_density_matrix(m)


def test_concurrence_values():
    assert concurrence(build_werner(-1)) == pytest.approx(1.0)
    assert concurrence(np.eye(4) / 4) == 0.0
    # Werner family: C = max(0, -(1 + 3x)/2)
    for x in (-0.9, -0.6, -0.4, 0.0, 0.3):
        assert concurrence(build_werner(x)) == pytest.approx(max(0.0, -(1 + 3 * x) / 2), abs=1e-12)
