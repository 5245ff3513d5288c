import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from unruhqfi.errors import NotEstimable
from unruhqfi.estimand import Estimand
from unruhqfi.fisher import evaluate, qfi, qfi_decomposed, qfi_sld, sld_operator, state_matrices
from unruhqfi.spectral import generic_spectrum, needs_fallback
from unruhqfi.states import CorrelationTriple
from unruhqfi.unruh import accelerate, accelerated_state_derivative

from conftest import R_MAX, r_values, triples


def bures_qfi(state, r, est, h=1e-4):
    """QFI from the fidelity: F = 8 (1 - sqrt F(rho_-, rho_+)) / (2h)^2."""
    rho, drho = state_matrices(state, r, est)
    lo, hi = rho - h * drho, rho + h * drho
    s = scipy.linalg.sqrtm(lo)
    fid = np.trace(scipy.linalg.sqrtm(s @ hi @ s)).real
    return 8 * (1 - fid) / (2 * h) ** 2


def test_inertial_value_for_z():
    d = qfi((-0.3, -0.6, -0.5), 0.0, "z")
    assert d.total == pytest.approx(25 / 12, abs=1e-10)
    assert d.pure == 0 and d.mixed == 0


@pytest.mark.parametrize(
    "state,r,est",
    [((-0.5, -0.6, -0.5), 0.0, "x"), ((-0.5, -0.6, -0.5), 0.6, "x"), ((-0.2, -0.6, -0.5), 0.4, "r"), (-0.6, 0.5, "x")],
)
def test_sld_matches_fidelity_oracle(state, r, est):
    assert qfi_sld(*state_matrices(state, r, est)) == pytest.approx(bures_qfi(state, r, est), rel=1e-5)


def test_sld_operator_solves_lyapunov_equation():
    rho, drho = state_matrices((-0.3, -0.6, -0.5), 0.3, "x")
    lop = sld_operator(rho, drho)
    np.testing.assert_allclose((rho @ lop + lop @ rho) / 2, drho, atol=1e-14)
    assert np.trace(rho @ lop @ lop).real == pytest.approx(qfi_sld(rho, drho))


def test_pure_state_normalisation():
    # singlet along r: rho(r) stays rank one only at r = 0, where F = 4(<dpsi|dpsi> - |<psi|dpsi>|^2)
    t = CorrelationTriple(-1, -1, -1)
    rho, drho = state_matrices(t, 0.0, "r")
    assert np.max(np.abs(drho)) == 0.0
    assert qfi_sld(rho, drho) == 0.0
    # a rotating pure state: psi(theta) = (cos theta |01> - sin theta |10>)
    th = 0.3
    psi = np.array([0, math.cos(th), -math.sin(th), 0])
    dpsi = np.array([0, -math.sin(th), -math.cos(th), 0])
    rho = np.outer(psi, psi)
    drho = np.outer(dpsi, psi) + np.outer(psi, dpsi)
    want = 4 * (dpsi @ dpsi - (psi @ dpsi) ** 2)
    assert qfi_sld(rho, drho) == pytest.approx(want, abs=1e-9)
    # the decomposition sees a threefold kernel; the pure part alone carries F
    d = qfi_decomposed(generic_spectrum(rho.astype(complex), drho.astype(complex)), None)
    assert d.total == pytest.approx(want, abs=1e-9)
    assert d.classical == pytest.approx(0.0, abs=1e-12) and d.mixed == pytest.approx(0.0, abs=1e-12)


def test_boundary_state_not_estimable_along_z():
    # on the positivity boundary, moving z pushes the state out of the cone
    with pytest.raises(NotEstimable):
        evaluate((0.5, 0.5, 0.0), 0.0, "z")


def test_not_estimable_outside_support():
    rho = np.diag([1.0, 0, 0, 0]).astype(complex)
    drho = np.diag([0, 0, 0, 1.0]).astype(complex)
    with pytest.raises(NotEstimable):
        qfi_sld(rho, drho)


@given(triples(margin=0.01), r_values(), st.sampled_from(list(Estimand)))
@settings(max_examples=150, deadline=None)
def test_decomposition_equals_sld(t, r, est):
    assume(not needs_fallback(t, r))
    rho = accelerate(t, r)
    assume(np.linalg.eigvalsh(rho).min() > 1e-6)
    ev = evaluate(t, r, est)
    assert ev.residual < 1e-8
    d = ev.decomposition
    assert d.total == pytest.approx(d.classical + d.pure - d.mixed, abs=1e-12)
    assert d.classical >= 0 and d.pure >= -1e-14 and d.mixed >= -1e-14
    # F_p - F_m = 2 sum (l_j - l_k)^2 / (l_j + l_k) |<j|dk>|^2 >= 0
    assert d.mixed <= d.pure + 1e-10


@given(triples(margin=1e-6), r_values())
@settings(max_examples=60, deadline=None)
def test_z_has_no_quantum_part(t, r):
    ev = evaluate(t, r, "z")
    if ev.decomposition.has_components:
        assert abs(ev.decomposition.pure) < 1e-14
        assert abs(ev.decomposition.mixed) < 1e-14


@given(triples(margin=1e-6))
@settings(max_examples=60, deadline=None)
def test_r_at_origin_is_zero(t):
    assert evaluate(t, 0.0, "r").sld < 1e-10


def test_engines_agree_on_generic_route():
    t, r = CorrelationTriple(-0.5, -0.6, -0.5), 0.4
    for est in Estimand:
        rho, drho = accelerate(t, r), accelerated_state_derivative(t, r, est)
        d = qfi_decomposed(generic_spectrum(rho, {est: drho}), est)
        assert d.total == pytest.approx(qfi_sld(rho, drho), rel=1e-12)
        assert d.total == pytest.approx(qfi(t, r, est).total, rel=1e-12)


def test_degenerate_point_reports_sld_only():
    ev = evaluate(0.0, 0.0, "x")
    assert ev.degenerate and ev.fallback
    assert not ev.decomposition.has_components
    assert ev.decomposition.total == pytest.approx(3.0)
    assert ev.sld == pytest.approx(3.0)


def test_werner_matches_x_state_along_line():
    x, r = -0.6, 0.5
    t = CorrelationTriple(x, x, x)
    w = evaluate(x, r, "x").sld
    direct = qfi_sld(
        accelerate(t, r),
        sum(accelerated_state_derivative(t, r, e) for e in (Estimand.X, Estimand.Y, Estimand.Z)),
    )
    assert w == pytest.approx(direct, rel=1e-14)
    assert evaluate(x, R_MAX, "r").decomposition.has_components
