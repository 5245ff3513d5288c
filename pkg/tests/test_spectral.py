import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import assume, given, settings

from unruhqfi.estimand import Estimand
from unruhqfi.spectral import (
    check_spectrum,
    generic_spectrum,
    kappa1,
    kappa2,
    kappa3,
    kappa3_residuals,
    needs_fallback,
    populations,
    track_continuity,
    werner_gamma,
    werner_spectrum,
    x_state_spectrum,
)
from unruhqfi.states import CorrelationTriple
from unruhqfi.unruh import accelerate, accelerated_state_derivative, accelerated_werner

from conftest import R_MAX, r_values, triples


def _symbolic_block_eigenvalues():
    """Eigenvalues of the two 2x2 blocks of the accelerated state, in sympy."""
    x, y, z, r = sp.symbols("x y z r", real=True)
    c, s = sp.cos(r), sp.sin(r)
    b11, b22 = (1 + z) / 4, (1 - z) / 4
    outer = (b11 * c**2, b22 * s**2 + b11, (x - y) / 4 * c)  # rho11, rho44, rho14
    inner = (b22 * c**2, b11 * s**2 + b22, (x + y) / 4 * c)  # rho22, rho33, rho23
    lams = []
    for a, d, off in (outer, inner):
        mid, rad = (a + d) / 2, sp.sqrt(((a - d) / 2) ** 2 + off**2)
        lams += [mid - rad, mid + rad]
    return (x, y, z, r), lams


SYMBOLS, SYMBOLIC_LAMBDAS = _symbolic_block_eigenvalues()


def test_eigenvalue_derivatives_match_symbolic_oracle():
    t, r = CorrelationTriple(-0.3, -0.6, -0.5), 0.3
    spec = x_state_spectrum(t, r)
    point = dict(zip(SYMBOLS, (t.x, t.y, t.z, r)))
    want_lam = sorted(float(l.subs(point)) for l in SYMBOLIC_LAMBDAS)
    np.testing.assert_allclose(np.sort(spec.eigenvalues), want_lam, atol=1e-14)
    for sym, est in zip(SYMBOLS, (Estimand.X, Estimand.Y, Estimand.Z, Estimand.R)):
        want = {round(float(l.subs(point)), 12): float(sp.diff(l, sym).subs(point)) for l in SYMBOLIC_LAMBDAS}
        dlam, _ = spec.derivatives(est)
        for lam, d in zip(spec.eigenvalues, dlam):
            assert d == pytest.approx(want[round(float(lam), 12)], abs=1e-9)


def test_kappa_functions():
    # the squared kappa3 radicand reduces to 8((x + y)^2 c^2 + s^4)
    for x, y, r in ((-0.3, -0.6, 0.3), (0.2, 0.1, 0.7)):
        assert 2 * math.sqrt(2) * kappa2(x, y, r) == pytest.approx(kappa3(x, y, r, "squared"), rel=1e-14)
    # at r = 0, kappa1 = 2 sqrt2 |x - y|
    assert kappa1(-0.3, -0.6, 0.0) == pytest.approx(2 * math.sqrt(2) * 0.3)


def test_kappa3_variant_residuals():
    res = kappa3_residuals((-0.3, -0.6, -0.5), 0.4)
    assert res["squared"] < 1e-14
    assert not res["printed"] < 1e-10


@given(triples(margin=0.02), r_values())
@settings(max_examples=80, deadline=None)
def test_closed_and_generic_spectra_agree(t, r):
    assume(not needs_fallback(t, r))
    rho = accelerate(t, r)
    closed = x_state_spectrum(t, r)
    assume(not closed.fallback)
    generic = generic_spectrum(rho, {})
    np.testing.assert_allclose(np.sort(closed.eigenvalues), np.sort(generic.eigenvalues), atol=1e-10)
    check_spectrum(closed, rho)
    overlap = np.abs(closed.eigenvectors.conj().T @ generic.eigenvectors)
    # each closed eigenvector coincides with exactly one generic one, up to phase
    gaps = np.diff(np.sort(closed.eigenvalues))
    if gaps.min() > 1e-6:
        np.testing.assert_allclose(np.sort(overlap.max(axis=1)), 1.0, atol=1e-9)


@pytest.mark.parametrize("est", list(Estimand))
def test_closed_derivatives_match_finite_differences(est):
    t, r, h = CorrelationTriple(-0.3, -0.6, -0.5), 0.37, 1e-6
    spec = x_state_spectrum(t, r)
    dlam, dvec = spec.derivatives(est)

    def moved(sign):
        if est is Estimand.R:
            return x_state_spectrum(t, r + sign * h)
        e = np.array([est is Estimand.X, est is Estimand.Y, est is Estimand.Z]) * h * sign
        return x_state_spectrum(np.array(t.as_tuple()) + e, r)

    plus, minus = moved(+1), moved(-1)
    np.testing.assert_allclose((plus.eigenvalues - minus.eigenvalues) / (2 * h), dlam, atol=1e-8)
    np.testing.assert_allclose((plus.eigenvectors - minus.eigenvectors) / (2 * h), dvec, atol=1e-7)


def test_generic_derivatives_match_closed():
    t, r = CorrelationTriple(-0.5, -0.6, -0.5), 0.5
    closed = x_state_spectrum(t, r)
    drho = {e: accelerated_state_derivative(t, r, e) for e in Estimand}
    generic = generic_spectrum(accelerate(t, r), drho)
    order = [int(np.argmax(np.abs(generic.eigenvectors.conj().T @ closed.eigenvectors[:, k]))) for k in range(4)]
    generic = generic.permuted(order)
    for e in Estimand:
        np.testing.assert_allclose(generic.derivatives(e)[0], closed.derivatives(e)[0], atol=1e-12)


def test_fallback_at_removable_singularity():
    spec = x_state_spectrum((0.3, 0.3, 0.0), 0.2)
    assert spec.fallback
    check_spectrum(spec, accelerate((0.3, 0.3, 0.0), 0.2))


def test_werner_spectrum_matches_matrix():
    for x in (-0.9, -0.6, -0.2, 0.3):
        for r in (0.0, 0.3, R_MAX):
            ws = werner_spectrum(x, r)
            rho = accelerated_werner(x, r)
            check_spectrum(ws.spectrum, rho)
            assert ws.gamma == pytest.approx(werner_gamma(x, r))
            # corrected mu values: the two inner eigenvectors (0, -mu, 1, 0) are orthogonal
            assert ws.mu3w * ws.mu4w == pytest.approx(-1.0)


def test_werner_fallback_at_zero():
    ws = werner_spectrum(0.0, 0.3)
    assert ws.spectrum.fallback
    check_spectrum(ws.spectrum, accelerated_werner(0.0, 0.3))


@given(triples(), r_values())
@settings(max_examples=50, deadline=None)
def test_populations_normalised(t, r):
    p = populations(x_state_spectrum(t, r))
    assert sum(p) == pytest.approx(1.0, abs=1e-12)
    assert min(p) >= 0


def test_continuity_tracking_follows_eigenvectors():
    t = CorrelationTriple(-0.5, -0.6, -0.5)
    spectra = track_continuity([x_state_spectrum(t, r) for r in np.linspace(0, R_MAX, 46)])
    for a, b in zip(spectra, spectra[1:]):
        overlap = np.abs(np.sum(a.eigenvectors.conj() * b.eigenvectors, axis=0))
        assert overlap.min() > 0.9
