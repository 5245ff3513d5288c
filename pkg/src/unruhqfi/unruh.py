"""Single-observer Unruh channel for Dirac qubits.

Qubit ``a`` is accelerated: its vacuum mode splits as
``|0> -> cos r |0>_I|0>_II + sin r |1>_I|1>_II`` while ``|1> -> |1>_I|0>_II``.
Tracing out region II maps the X-state entries as

    rho11 = B11 c^2          rho14 = B14 c
    rho22 = B22 c^2          rho23 = B23 c
    rho33 = B11 s^2 + B33    rho44 = B22 s^2 + B44

with ``c = cos r`` and ``s = sin r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .estimand import Estimand, as_estimand
from .states import CorrelationTriple, XStateCoefficients, as_triple, check_werner

R_MAX = math.pi / 4
_R_SLACK = 1e-15


@dataclass(frozen=True)
class AccelerationParameter:
    """Unruh mixing angle r in [0, pi/4]."""

    r: float

    def __post_init__(self):
        r = self.r
        if not np.isfinite(r) or r < -_R_SLACK or r > R_MAX + _R_SLACK:
            raise DomainError(f"acceleration parameter r={r!r} outside [0, pi/4]")

    @property
    def c(self) -> float:
        return math.cos(self.r)

    @property
    def s(self) -> float:
        return math.sin(self.r)

    def __float__(self) -> float:
        return float(self.r)


@dataclass(frozen=True)
class PhysicalAcceleration:
    """Proper acceleration ``a`` and mode frequency ``omega``.

    Only the ratio ``pi * omega * light_speed / a`` matters.
    """

    a: float
    omega: float
    light_speed: float = 1.0


def as_acceleration(r) -> AccelerationParameter:
    if isinstance(r, AccelerationParameter):
        return r
    return AccelerationParameter(float(r))


def rindler_parameter(p: PhysicalAcceleration) -> AccelerationParameter:
    """tan r = exp(-pi omega c / a)."""
    if not (p.a > 0 and p.omega > 0 and p.light_speed > 0):
        raise DomainError("acceleration, frequency and light speed must be positive")
    return AccelerationParameter(math.atan(math.exp(-math.pi * p.omega * p.light_speed / p.a)))


def _as_coefficients(coeffs) -> XStateCoefficients:
    if isinstance(coeffs, XStateCoefficients):
        return coeffs
    return XStateCoefficients.from_triple(as_triple(coeffs))


def _x_matrix(d11, d22, d33, d44, a14, a23) -> np.ndarray:
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0], m[1, 1], m[2, 2], m[3, 3] = d11, d22, d33, d44
    m[0, 3] = m[3, 0] = a14
    m[1, 2] = m[2, 1] = a23
    return m


def accelerate(coeffs, r) -> np.ndarray:
    """Accelerated two-qubit state after tracing out region II."""
    b = _as_coefficients(coeffs)
    acc = as_acceleration(r)
    c, s = acc.c, acc.s
    return _x_matrix(
        b.B11 * c**2,
        b.B22 * c**2,
        b.B11 * s**2 + b.B33,
        b.B22 * s**2 + b.B44,
        b.B14 * c,
        b.B23 * c,
    )


# d B_ij / d kappa for the correlation parametrisation (B11, B22, B33, B44, B14, B23)
_COEFF_GRADIENT = {
    Estimand.X: (0.0, 0.0, 0.0, 0.0, 0.25, 0.25),
    Estimand.Y: (0.0, 0.0, 0.0, 0.0, -0.25, 0.25),
    Estimand.Z: (0.25, -0.25, -0.25, 0.25, 0.0, 0.0),
}


def accelerated_state_derivative(coeffs, r, param) -> np.ndarray:
    """Exact entrywise derivative of :func:`accelerate` w.r.t. x, y, z or r."""
    b = _as_coefficients(coeffs)
    acc = as_acceleration(r)
    param = as_estimand(param)
    c, s = acc.c, acc.s
    if param is Estimand.R:
        sin2r = math.sin(2.0 * acc.r)
        # d(c^2)/dr = -sin 2r, d(s^2)/dr = sin 2r, dc/dr = -s
        return _x_matrix(
            -b.B11 * sin2r,
            -b.B22 * sin2r,
            b.B11 * sin2r,
            b.B22 * sin2r,
            -b.B14 * s,
            -b.B23 * s,
        )
    g11, g22, g33, g44, g14, g23 = _COEFF_GRADIENT[param]
    return _x_matrix(
        g11 * c**2,
        g22 * c**2,
        g11 * s**2 + g33,
        g22 * s**2 + g44,
        g14 * c,
        g23 * c,
    )


def accelerated_werner(x: float, r) -> np.ndarray:
    x = check_werner(x)
    return accelerate(CorrelationTriple(x, x, x), r)


def accelerated_werner_derivative(x: float, r, param) -> np.ndarray:
    """Derivative of the accelerated Werner state along x = y = z, or along r."""
    x = check_werner(x)
    param = as_estimand(param)
    t = CorrelationTriple(x, x, x)
    if param is Estimand.R:
        return accelerated_state_derivative(t, r, Estimand.R)
    if param is not Estimand.X:
        raise DomainError(f"Werner states are parametrised by x and r only, not {param.value}")
    return sum(accelerated_state_derivative(t, r, e) for e in (Estimand.X, Estimand.Y, Estimand.Z))
