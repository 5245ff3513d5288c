"""Inertial two-qubit X-states and Werner states.

Basis order is |ab> = |00>, |01>, |10>, |11> with ``a`` the qubit that is
later accelerated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
# slack on the positivity inequalities so that boundary states survive rounding
_DOMAIN_SLACK = 1e-12

WERNER_MIN = -1.0
WERNER_MAX = 1.0 / 3.0

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class CorrelationTriple:
    """Correlations x = <XX>, y = <YY>, z = <ZZ> of an X-state."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            value = getattr(self, name)
            if not np.isfinite(value) or abs(value) > 1.0 + _DOMAIN_SLACK:
                raise DomainError(f"{name}={value!r} outside [-1, 1]")
        x, y, z = self.x, self.y, self.z
        if abs(x - y) > 1.0 + z + _DOMAIN_SLACK:
            raise DomainError(
                f"|x - y| = {abs(x - y):.6g} exceeds 1 + z = {1 + z:.6g}: state not positive"
            )
        if abs(x + y) > 1.0 - z + _DOMAIN_SLACK:
            raise DomainError(
                f"|x + y| = {abs(x + y):.6g} exceeds 1 - z = {1 - z:.6g}: state not positive"
            )

    @classmethod
    def werner(cls, x: float) -> "CorrelationTriple":
        return cls(x, x, x)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class XStateCoefficients:
    """The eight nonzero entries B_ij of an inertial X-state."""

    B11: float
    B22: float
    B33: float
    B44: float
    B14: float
    B23: float
    B32: float
    B41: float

    @classmethod
    def from_triple(cls, t: CorrelationTriple) -> "XStateCoefficients":
        diag_plus = (1.0 + t.z) / 4.0
        diag_minus = (1.0 - t.z) / 4.0
        anti_in = (t.x - t.y) / 4.0
        anti_out = (t.x + t.y) / 4.0
        return cls(
            B11=diag_plus,
            B22=diag_minus,
            B33=diag_minus,
            B44=diag_plus,
            B14=anti_in,
            B23=anti_out,
            B32=anti_out,
            B41=anti_in,
        )

    def matrix(self) -> np.ndarray:
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.B11
        rho[1, 1] = self.B22
        rho[2, 2] = self.B33
        rho[3, 3] = self.B44
        rho[0, 3] = self.B14
        rho[3, 0] = self.B41
        rho[1, 2] = self.B23
        rho[2, 1] = self.B32
        return rho


def as_triple(t) -> CorrelationTriple:
    if isinstance(t, CorrelationTriple):
        return t
    x, y, z = t
    return CorrelationTriple(float(x), float(y), float(z))


def check_werner(x: float) -> float:
    x = float(x)
    if not (WERNER_MIN - _DOMAIN_SLACK <= x <= WERNER_MAX + _DOMAIN_SLACK):
        raise DomainError(f"Werner parameter x={x!r} outside [-1, 1/3]")
    return x


def validate_density_matrix(rho: np.ndarray) -> None:
    """Raise DomainError unless rho is a 4x4 Hermitian, unit-trace PSD matrix."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITIAN_TOL:
        raise DomainError(f"matrix not Hermitian (max deviation {herm:.3g})")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise DomainError(f"trace {tr!r} differs from 1")
    lam_min = np.linalg.eigvalsh(rho).min()
    if lam_min < -PSD_TOL:
        raise DomainError(f"smallest eigenvalue {lam_min:.3g} is negative")


def build_x_state(t) -> np.ndarray:
    """Density matrix of the inertial X-state with correlations ``t``."""
    return XStateCoefficients.from_triple(as_triple(t)).matrix()


def build_werner(x: float) -> np.ndarray:
    """Werner state: the X-state with x = y = z, valid for x in [-1, 1/3]."""
    x = check_werner(x)
    return build_x_state(CorrelationTriple(x, x, x))


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    rho_tilde = _YY @ rho.conj() @ _YY
    ev = np.linalg.eigvals(rho @ rho_tilde).real
    ev = np.sort(np.clip(ev, 0.0, None))[::-1]
    roots = np.sqrt(ev)
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))
