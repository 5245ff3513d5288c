"""Quantum Fisher information engines.

``qfi_sld`` evaluates tr(rho L^2) for the symmetric logarithmic derivative
defined by d rho = (rho L + L rho) / 2. ``qfi_decomposed`` splits the same
quantity into a classical part, the lambda-weighted pure-state part and the
mixing correction, F_I = F_c + F_p - F_m. The SLD value is authoritative
wherever the two could disagree.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError, NotEstimable
from .estimand import Estimand, as_estimand
from .spectral import Spectrum4, generic_spectrum, werner_spectrum, x_state_spectrum
from .states import as_triple
from .unruh import (
    accelerate,
    accelerated_state_derivative,
    accelerated_werner,
    accelerated_werner_derivative,
    as_acceleration,
)

__all__ = [
    "Estimand",
    "FisherDecomposition",
    "QfiEvaluation",
    "evaluate",
    "qfi",
    "qfi_decomposed",
    "qfi_sld",
    "sld_operator",
    "state_matrices",
]

log = logging.getLogger(__name__)

#: eigenvalue (pair-sum) threshold below which terms are dropped
EPS = 1e-12
#: largest drho weight tolerated inside the kernel of rho
KERNEL_WEIGHT_MAX = 1e-10


@dataclass(frozen=True)
class FisherDecomposition:
    classical: float
    pure: float
    mixed: float
    total: float

    @classmethod
    def from_parts(cls, classical: float, pure: float, mixed: float) -> "FisherDecomposition":
        return cls(classical, pure, mixed, classical + pure - mixed)

    @classmethod
    def sld_only(cls, total: float) -> "FisherDecomposition":
        """Total known, components undefined (degenerate eigenvalues)."""
        return cls(math.nan, math.nan, math.nan, total)

    @property
    def has_components(self) -> bool:
        return not math.isnan(self.classical)


def _eigh(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return np.linalg.eigh(np.asarray(rho, dtype=complex))


def _check_kernel(lam: np.ndarray, m: np.ndarray) -> None:
    kernel = lam < EPS
    if kernel.any():
        weight = np.max(np.abs(m[np.ix_(kernel, kernel)]))
        if weight > KERNEL_WEIGHT_MAX:
            raise NotEstimable(
                f"drho has weight {weight:.3g} inside the kernel of rho; parameter not estimable"
            )


def sld_operator(rho: np.ndarray, drho: np.ndarray) -> np.ndarray:
    """Solution L of d rho = (rho L + L rho)/2 on the support of rho."""
    lam, v = _eigh(rho)
    m = v.conj().T @ np.asarray(drho, dtype=complex) @ v
    _check_kernel(lam, m)
    denom = lam[:, None] + lam[None, :]
    mask = denom > EPS
    l_eig = np.zeros_like(m)
    l_eig[mask] = 2 * m[mask] / denom[mask]
    return v @ l_eig @ v.conj().T


def qfi_sld(rho: np.ndarray, drho: np.ndarray) -> float:
    """sum over lambda_i + lambda_j > eps of 2 |<psi_i|drho|psi_j>|^2 / (lambda_i + lambda_j)."""
    lam, v = _eigh(rho)
    m = v.conj().T @ np.asarray(drho, dtype=complex) @ v
    _check_kernel(lam, m)
    denom = lam[:, None] + lam[None, :]
    mask = denom > EPS
    return float(np.sum(2 * np.abs(m[mask]) ** 2 / denom[mask]))


def qfi_decomposed(s: Spectrum4, estimand) -> FisherDecomposition:
    """Classical, pure and mixed parts from eigenvalue and eigenvector derivatives."""
    dlam, dvec = s.derivatives(estimand)
    lam = np.asarray(s.eigenvalues, dtype=float)
    vec = s.eigenvectors

    support = lam > EPS
    classical = float(np.sum(dlam[support] ** 2 / lam[support]))

    gram = vec.conj().T @ dvec  # gram[j, l] = <theta_j | d theta_l>
    norms = np.sum(np.abs(dvec) ** 2, axis=0)
    self_overlap = np.abs(np.diag(gram)) ** 2
    pure = float(4 * np.sum(lam * (norms - self_overlap)))

    mixed = 0.0
    for j in range(4):
        for k in range(4):
            total = lam[j] + lam[k]
            if j == k or total <= EPS:
                continue
            mixed += lam[j] * lam[k] / total * abs(gram[j, k]) ** 2
    mixed = float(8 * mixed)

    if mixed > pure + 1e-10:
        log.warning("mixed part %.6g exceeds pure part %.6g", mixed, pure)
    return FisherDecomposition.from_parts(classical, pure, mixed)


@dataclass
class QfiEvaluation:
    """Everything computed for one (state, r, estimand) point."""

    decomposition: FisherDecomposition
    sld: float
    spectrum: Spectrum4
    rho: np.ndarray
    drho: np.ndarray
    degenerate: bool = False

    @property
    def fallback(self) -> bool:
        return self.spectrum.fallback or self.degenerate

    @property
    def residual(self) -> float:
        """Relative disagreement between the decomposed total and the SLD value."""
        return abs(self.decomposition.total - self.sld) / max(self.sld, 1e-6)


def _is_werner(state) -> bool:
    return isinstance(state, (int, float, np.floating)) and not isinstance(state, bool)


def state_matrices(state, r, estimand) -> tuple[np.ndarray, np.ndarray]:
    """(rho, d rho / d estimand) for an X-state triple or a Werner parameter."""
    acc = as_acceleration(r)
    if _is_werner(state):
        return accelerated_werner(state, acc), accelerated_werner_derivative(state, acc, estimand)
    t = as_triple(state)
    return accelerate(t, acc), accelerated_state_derivative(t, acc, estimand)


def evaluate(state, r, estimand) -> QfiEvaluation:
    """Run spectrum, both Fisher engines and the cross-check for one point.

    ``state`` is a correlation triple for an X-state or a real number for
    the Werner state with x = y = z; for Werner states estimand ``x`` moves
    along the Werner line.
    """
    acc = as_acceleration(r)
    estimand = as_estimand(estimand)
    rho, drho = state_matrices(state, acc, estimand)
    sld = qfi_sld(rho, drho)
    try:
        if _is_werner(state):
            spectrum = werner_spectrum(state, acc).spectrum
        else:
            spectrum = x_state_spectrum(state, acc)
        decomposition = qfi_decomposed(spectrum, estimand)
    except DegeneracyError:
        spectrum = generic_spectrum(rho, {})
        spectrum.fallback = True
        return QfiEvaluation(FisherDecomposition.sld_only(sld), sld, spectrum, rho, drho, True)
    return QfiEvaluation(decomposition, sld, spectrum, rho, drho)


def qfi(state, r, estimand) -> FisherDecomposition:
    """Fisher decomposition for an X-state triple or a Werner parameter."""
    return evaluate(state, r, estimand).decomposition
