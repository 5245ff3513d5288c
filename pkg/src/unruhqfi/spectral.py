"""Eigen-decomposition of accelerated X-states.

Two routes are provided. The closed-form route evaluates the analytic
eigenvalues and the ``mu``-parametrised block eigenvectors

    psi_1 ~ (-mu_1, 0, 0, 1)    psi_2 ~ (mu_2, 0, 0, 1)
    psi_3 ~ (0, -mu_3, 1, 0)    psi_4 ~ (0, mu_4, 1, 0)

together with their exact derivatives. The generic route diagonalises the
matrix numerically and differentiates eigenpairs with first-order
perturbation theory. The closed-form route falls back to the generic one
near its removable singularities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import DegeneracyError, DomainError
from .estimand import Estimand, as_estimand
from .states import as_triple, check_werner
from .unruh import (
    accelerate,
    accelerated_state_derivative,
    accelerated_werner,
    accelerated_werner_derivative,
    as_acceleration,
)

SQ2 = math.sqrt(2.0)

#: below this |x - y|, |x + y| or |x| the mu formulas are not evaluated
MU_SINGULAR = 1e-8
#: minimum eigenvalue gap for eigenvector derivatives
GAP_MIN = 1e-9
#: coupling above which a degenerate pair invalidates perturbation theory
COUPLING_MAX = 1e-12
#: eigenvalues below this count as zero
EPS = 1e-12

_X_PATTERN = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)
_OUTER_BLOCK = (0, 3)  # |00>, |11>
_INNER_BLOCK = (1, 2)  # |01>, |10>

KAPPA3_VARIANTS = ("squared", "printed")


@dataclass
class Spectrum4:
    """Eigenpairs of a 4x4 density matrix plus per-estimand derivatives.

    ``eigenvectors[:, i]`` belongs to ``eigenvalues[i]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    d_eigenvalues: dict = field(default_factory=dict)
    d_eigenvectors: dict = field(default_factory=dict)
    source: str = "generic"
    fallback: bool = False
    kappa3_variant: str | None = None
    #: estimands whose eigenvector derivatives are undefined (coupled degeneracy)
    undefined: frozenset = frozenset()

    def derivatives(self, estimand) -> tuple[np.ndarray, np.ndarray]:
        key = None if estimand is None else as_estimand(estimand)
        if key in self.undefined:
            raise DegeneracyError(f"eigenvector derivatives for {key} are undefined at a degeneracy")
        try:
            return self.d_eigenvalues[key], self.d_eigenvectors[key]
        except KeyError:
            raise KeyError(f"spectrum carries no derivatives for estimand {key}") from None

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def residual(self, rho: np.ndarray) -> float:
        """max_i ||rho psi_i - lambda_i psi_i||."""
        v = self.eigenvectors
        res = np.asarray(rho) @ v - v * self.eigenvalues
        return float(np.max(np.linalg.norm(res, axis=0)))

    def permuted(self, perm) -> "Spectrum4":
        perm = list(perm)
        return Spectrum4(
            eigenvalues=self.eigenvalues[perm],
            eigenvectors=self.eigenvectors[:, perm],
            d_eigenvalues={k: v[perm] for k, v in self.d_eigenvalues.items()},
            d_eigenvectors={k: v[:, perm] for k, v in self.d_eigenvectors.items()},
            source=self.source,
            fallback=self.fallback,
            kappa3_variant=self.kappa3_variant,
            undefined=self.undefined,
        )


@dataclass(frozen=True)
class KappaFunctions:
    kappa1: float
    kappa2: float
    kappa3: float


@dataclass
class WernerSpectrum:
    """Closed-form Werner eigen-system; ``spectrum`` carries the x and r derivatives."""

    eigenvalues: np.ndarray
    mu3w: float
    mu4w: float
    gamma: float
    spectrum: Spectrum4


@dataclass(frozen=True)
class Populations:
    values: tuple[float, float, float, float]

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


# ---------------------------------------------------------------------------
# kappa functions and their partial derivatives in (delta, r)


def _kappa_block(delta: float, r: float, variant: str = "squared") -> tuple[float, float, float]:
    """sqrt(4 d^2 - 4 (1 - d^2) cos 2r + cos 4r + 3) and its d/ddelta, d/dr.

    The squared radicand equals 8 (d^2 c^2 + s^4) and is evaluated in that
    form, which does not cancel for small d and r. ``variant="printed"``
    replaces the leading ``4 d^2`` by ``4 d`` and is evaluated literally.
    """
    if variant == "squared":
        q, q_d, q_r = _kappa2_partials(delta, r)
        return 2 * SQ2 * q, 2 * SQ2 * q_d, 2 * SQ2 * q_r
    cos2r, sin2r = math.cos(2 * r), math.sin(2 * r)
    sq = 4 * delta - 4 * (1 - delta**2) * cos2r + math.cos(4 * r) + 3
    if sq < 0:
        return math.nan, math.nan, math.nan
    k = math.sqrt(sq)
    if k == 0.0:
        return 0.0, math.nan, math.nan
    dk_ddelta = (4.0 + 8 * delta * cos2r) / (2 * k)
    dk_dr = (8 * (1 - delta**2) * sin2r - 4 * math.sin(4 * r)) / (2 * k)
    return k, dk_ddelta, dk_dr


def kappa1(x: float, y: float, r: float) -> float:
    return _kappa_block(x - y, float(r))[0]


def kappa2(x: float, y: float, r: float) -> float:
    r = float(r)
    return math.sqrt((x + y) ** 2 * math.cos(r) ** 2 + math.sin(r) ** 4)


def kappa3(x: float, y: float, r: float, variant: str = "squared") -> float:
    if variant not in KAPPA3_VARIANTS:
        raise ValueError(f"unknown kappa3 variant {variant!r}")
    return _kappa_block(x + y, float(r), variant)[0]


def kappa_functions(t, r, variant: str = "squared") -> KappaFunctions:
    t = as_triple(t)
    r = float(as_acceleration(r).r)
    return KappaFunctions(kappa1(t.x, t.y, r), kappa2(t.x, t.y, r), kappa3(t.x, t.y, r, variant))


def _kappa2_partials(delta: float, r: float) -> tuple[float, float, float]:
    c, s = math.cos(r), math.sin(r)
    k = math.sqrt(delta**2 * c**2 + s**4)
    if k == 0.0:
        return 0.0, math.nan, math.nan
    return k, delta * c**2 / k, math.sin(2 * r) * (2 * s**2 - delta**2) / (2 * k)


def mu_partials(sign: int, delta: float, kappa: tuple[float, float, float], r: float):
    """mu = sec r {2 sign (1 - cos 2r) + sqrt2 kappa} / (4 delta) with d/ddelta, d/dr."""
    k, k_d, k_r = kappa
    sec = 1.0 / math.cos(r)
    g = 2 * sign * (1 - math.cos(2 * r)) + SQ2 * k
    mu = sec * g / (4 * delta)
    mu_d = sec * (SQ2 * k_d / (4 * delta) - g / (4 * delta**2))
    mu_r = sec * (4 * sign * math.sin(2 * r) + SQ2 * k_r) / (4 * delta) + mu * math.tan(r)
    return mu, mu_d, mu_r


def stable_mu_partials(sign: int, delta: float, r: float):
    """:func:`mu_partials` for the squared kappa, rationalised.

    With q = sqrt(d^2 c^2 + s^4) and P = s^2 + q the two roots are
    mu_+ = P / (d c) and mu_- = d c / P, so neither involves a cancellation.
    """
    c, s = math.cos(r), math.sin(r)
    q, q_d, q_r = _kappa2_partials(delta, r)
    p = s * s + q
    p_r = math.sin(2 * r) + q_r
    if sign > 0:
        mu = p / (delta * c)
        mu_d = q_d / (delta * c) - p / (delta**2 * c)
        mu_r = p_r / (delta * c) + mu * math.tan(r)
    else:
        mu = delta * c / p
        mu_d = c / p - delta * c * q_d / p**2
        mu_r = -delta * (s * p + c * p_r) / p**2
    return mu, mu_d, mu_r


def _block_vector(eps: int, mu: float) -> np.ndarray:
    """Normalised (eps mu, 1)."""
    return np.array([eps * mu, 1.0]) / math.sqrt(1 + mu * mu)


def _block_vector_derivative(eps: int, mu: float, dmu: float) -> np.ndarray:
    n = math.sqrt(1 + mu * mu)
    return dmu * np.array([eps, -mu]) / n**3


def _embed(block: tuple[int, int], v2: np.ndarray) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[block[0]] = v2[0]
    v[block[1]] = v2[1]
    return v


def _closed_block_residual(rho, block, lams, vecs) -> float:
    sub = rho[np.ix_(block, block)].real
    return max(np.linalg.norm(sub @ v - lam * v) for lam, v in zip(lams, vecs))


# ---------------------------------------------------------------------------
# X-state closed form


def _x_closed_form(t, r: float, variant: str):
    """Closed-form eigen-system with derivative partials, or ``None`` if undefined."""
    x, y, z = t.x, t.y, t.z
    cos2r, sin2r = math.cos(2 * r), math.sin(2 * r)
    dm, dp = x - y, x + y

    k1 = _kappa_block(dm, r)
    k2 = _kappa2_partials(dp, r)
    k3 = _kappa_block(dp, r, variant)
    if not all(np.isfinite(k1 + k2 + k3)):
        return None

    lam = np.array(
        [
            (4 + 2 * (1 + cos2r) * z - SQ2 * k1[0]) / 16,
            (4 + 2 * (1 + cos2r) * z + SQ2 * k1[0]) / 16,
            (2 - (1 + cos2r) * z + 2 * k2[0]) / 8,
            (2 - (1 + cos2r) * z - 2 * k2[0]) / 8,
        ]
    )
    # partials of lambda_i w.r.t. (x - y), (x + y), z, r
    dlam_dm = np.array([-SQ2 * k1[1] / 16, SQ2 * k1[1] / 16, 0.0, 0.0])
    dlam_dp = np.array([0.0, 0.0, 2 * k2[1] / 8, -2 * k2[1] / 8])
    dlam_dz = np.array([(1 + cos2r) / 8, (1 + cos2r) / 8, -(1 + cos2r) / 8, -(1 + cos2r) / 8])
    dlam_dr = np.array(
        [
            (-4 * sin2r * z - SQ2 * k1[2]) / 16,
            (-4 * sin2r * z + SQ2 * k1[2]) / 16,
            (2 * sin2r * z + 2 * k2[2]) / 8,
            (2 * sin2r * z - 2 * k2[2]) / 8,
        ]
    )

    if variant == "squared":
        inner_mus = [stable_mu_partials(+1, dp, r), stable_mu_partials(-1, dp, r)]
    else:
        inner_mus = [mu_partials(+1, dp, k3, r), mu_partials(-1, dp, k3, r)]
    mus = [stable_mu_partials(+1, dm, r), stable_mu_partials(-1, dm, r), *inner_mus]
    eps = (-1, +1, -1, +1)
    return lam, (dlam_dm, dlam_dp, dlam_dz, dlam_dr), mus, eps


def _inner_block_pairing(rho, lam, mus, eps) -> tuple[tuple[int, int], float]:
    """Which of (psi_3, psi_4) belongs to lambda_3: identity or swapped, by residual."""
    vecs = [_block_vector(eps[i], mus[i][0]) for i in (2, 3)]
    straight = _closed_block_residual(rho, _INNER_BLOCK, lam[2:], vecs)
    swapped = _closed_block_residual(rho, _INNER_BLOCK, lam[2:], vecs[::-1])
    if swapped < straight:
        return (3, 2), swapped
    return (2, 3), straight


def kappa3_residuals(t, r) -> dict[str, float]:
    """Best eigen-residual of the inner-block eigenvectors for each kappa3 variant."""
    t = as_triple(t)
    r = float(as_acceleration(r).r)
    rho = accelerate(t, r)
    out = {}
    for variant in KAPPA3_VARIANTS:
        closed = _x_closed_form(t, r, variant)
        if closed is None:
            out[variant] = math.inf
            continue
        lam, _, mus, eps = closed
        _, res = _inner_block_pairing(rho, lam, mus, eps)
        out[variant] = res if np.isfinite(res) else math.inf
    return out


def needs_fallback(t, r) -> bool:
    t = as_triple(t)
    r = float(as_acceleration(r).r)
    if abs(t.x - t.y) < MU_SINGULAR or abs(t.x + t.y) < MU_SINGULAR:
        return True
    gap_outer = math.sqrt(2) * kappa1(t.x, t.y, r) / 8
    gap_inner = kappa2(t.x, t.y, r) / 2
    return min(gap_outer, gap_inner) < GAP_MIN


def x_state_spectrum(t, r, kappa3_variant: str | None = None) -> Spectrum4:
    """Spectrum of the accelerated X-state with derivatives for x, y, z and r.

    ``kappa3_variant=None`` selects whichever variant yields the smaller
    eigen-residual.
    """
    t = as_triple(t)
    acc = as_acceleration(r)
    r = acc.r
    rho = accelerate(t, acc)
    if needs_fallback(t, acc):
        return _fallback_x(t, acc, rho)

    if kappa3_variant is None:
        residuals = kappa3_residuals(t, acc)
        kappa3_variant = min(KAPPA3_VARIANTS, key=lambda v: residuals[v])
    closed = _x_closed_form(t, r, kappa3_variant)
    if closed is None:
        return _fallback_x(t, acc, rho)
    lam, dlam, mus, eps = closed
    dlam_dm, dlam_dp, dlam_dz, dlam_dr = dlam

    inner, _ = _inner_block_pairing(rho, lam, mus, eps)
    order = (0, 1) + inner  # eigenvector index for lambda_1..lambda_4
    blocks = (_OUTER_BLOCK, _OUTER_BLOCK, _INNER_BLOCK, _INNER_BLOCK)

    vecs = np.zeros((4, 4), dtype=complex)
    dvecs = {e: np.zeros((4, 4), dtype=complex) for e in Estimand}
    for col, j in enumerate(order):
        mu, mu_d, mu_r = mus[j]
        block = blocks[j]
        vecs[:, col] = _embed(block, _block_vector(eps[j], mu))
        # delta is x - y for the outer block and x + y for the inner one
        dx = mu_d
        dy = -mu_d if block == _OUTER_BLOCK else mu_d
        for est, dmu in ((Estimand.X, dx), (Estimand.Y, dy), (Estimand.Z, 0.0), (Estimand.R, mu_r)):
            dvecs[est][:, col] = _embed(block, _block_vector_derivative(eps[j], mu, dmu))

    dvals = {
        Estimand.X: dlam_dm + dlam_dp,
        Estimand.Y: -dlam_dm + dlam_dp,
        Estimand.Z: dlam_dz,
        Estimand.R: dlam_dr,
    }
    return Spectrum4(
        eigenvalues=lam,
        eigenvectors=vecs,
        d_eigenvalues=dvals,
        d_eigenvectors=dvecs,
        source="closed",
        kappa3_variant=kappa3_variant,
    )


def _fallback_x(t, acc, rho) -> Spectrum4:
    return _generic_fallback(rho, {e: accelerated_state_derivative(t, acc, e) for e in Estimand})


def _generic_fallback(rho, drho: Mapping) -> Spectrum4:
    """Generic spectrum; estimands hitting a coupled degeneracy are marked undefined."""
    spec = generic_spectrum(rho, {})
    undefined = set()
    for est, d in drho.items():
        try:
            part = generic_spectrum(rho, {est: d})
        except DegeneracyError:
            undefined.add(est)
            continue
        spec.d_eigenvalues[est] = part.d_eigenvalues[est]
        spec.d_eigenvectors[est] = part.d_eigenvectors[est]
    spec.fallback = True
    spec.undefined = frozenset(undefined)
    return spec


# ---------------------------------------------------------------------------
# Werner closed form


def werner_gamma(x: float, r: float) -> float:
    """sqrt(16 x^2 - 4 (1 - 4 x^2) cos 2r + cos 4r + 3), the kappa of delta = 2x."""
    return _kappa_block(2 * x, float(r))[0]


def werner_spectrum(x: float, r) -> WernerSpectrum:
    """Closed-form accelerated Werner spectrum with derivatives along x and r.

    The inner-block eigenvectors are (0, -mu, 1, 0) with
    mu_{3w,4w} = (2 - 2 cos 2r +/- sqrt2 gamma) / (8 x cos r).
    """
    x = check_werner(x)
    acc = as_acceleration(r)
    r = acc.r
    c, s = acc.c, acc.s
    cos2r, sin2r = math.cos(2 * r), math.sin(2 * r)

    if abs(x) < MU_SINGULAR:
        rho = accelerated_werner(x, acc)
        drho = {e: accelerated_werner_derivative(x, acc, e) for e in (Estimand.X, Estimand.R)}
        spec = _generic_fallback(rho, drho)
        return WernerSpectrum(spec.eigenvalues.copy(), math.nan, math.nan, SQ2 * 2 * s**2, spec)

    gamma, g_d, gamma_r = _kappa_block(2 * x, r)
    gamma_x = 2 * g_d

    lam = np.array(
        [
            c**2 * (1 + x) / 4,
            (1 + s**2 + c**2 * x) / 4,
            (1 - x * c**2 - gamma / (2 * SQ2)) / 4,
            (1 - x * c**2 + gamma / (2 * SQ2)) / 4,
        ]
    )
    dlam = {
        Estimand.X: np.array(
            [
                c**2 / 4,
                c**2 / 4,
                (-(c**2) - gamma_x / (2 * SQ2)) / 4,
                (-(c**2) + gamma_x / (2 * SQ2)) / 4,
            ]
        ),
        Estimand.R: np.array(
            [
                -(1 + x) * sin2r / 4,
                (1 - x) * sin2r / 4,
                (x * sin2r - gamma_r / (2 * SQ2)) / 4,
                (x * sin2r + gamma_r / (2 * SQ2)) / 4,
            ]
        ),
    }

    vecs = np.zeros((4, 4), dtype=complex)
    vecs[0, 0] = 1.0
    vecs[3, 1] = 1.0
    dvecs = {e: np.zeros((4, 4), dtype=complex) for e in dlam}
    mus = []
    for col, sign in ((2, +1), (3, -1)):
        # (2 - 2 cos 2r +/- sqrt2 gamma) / (8 x c) is +/- the stable root at delta = 2x
        m, m_d, m_r = stable_mu_partials(sign, 2 * x, r)
        mu, mu_x, mu_r = sign * m, sign * 2 * m_d, sign * m_r
        mus.append(mu)
        vecs[:, col] = _embed(_INNER_BLOCK, _block_vector(-1, mu))
        dvecs[Estimand.X][:, col] = _embed(_INNER_BLOCK, _block_vector_derivative(-1, mu, mu_x))
        dvecs[Estimand.R][:, col] = _embed(_INNER_BLOCK, _block_vector_derivative(-1, mu, mu_r))

    spec = Spectrum4(lam, vecs, dlam, dvecs, source="closed")
    return WernerSpectrum(lam.copy(), mus[0], mus[1], gamma, spec)


# ---------------------------------------------------------------------------
# generic route


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Make the last non-negligible component real and positive."""
    for k in range(v.shape[0] - 1, -1, -1):
        if abs(v[k]) > 1e-12:
            return v * (abs(v[k]) / v[k])
    return v


def _is_x_shaped(m: np.ndarray) -> bool:
    return bool(np.all(np.abs(m[~_X_PATTERN]) == 0.0))


def _eigh_x(rho: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Block-wise diagonalisation; outer block ascending, inner block descending."""
    lam = np.zeros(4)
    vecs = np.zeros((4, 4), dtype=complex)
    for offset, block, descending in ((0, _OUTER_BLOCK, False), (2, _INNER_BLOCK, True)):
        w, v = np.linalg.eigh(rho[np.ix_(block, block)])
        if descending:
            w, v = w[::-1], v[:, ::-1]
        for k in range(2):
            lam[offset + k] = w[k]
            vecs[:, offset + k] = _embed(block, v[:, k])
    return lam, vecs


def generic_spectrum(rho: np.ndarray, drho) -> Spectrum4:
    """Numerical eigenpairs with first-order perturbative derivatives.

    ``drho`` is one Hermitian matrix or a mapping ``{estimand: matrix}``; a
    bare matrix is stored under the key ``None``.
    """
    rho = np.asarray(rho, dtype=complex)
    if isinstance(drho, Mapping):
        derivs = {as_estimand(k): np.asarray(v, dtype=complex) for k, v in drho.items()}
    else:
        derivs = {None: np.asarray(drho, dtype=complex)}

    if _is_x_shaped(rho) and all(_is_x_shaped(d) for d in derivs.values()):
        lam, vecs = _eigh_x(rho)
    else:
        lam, vecs = np.linalg.eigh(rho)
    for k in range(4):
        vecs[:, k] = _fix_phase(vecs[:, k])

    dvals, dvecs = {}, {}
    for key, d in derivs.items():
        m = vecs.conj().T @ d @ vecs
        dv = np.zeros((4, 4), dtype=complex)
        for i in range(4):
            for j in range(4):
                if i == j:
                    continue
                gap = lam[i] - lam[j]
                if abs(gap) < GAP_MIN:
                    if abs(m[j, i]) > COUPLING_MAX and max(lam[i], lam[j]) > EPS:
                        raise DegeneracyError(
                            f"eigenvalues {lam[i]:.6g} and {lam[j]:.6g} are degenerate "
                            f"but coupled by drho ({abs(m[j, i]):.3g})"
                        )
                    continue
                dv[:, i] += m[j, i] / gap * vecs[:, j]
        dvals[key] = np.real(np.diag(m)).copy()
        dvecs[key] = dv
    return Spectrum4(lam, vecs, dvals, dvecs, source="generic")


# ---------------------------------------------------------------------------
# populations and sweep continuity


def populations(s) -> Populations:
    """P_i = lambda_i^2 / sum_j lambda_j^2."""
    lam = np.asarray(s.eigenvalues if hasattr(s, "eigenvalues") else s, dtype=float)
    sq = lam**2
    return Populations(tuple(float(p) for p in sq / sq.sum()))


def match_order(previous: Spectrum4, current: Spectrum4) -> tuple[int, ...]:
    """Permutation of ``current`` maximising eigenvector overlap with ``previous``."""
    overlap = np.abs(previous.eigenvectors.conj().T @ current.eigenvectors)
    best, best_score = None, -1.0
    for perm in itertools.permutations(range(4)):
        score = sum(overlap[i, perm[i]] for i in range(4))
        if score > best_score + 1e-12:
            best, best_score = perm, score
    return best


def track_continuity(spectra) -> list[Spectrum4]:
    """Reorder each spectrum of a sweep to follow its predecessor's eigenvectors."""
    out: list[Spectrum4] = []
    for spec in spectra:
        if out:
            spec = spec.permuted(match_order(out[-1], spec))
        out.append(spec)
    return out


def check_spectrum(spec: Spectrum4, rho: np.ndarray) -> None:
    """Raise DomainError if ``spec`` violates the Spectrum4 invariants for ``rho``."""
    lam = spec.eigenvalues
    if abs(lam.sum() - 1.0) > 1e-12:
        raise DomainError(f"eigenvalues sum to {lam.sum()!r}")
    if lam.min() < -1e-12:
        raise DomainError(f"negative eigenvalue {lam.min():.3g}")
    v = spec.eigenvectors
    if np.max(np.abs(v.conj().T @ v - np.eye(4))) > 1e-10:
        raise DomainError("eigenvectors are not orthonormal")
    if spec.residual(rho) > 1e-10:
        raise DomainError(f"eigen-residual {spec.residual(rho):.3g} too large")
