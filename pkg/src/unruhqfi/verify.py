"""Self-verification suite: engine equivalence, derivative oracles, errata grids."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass

import numpy as np

from .closed_forms import FORMULA_IDS, CONFIRM_RTOL, ErrataGrid, ErrataReport, errata_report
from .errors import DegeneracyError
from .estimand import Estimand
from .fisher import evaluate, qfi_decomposed, qfi_sld
from .spectral import generic_spectrum, kappa1, kappa2, werner_spectrum
from .states import CorrelationTriple
from .unruh import R_MAX, accelerate, accelerated_state_derivative, accelerated_werner, accelerated_werner_derivative

EQUIVALENCE_TOL = 1e-8
FD_STEP = 1e-5
FD_TOL = 1e-6
WERNER_TOL = 1e-10
#: margin keeping random samples away from fallback thresholds and near-zero eigenvalues
SAMPLE_MARGIN = 1e-3
LAMBDA_MARGIN = 1e-6


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    threshold: float
    detail: str = ""


@dataclass
class VerifySummary:
    checks: list[CheckResult]
    errata: ErrataReport | None
    seed: int
    samples: int
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return _json_safe({
            "passed": self.passed,
            "seed": self.seed,
            "samples": self.samples,
            "elapsed_seconds": round(self.elapsed, 3),
            "checks": [asdict(c) for c in self.checks],
            "errata": self.errata.to_dict() if self.errata is not None else None,
        })


def _json_safe(obj):
    """Replace non-finite floats by the strings "inf", "-inf" and "nan"."""
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return "nan" if math.isnan(obj) else ("inf" if obj > 0 else "-inf")
    return obj


def random_triple(rng: np.random.Generator, margin: float = 0.0) -> CorrelationTriple:
    """Uniform draw in (z, x - y, x + y) coordinates, shrunk by ``margin`` from the boundary."""
    z = rng.uniform(-1 + margin, 1 - margin)
    m = rng.uniform(-(1 + z) + margin, (1 + z) - margin)
    p = rng.uniform(-(1 - z) + margin, (1 - z) - margin)
    return CorrelationTriple((p + m) / 2, (p - m) / 2, z)


def _well_conditioned(t: CorrelationTriple, r: float) -> bool:
    if min(abs(t.x - t.y), abs(t.x + t.y)) < SAMPLE_MARGIN:
        return False
    if min(math.sqrt(2) * kappa1(t.x, t.y, r) / 8, kappa2(t.x, t.y, r) / 2) < SAMPLE_MARGIN:
        return False
    lam = np.linalg.eigvalsh(accelerate(t, r))
    if lam.min() < LAMBDA_MARGIN:
        return False
    gaps = np.diff(np.sort(lam))
    return gaps.min() > SAMPLE_MARGIN


def equivalence_samples(seed: int, samples: int):
    """Seeded (triple, r, estimand) samples away from fallback neighbourhoods."""
    rng = np.random.default_rng(seed)
    estimands = list(Estimand)
    out = []
    while len(out) < samples:
        t = random_triple(rng)
        r = float(rng.uniform(0.0, R_MAX))
        est = estimands[int(rng.integers(len(estimands)))]
        if _well_conditioned(t, r):
            out.append((t, r, est))
    return out


def check_equivalence(seed: int = 0, samples: int = 1000) -> CheckResult:
    worst, where = 0.0, ""
    for t, r, est in equivalence_samples(seed, samples):
        ev = evaluate(t, r, est)
        if ev.residual > worst:
            worst, where = ev.residual, f"{t.as_tuple()}, r={r:.6g}, {est.value}"
    return CheckResult(
        "engine_equivalence", worst < EQUIVALENCE_TOL, worst, EQUIVALENCE_TOL, f"{samples} samples; worst at {where}"
    )


def fd_derivative(t: CorrelationTriple, r: float, est: Estimand, h: float = FD_STEP) -> np.ndarray:
    if est is Estimand.R:
        return (accelerate(t, r + h) - accelerate(t, r - h)) / (2 * h)
    shift = np.array([est is Estimand.X, est is Estimand.Y, est is Estimand.Z], dtype=float) * h
    base = np.array(t.as_tuple())
    plus = CorrelationTriple(*(base + shift))
    minus = CorrelationTriple(*(base - shift))
    return (accelerate(plus, r) - accelerate(minus, r)) / (2 * h)


def derivative_error(t: CorrelationTriple, r: float, est: Estimand, h: float = FD_STEP) -> float:
    exact = accelerated_state_derivative(t, r, est)
    approx = fd_derivative(t, r, est, h)
    return float(np.max(np.abs(exact - approx)) / max(np.max(np.abs(exact)), 1e-12))


def check_derivatives(seed: int = 0, samples: int = 200) -> CheckResult:
    rng = np.random.default_rng(seed + 1)
    worst = 0.0
    for _ in range(samples):
        t = random_triple(rng, margin=2 * FD_STEP)
        r = float(rng.uniform(2 * FD_STEP, R_MAX - 2 * FD_STEP))
        for est in Estimand:
            worst = max(worst, derivative_error(t, r, est))
    return CheckResult("derivative_oracle", worst < FD_TOL, worst, FD_TOL, f"{samples} samples x 4 estimands")


def werner_consistency_error(x: float, r: float) -> float:
    """Max discrepancy between the generic X pipeline at (x, x, x) and the Werner pipeline.

    Both sides use the same Fisher engines; only the state construction and
    the spectral route differ.
    """
    t = CorrelationTriple(x, x, x)
    rho = accelerate(t, r)
    if np.max(np.abs(accelerated_werner(x, r) - rho)) > 0:
        return math.inf
    ws = werner_spectrum(x, r)
    err = float(np.max(np.abs(np.sort(ws.eigenvalues) - np.linalg.eigvalsh(rho))))
    for est in (Estimand.X, Estimand.R):
        drho = accelerated_werner_derivative(x, r, est)
        generic = qfi_decomposed(generic_spectrum(rho, {est: drho}), est)
        w = evaluate(x, r, est)
        err = max(err, abs(w.decomposition.total - generic.total), abs(w.sld - qfi_sld(rho, drho)))
    return err


def check_werner(grid_x=None, grid_r=None) -> CheckResult:
    xs = np.linspace(-0.95, 0.3, 26) if grid_x is None else grid_x
    rs = np.linspace(0.0, R_MAX, 46) if grid_r is None else grid_r
    worst = 0.0
    for x in xs:
        for r in rs:
            try:
                worst = max(worst, werner_consistency_error(float(x), float(r)))
            except DegeneracyError:
                continue
    return CheckResult("werner_consistency", worst < WERNER_TOL, worst, WERNER_TOL, f"{len(xs)} x values x {len(rs)} r values")


def check_errata(report: ErrataReport) -> list[CheckResult]:
    ids = [v.formula_id for v in report.verdicts]
    missing = sorted(set(FORMULA_IDS) - set(ids))
    bad = [v.formula_id for v in report.verdicts + report.variants if v.status == "CONFIRMED" and not v.max_rel_error < CONFIRM_RTOL]
    confirmed_k3 = [v.formula_id for v in report.kappa3 if v.status == "CONFIRMED"]
    return [
        CheckResult("errata_all_ids", not missing, float(len(missing)), 0.0, f"missing: {missing}" if missing else "11 verdicts"),
        CheckResult("errata_confirmed_within_tolerance", not bad, float(len(bad)), 0.0, ", ".join(bad)),
        CheckResult(
            "kappa3_exactly_one_variant",
            len(confirmed_k3) == 1,
            float(len(confirmed_k3)),
            1.0,
            ", ".join(confirmed_k3),
        ),
    ]


def run_verify(seed: int = 0, samples: int = 1000, grid_only: bool = False, grid: ErrataGrid | None = None) -> VerifySummary:
    start = time.perf_counter()
    checks: list[CheckResult] = []
    if not grid_only:
        checks.append(check_equivalence(seed, samples))
        checks.append(check_derivatives(seed))
        checks.append(check_werner())
    report = errata_report(grid)
    checks.extend(check_errata(report))
    return VerifySummary(checks, report, seed, 0 if grid_only else samples, time.perf_counter() - start)
