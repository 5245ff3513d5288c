"""Parameter sweeps over r and their CSV serialisation.

A sweep configuration is a YAML mapping::

    name: fig1a                 # used for the output file name
    state_kind: x               # x or werner
    parameters:                 # one curve per entry
      - [-0.3, -0.6, -0.3]      # (x, y, z) for X-states, a bare number for Werner
    estimand: z                 # x, y, z or r
    r_grid: {start: 0.0, stop: 0.7853981633974483, count: 46}
    outputs: [total, components, populations, concurrence, closed_forms]
    continuity: true            # reorder eigenpairs to follow the previous r

``r_grid.stop`` may be given as the string ``pi/4``. Every key except
``parameters`` and ``estimand`` is optional.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .errors import ConfigError, DomainError, FallbackRegion, SingularDenominator
from .estimand import WERNER_ESTIMANDS, Estimand, as_estimand
from .fisher import evaluate
from .spectral import populations, track_continuity
from .states import CorrelationTriple, as_triple, check_werner, concurrence
from .unruh import R_MAX

OUTPUT_KINDS = ("total", "components", "populations", "concurrence", "closed_forms")
RESIDUAL_MAX = 1e-8
PRESETS = ("fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6a", "fig6b")

BASE_COLUMNS = (
    "curve",
    "state",
    "x",
    "y",
    "z",
    "estimand",
    "r",
    "F_c",
    "F_p",
    "F_m",
    "F_I",
    "F_sld",
    "residual",
    "P1",
    "P2",
    "P3",
    "P4",
    "concurrence",
    "fallback",
    "flagged",
)
CLOSED_COLUMNS = ("closed_F_c", "closed_F_p", "closed_F_m")


@dataclass(frozen=True)
class RGrid:
    start: float = 0.0
    stop: float = R_MAX
    count: int = 46

    def __post_init__(self):
        if self.count < 2:
            raise ConfigError(f"r_grid.count must be at least 2, got {self.count}")
        if self.start < 0:
            raise ConfigError(f"r_grid.start must be >= 0, got {self.start}")
        if self.stop > R_MAX + 1e-15:
            raise ConfigError(f"r_grid.stop must be <= pi/4, got {self.stop}")
        if self.stop < self.start:
            raise ConfigError("r_grid.stop is below r_grid.start")

    def values(self) -> np.ndarray:
        return np.minimum(np.linspace(self.start, self.stop, self.count), R_MAX)


@dataclass(frozen=True)
class SweepConfig:
    name: str
    state_kind: str
    parameters: tuple
    estimand: Estimand
    r_grid: RGrid = field(default_factory=RGrid)
    outputs: frozenset = frozenset(OUTPUT_KINDS[:4])
    continuity: bool = True

    @classmethod
    def from_mapping(cls, data, name: str = "sweep") -> "SweepConfig":
        if not isinstance(data, dict):
            raise ConfigError("sweep configuration must be a mapping")
        unknown = set(data) - {"name", "state_kind", "parameters", "estimand", "r_grid", "outputs", "continuity"}
        if unknown:
            raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
        kind = str(data.get("state_kind", "x")).lower()
        if kind not in ("x", "werner"):
            raise ConfigError(f"state_kind must be x or werner, got {kind!r}")
        if "estimand" not in data or "parameters" not in data:
            raise ConfigError("configuration needs 'parameters' and 'estimand'")
        estimand = as_estimand(data["estimand"])
        params = data["parameters"]
        if not isinstance(params, list) or not params:
            raise ConfigError("'parameters' must be a non-empty list")
        try:
            if kind == "werner":
                if estimand not in WERNER_ESTIMANDS:
                    raise ConfigError(f"Werner sweeps support estimands x and r, not {estimand.value}")
                parsed = tuple(check_werner(p) for p in params)
            else:
                parsed = tuple(as_triple(p) for p in params)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(f"invalid parameter set: {exc}") from exc
        grid = data.get("r_grid", {}) or {}
        if not isinstance(grid, dict):
            raise ConfigError("r_grid must be a mapping with start, stop, count")
        r_grid = RGrid(
            start=_angle(grid.get("start", 0.0)),
            stop=_angle(grid.get("stop", R_MAX)),
            count=int(grid.get("count", 46)),
        )
        outputs = data.get("outputs", list(OUTPUT_KINDS[:4]))
        bad = set(outputs) - set(OUTPUT_KINDS)
        if bad:
            raise ConfigError(f"unknown outputs: {sorted(bad)}")
        return cls(
            name=str(data.get("name", name)),
            state_kind=kind,
            parameters=parsed,
            estimand=estimand,
            r_grid=r_grid,
            outputs=frozenset(outputs),
            continuity=bool(data.get("continuity", True)),
        )

    @classmethod
    def load(cls, path) -> "SweepConfig":
        path = Path(path)
        try:
            data = yaml.safe_load(path.read_text())
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read {path}: {exc}") from exc
        return cls.from_mapping(data, name=path.stem)

    @classmethod
    def preset(cls, name: str) -> "SweepConfig":
        if name not in PRESETS:
            raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
        text = resources.files("unruhqfi").joinpath("presets").joinpath(f"{name}.yaml").read_text()
        return cls.from_mapping(yaml.safe_load(text), name=name)


def _angle(value) -> float:
    if isinstance(value, str):
        v = value.replace(" ", "").lower()
        if v == "pi/4":
            return R_MAX
        try:
            return float(v)
        except ValueError:
            raise ConfigError(f"cannot parse angle {value!r}") from None
    return float(value)


@dataclass(frozen=True)
class SweepRow:
    curve: int
    state: str
    x: float
    y: float
    z: float
    estimand: str
    r: float
    F_c: float
    F_p: float
    F_m: float
    F_I: float
    F_sld: float
    residual: float
    P1: float
    P2: float
    P3: float
    P4: float
    concurrence: float
    fallback: int
    flagged: int
    closed: tuple = (math.nan, math.nan, math.nan)


def _closed_columns(state, r, estimand) -> tuple[float, float, float]:
    """Printed closed forms for the matching setting; NaN where none applies."""
    from . import closed_forms as cf

    nan = math.nan
    try:
        if isinstance(state, CorrelationTriple):
            if estimand is Estimand.Z:
                return cf.closed_Fz(state, r), 0.0, 0.0
            if estimand is Estimand.X:
                d = cf.closed_Fx_components(state, r)
                return d.classical, d.pure, d.mixed
            if estimand is Estimand.R:
                return cf.closed_Fr_classical(state, r), nan, nan
            return nan, nan, nan
        d = cf.closed_werner_Fx(state, r) if estimand is Estimand.X else cf.closed_werner_Fr(state, r)
        return d.classical, d.pure, d.mixed
    except (SingularDenominator, FallbackRegion, DomainError, OverflowError):
        return nan, nan, nan


def run_curve(config: SweepConfig, index: int) -> list[SweepRow]:
    state = config.parameters[index]
    if isinstance(state, CorrelationTriple):
        label, (x, y, z) = "x", state.as_tuple()
    else:
        label, (x, y, z) = "werner", (state, state, state)
    rs = config.r_grid.values()
    evals = [evaluate(state, float(r), config.estimand) for r in rs]
    spectra = [e.spectrum for e in evals]
    if config.continuity:
        spectra = track_continuity(spectra)
    rows = []
    for r, ev, spec in zip(rs, evals, spectra):
        d = ev.decomposition
        pops = populations(spec).values
        closed = (math.nan,) * 3
        if "closed_forms" in config.outputs:
            closed = _closed_columns(state, float(r), config.estimand)
        residual = ev.residual
        rows.append(
            SweepRow(
                curve=index,
                state=label,
                x=x,
                y=y,
                z=z,
                estimand=config.estimand.value,
                r=float(r),
                F_c=d.classical,
                F_p=d.pure,
                F_m=d.mixed,
                F_I=d.total,
                F_sld=ev.sld,
                residual=residual,
                P1=pops[0],
                P2=pops[1],
                P3=pops[2],
                P4=pops[3],
                concurrence=concurrence(ev.rho),
                fallback=int(ev.fallback),
                flagged=int(not residual < RESIDUAL_MAX),
                closed=closed,
            )
        )
    return rows


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    """All rows ordered by (curve index, r index)."""
    rows: list[SweepRow] = []
    for i in range(len(config.parameters)):
        rows.extend(run_curve(config, i))
    return rows


def columns_for(config: SweepConfig) -> tuple[str, ...]:
    return BASE_COLUMNS + (CLOSED_COLUMNS if "closed_forms" in config.outputs else ())


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return "%.17g" % float(value)


def render_csv(config: SweepConfig, rows: list[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    cols = columns_for(config)
    writer.writerow(cols)
    for row in rows:
        values = [getattr(row, c) for c in BASE_COLUMNS]
        if len(cols) > len(BASE_COLUMNS):
            values.extend(row.closed)
        writer.writerow([_fmt(v) for v in values])
    return buf.getvalue()


def write_csv(config: SweepConfig, rows: list[SweepRow], directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{config.name}.csv"
    with open(path, "w", newline="") as fh:
        fh.write(render_csv(config, rows))
    return path
