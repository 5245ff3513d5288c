"""Command-line front end: ``point``, ``sweep`` and ``verify``.

Exit codes: 0 ok, 1 invariant failure, 2 domain or configuration error,
3 parameter not estimable.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ConfigError, DomainError, NotEstimable
from .fisher import evaluate
from .spectral import populations
from .states import CorrelationTriple, concurrence
from .sweep import PRESETS, RESIDUAL_MAX, SweepConfig, run_sweep, write_csv

EXIT_OK, EXIT_INVARIANT, EXIT_DOMAIN, EXIT_NOT_ESTIMABLE = 0, 1, 2, 3

# flags whose value is a comma list that may start with a minus sign
_LIST_FLAGS = ("--x-state",)


def _fmt(value) -> str:
    if isinstance(value, (bool, int)):
        return str(int(value))
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _triple(text: str) -> CorrelationTriple:
    parts = text.split(",")
    if len(parts) != 3:
        raise DomainError(f"--x-state expects three comma-separated numbers, got {text!r}")
    try:
        return CorrelationTriple(*(float(p) for p in parts))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"cannot parse --x-state {text!r}") from None


def cmd_point(args) -> int:
    if (args.x_state is None) == (args.werner is None):
        raise DomainError("give exactly one of --x-state or --werner")
    state = _triple(args.x_state) if args.x_state is not None else float(args.werner)
    ev = evaluate(state, args.r, args.estimand)
    d = ev.decomposition
    out = {}
    if isinstance(state, CorrelationTriple):
        out.update(state="x", x=state.x, y=state.y, z=state.z)
    else:
        out.update(state="werner", x=state)
    out.update(r=float(args.r), estimand=str(args.estimand).lower())
    out.update(F_c=d.classical, F_p=d.pure, F_m=d.mixed, F_I=d.total, F_sld=ev.sld, residual=ev.residual)
    for i, lam in enumerate(sorted(float(v) for v in ev.spectrum.eigenvalues)):
        out[f"lambda{i + 1}"] = lam
    for i, p in enumerate(populations(ev.spectrum)):
        out[f"P{i + 1}"] = p
    out.update(concurrence=concurrence(ev.rho), fallback=ev.fallback, degenerate=ev.degenerate)
    for key, value in out.items():
        print(f"{key}={_fmt(value)}")
    if not ev.residual < RESIDUAL_MAX:
        print(f"error: decomposed total and SLD value disagree (residual {ev.residual:.3g})", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.config is not None and args.preset is not None:
        raise ConfigError("give either --config or --preset, not both")
    if args.config is not None:
        configs = [SweepConfig.load(args.config)]
    elif args.preset == "all":
        configs = [SweepConfig.preset(p) for p in PRESETS]
    elif args.preset is not None:
        configs = [SweepConfig.preset(args.preset)]
    else:
        raise ConfigError("sweep needs --config or --preset")
    # sweeps are deterministic; the seed is accepted for interface symmetry only
    status = EXIT_OK
    for config in configs:
        rows = run_sweep(config)
        path = write_csv(config, rows, args.output)
        flagged = sum(r.flagged for r in rows)
        print(f"wrote {path} rows={len(rows)} flagged={flagged}")
        if flagged:
            status = EXIT_INVARIANT
    return status


def cmd_verify(args) -> int:
    from .verify import run_verify

    summary = run_verify(seed=args.seed, samples=args.samples, grid_only=args.grid_only)
    for c in summary.checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name} value={c.value:.3g} threshold={c.threshold:.3g} {c.detail}")
    if summary.errata is not None:
        for v in summary.errata.verdicts:
            print(f"{v.formula_id} {v.status} max_rel_error={v.max_rel_error:.3g} grid={v.grid_size}")
        for v in summary.errata.kappa3:
            print(f"{v.formula_id} {v.status} residual={v.max_rel_error:.3g}")
    print(f"elapsed={summary.elapsed:.2f}s")
    if args.output is not None:
        out = Path(args.output)
        if out.suffix != ".json":
            out.mkdir(parents=True, exist_ok=True)
            out = out / "verify.json"
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(summary.to_dict(), indent=2, allow_nan=False) + "\n")
        print(f"wrote {out}")
    return EXIT_OK if summary.passed else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="unruhqfi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="evaluate a single state, r and estimand")
    p.add_argument("--x-state", metavar="X,Y,Z", help="X-state correlations")
    p.add_argument("--werner", type=float, metavar="X", help="Werner parameter in [-1, 1/3]")
    p.add_argument("--r", type=float, required=True, help="acceleration parameter in [0, pi/4]")
    p.add_argument("--estimand", required=True, choices=["x", "y", "z", "r"])
    p.set_defaults(func=cmd_point)

    s = sub.add_parser("sweep", help="write CSV sweeps over r")
    s.add_argument("--config", help="YAML sweep configuration")
    s.add_argument("--preset", choices=[*PRESETS, "all"], help="bundled figure preset")
    s.add_argument("--output", default=".", help="output directory (default: current)")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_sweep)

    v = sub.add_parser("verify", help="run the self-verification suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=1000)
    v.add_argument("--grid-only", action="store_true", help="closed-form verdicts only")
    v.add_argument("--output", help="directory or .json path for the JSON report")
    v.set_defaults(func=cmd_verify)
    return parser


def _join_list_flags(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _LIST_FLAGS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_list_flags(argv))
    try:
        return args.func(args)
    except NotEstimable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_ESTIMABLE
    except (DomainError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
