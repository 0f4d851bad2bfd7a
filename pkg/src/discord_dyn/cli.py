"""Command-line entry point: ``discord-dyn {trajectory,sweep,verify}``."""

import argparse
import json
import sys
from pathlib import Path

from . import _kernels
from .correlations import OptimizerConfig
from .dynamics import (
    DEATH_TOL, DEFAULT_SWEEP, FLAT_TOL, TrajectoryConfig, classify_discord, dump_json,
    make_grid, run_trajectory, sweep_csv, sweep_json, sweep_p,
)
from .errors import NoConvergence, OracleMismatch
from .states import P_MAX, P_MIN
from .verify import format_table, run_all

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

GRID_HELP = ("time grid in Gamma t as start:stop:step; stop is included when step divides "
             "the span; start must be 0 (default 0:10:0.05)")


class UsageError(Exception):
    pass


def parse_grid(text: str) -> tuple[float, ...]:
    try:
        start, stop, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"grid must look like start:stop:step, got {text!r}")
    if start != 0.0:
        raise UsageError("grid must start at 0 for phenomenon classification")
    try:
        return make_grid(start, stop, step)
    except ValueError as e:
        raise UsageError(str(e))


def check_p(p: float) -> float:
    if not (P_MIN <= p <= P_MAX):
        raise UsageError(f"p={p:g} is outside the family range p in [0, 0.5]")
    return p


def parse_p_list(text: str) -> list[float]:
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise UsageError("empty p list")
    try:
        return [check_p(float(t)) for t in items]
    except ValueError:
        raise UsageError(f"could not parse p list {text!r}")


def _optimizer(args) -> OptimizerConfig:
    try:
        return OptimizerConfig(coarse_grid_theta=args.grid_theta, coarse_grid_phi=args.grid_phi)
    except ValueError as e:
        raise UsageError(str(e))


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def cmd_trajectory(args) -> int:
    p = check_p(args.p)
    cfg = TrajectoryConfig(p, parse_grid(args.grid), _optimizer(args))
    tr = run_trajectory(cfg)
    summary = classify_discord(tr, args.flat_tol, args.death_tol)
    if args.format == "csv":
        body = tr.to_csv()
    else:
        body = json.dumps(tr.to_json(), indent=2) + "\n"
    _emit(body, args.out)
    if args.out is not None:
        dump_json(summary.to_json(), args.out.with_suffix(".summary.json"))
    else:
        print(json.dumps(summary.to_json()), file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    ps = parse_p_list(args.p_list) if args.p_list is not None else list(DEFAULT_SWEEP)
    results = sweep_p(ps, parse_grid(args.grid), _optimizer(args), args.flat_tol, args.death_tol)
    if args.format == "csv":
        body = sweep_csv(results)
    else:
        body = json.dumps(sweep_json(results), indent=2) + "\n"
    _emit(body, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(corrupt_omega=args.inject_omega_fault)
    print(f"kernel backend: {_kernels.BACKEND}")
    print(format_table(results))
    ok = all(r.passed for r in results)
    print("all checks passed" if ok else "some checks FAILED")
    return EXIT_OK if ok else EXIT_FAILED_CHECK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discord-dyn",
        description="Negativity and quantum discord of qubit-qutrit states under local qutrit dephasing.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--grid", default="0:10:0.05", help=GRID_HELP)
        sp.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--grid-theta", type=int, default=61, help="coarse theta grid points (default 61)")
        sp.add_argument("--grid-phi", type=int, default=121, help="coarse phi grid points (default 121)")
        sp.add_argument("--flat-tol", type=float, default=FLAT_TOL, help="discord flatness tolerance in bits")
        sp.add_argument("--death-tol", type=float, default=DEATH_TOL, help="negativity treated as zero")

    tr = sub.add_parser("trajectory", help="correlations along a Gamma t grid for one family state")
    tr.add_argument("--p", type=float, required=True, help="family parameter, p in [0, 0.5]")
    common(tr)
    tr.set_defaults(func=cmd_trajectory)

    sw = sub.add_parser("sweep", help="phenomenon summary for several p values")
    sw.add_argument("--p-list", default=None, help="comma-separated p values (default 0,0.05,...,0.5)")
    common(sw)
    sw.set_defaults(func=cmd_sweep)

    vf = sub.add_parser("verify", help="run the built-in invariant checks")
    vf.add_argument("--inject-omega-fault", action="store_true",
                    help="double omega in the Kraus set to exercise failure reporting")
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"discord-dyn: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NoConvergence, OracleMismatch) as e:
        print(f"discord-dyn: numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
