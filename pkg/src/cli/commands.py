"""Subcommands of the shocktrack command line"""

import argparse
import sys
from dataclasses import asdict, replace
from pathlib import Path
from typing import Any

import numpy as np

from ..bj_system.certificate import certify_domain
from ..bj_system.flux import SystemParams
from ..core.errors import InputError
from ..core.types import State
from ..pattern_analysis.report import (
    DEFAULT_K_CAP,
    DEFAULT_MIN_GENERATIONS,
    diagram_rows,
    verify_pattern,
)
from ..riemann.solver import (
    chain_error,
    solve_riemann,
    wave_speeds_ordered,
)
from ..scalar_law.checks import check_adl_lower, check_oleinik, shock_census
from ..scalar_law.flux import ConvexFlux
from ..scalar_law.lax_oleinik import lax_oleinik_solve
from ..scalar_law.probe import schaeffer_probe
from ..scalar_law.profile import ScalarProfile
from ..scenario.perturbation import DatumSpec, build_datum
from ..utils.io_helpers import load_json_file, save_json_file, write_csv
from ..utils.logger import get_debug_logger
from .batch import run_batch
from .run_config import RunConfig
from .run_files import (
    DIAGRAM_FIELDS,
    DIAGRAM_FILE,
    REPORT_FILE,
    ensure_writable,
    load_run,
    write_scenario,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_TRUNCATED = 3

SCALAR_ACTIONS = ("solve", "check-oleinik", "check-adl", "census", "probe")
SCALAR_FIELDS = ("t", "x", "u", "y_min")
DEFAULT_SCALAR_POINTS = 401


def parse_xs(text: str) -> np.ndarray:
    """Positions a, a+h, ..., b from "a:b:h", both ends included

    Raises:
        InputError: If the text is malformed or the range is empty
    """
    try:
        lo, hi, step = (float(part) for part in text.split(":"))
    except ValueError as e:
        raise InputError(f"Expected positions as a:b:h, got '{text}'") from e
    if not step > 0.0 or not hi > lo:
        raise InputError(f"Empty position range '{text}'")
    n = int(round((hi - lo) / step)) + 1
    return lo + step * np.arange(n)


def parse_state(text: str) -> State:
    try:
        values = [float(part) for part in text.split(",")]
    except ValueError as e:
        raise InputError(f"Expected a state u,v,w, got '{text}'") from e
    if len(values) != 3:
        raise InputError(f"Expected a state u,v,w, got '{text}'")
    return State.from_array(values)


def parse_floats(text: str | None) -> list[float]:
    if not text:
        return []
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as e:
        raise InputError(f"Expected comma separated numbers, got '{text}'") from e


def _emit(data: dict[str, Any], out: str | None) -> None:
    """JSON result to a file, or to stdout without --out"""
    save_json_file(data, out if out else sys.stdout)


def _scalar_flux(args: argparse.Namespace) -> ConvexFlux:
    if args.burgers:
        return ConvexFlux.burgers()
    return ConvexFlux.polynomial(args.flux_a, args.flux_b)


def cmd_scalar(args: argparse.Namespace) -> int:
    """Scalar-law solve, checks, census and the Schaeffer check

    Checks and the Schaeffer check exit 1 when they fail.
    """
    profile = ScalarProfile.from_dict(load_json_file(args.datum))
    flux = _scalar_flux(args)
    if args.xs:
        xs = parse_xs(args.xs)
    else:
        xs = np.linspace(profile.x_lo, profile.x_hi, DEFAULT_SCALAR_POINTS)

    if args.action == "probe":
        times = parse_floats(args.times) or [args.t]
        report = schaeffer_probe(
            profile, flux, times, args.trials, args.amplitude, args.seed, xs
        )
        _emit(report.to_dict(), args.out)
        return EXIT_PASS if report.stable else EXIT_FAIL

    sample = lax_oleinik_solve(flux, profile, args.t, xs)
    if args.action == "solve":
        write_csv(sample.rows(), args.out if args.out else sys.stdout, SCALAR_FIELDS)
        return EXIT_PASS
    if args.action == "check-oleinik":
        oleinik = check_oleinik(sample, flux)
        _emit(oleinik.to_dict(), args.out)
        return EXIT_PASS if oleinik.passed else EXIT_FAIL
    if args.action == "check-adl":
        if args.a is None or args.b is None:
            raise InputError("check-adl needs --a and --b")
        adl = check_adl_lower(sample, flux, args.a, args.b)
        _emit(adl.to_dict(), args.out)
        return EXIT_PASS if adl.passed else EXIT_FAIL
    entries = shock_census(sample, args.jump_threshold)
    _emit(
        {"t": args.t, "count": len(entries), "shocks": [asdict(e) for e in entries]},
        args.out,
    )
    return EXIT_PASS


def cmd_scenario_gen(args: argparse.Namespace) -> int:
    """datum.csv and scenario.json for a datum description"""
    data = load_json_file(args.spec) if args.spec else {}
    for name in ("kind", "eps", "seed"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    built = build_datum(DatumSpec.from_dict(data))
    directory = ensure_writable(Path(args.out))
    path = write_scenario(built, directory)
    get_debug_logger().info(
        f"Datum {built.spec.kind} at eps={built.params.eps} with "
        f"{len(built.datum.breakpoints)} breakpoints written to {path.parent}"
    )
    return EXIT_PASS


def cmd_riemann(args: argparse.Namespace) -> int:
    p = SystemParams(args.eta)
    if args.action == "certify":
        report = certify_domain(p, args.resolution)
        _emit(report.to_dict(), args.out)
        return EXIT_PASS if report.passed else EXIT_FAIL

    if args.left is None or args.right is None:
        raise InputError("riemann solve needs --left and --right")
    UL, UR = parse_state(args.left), parse_state(args.right)
    solution = solve_riemann(UL, UR, p)
    _emit(
        {
            **solution.to_dict(),
            "chain_error": chain_error(solution, p),
            "speeds_ordered": wave_speeds_ordered(solution),
        },
        args.out,
    )
    return EXIT_PASS


def cmd_simulate(config: RunConfig) -> int:
    """Evolve every seed; exit 3 when any run was truncated"""
    results = run_batch(config)
    return EXIT_TRUNCATED if any(r.truncated for r in results) else EXIT_PASS


def cmd_analyze(
    run_dir: str | Path,
    min_generations: int = DEFAULT_MIN_GENERATIONS,
    K_cap: float = DEFAULT_K_CAP,
) -> int:
    """report.json and diagram.csv for a run directory

    Exit 0 on a passing verdict, 3 for a truncated run, 1 otherwise.
    """
    directory = Path(run_dir)
    loaded = load_run(directory)
    report = verify_pattern(loaded.solution, loaded.params, min_generations, K_cap)
    save_json_file(report.to_dict(), directory / REPORT_FILE)
    write_csv(
        diagram_rows(loaded.solution, report.big_shocks),
        directory / DIAGRAM_FILE,
        DIAGRAM_FIELDS,
    )
    if report.verdict.status == "incomplete":
        return EXIT_TRUNCATED
    return EXIT_PASS if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shocktrack",
        description="Wave-front tracking for the infinite shock pattern",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    scalar = commands.add_parser("scalar", help="Convex scalar laws")
    scalar.add_argument("action", choices=SCALAR_ACTIONS)
    scalar.add_argument("--datum", required=True, help="Scalar datum JSON file")
    scalar.add_argument("--t", type=float, default=1.0)
    scalar.add_argument(
        "--xs", help="Sample positions a:b:h (write --xs=-2:2:0.01 for negative a)"
    )
    scalar.add_argument("--burgers", action="store_true", help="f(u) = u²/2")
    scalar.add_argument("--flux-a", type=float, default=0.5)
    scalar.add_argument("--flux-b", type=float, default=0.0)
    scalar.add_argument("--a", type=float)
    scalar.add_argument("--b", type=float)
    scalar.add_argument("--jump-threshold", type=float, default=0.0)
    scalar.add_argument("--trials", type=int, default=8)
    scalar.add_argument("--seed", type=int, default=0)
    scalar.add_argument("--amplitude", type=float, default=0.05)
    scalar.add_argument("--times", help="Comma separated sample times (default --t)")
    scalar.add_argument("--out")

    scenario = commands.add_parser("scenario", help="Initial data of the pattern")
    scenario.add_argument("action", choices=("gen",))
    scenario.add_argument("--spec", help="Datum description JSON file")
    scenario.add_argument("--kind")
    scenario.add_argument("--eps", type=float)
    scenario.add_argument("--seed", type=int)
    scenario.add_argument("--out", required=True, help="Output directory")

    riemann = commands.add_parser("riemann", help="Riemann problems of the 3x3 system")
    riemann.add_argument("action", choices=("solve", "certify"))
    riemann.add_argument("--eta", type=float, default=0.09)
    riemann.add_argument("--left", help="Left state u,v,w")
    riemann.add_argument("--right", help="Right state u,v,w")
    riemann.add_argument("--resolution", type=int, default=16)
    riemann.add_argument("--out")

    simulate = commands.add_parser("simulate", help="Front-tracking runs")
    simulate.add_argument("--config", required=True, help="Run configuration JSON file")
    simulate.add_argument("--output-dir")
    simulate.add_argument("--seeds", help="Comma separated seeds")

    analyze = commands.add_parser("analyze", help="Pattern verdict of a run")
    analyze.add_argument("run_dir")
    analyze.add_argument("--min-generations", type=int, default=DEFAULT_MIN_GENERATIONS)
    analyze.add_argument("--K-cap", dest="K_cap", type=float, default=DEFAULT_K_CAP)
    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse the command line and run one subcommand"""
    args = build_parser().parse_args(argv)
    if args.command == "scalar":
        return cmd_scalar(args)
    if args.command == "scenario":
        return cmd_scenario_gen(args)
    if args.command == "riemann":
        return cmd_riemann(args)
    if args.command == "simulate":
        config = RunConfig.load(args.config)
        if args.output_dir:
            config = replace(config, output_dir=Path(args.output_dir))
        if args.seeds:
            config = replace(config, seeds=tuple(int(s) for s in parse_floats(args.seeds)))
        return cmd_simulate(config)
    return cmd_analyze(args.run_dir, args.min_generations, args.K_cap)
