"""Command line front end.

Exit codes: 0 success, 2 bad input (argparse errors and domain validation),
3 a checked mathematical property failed, 4 the iteration did not converge
or the outer search missed its bracket.

Any subcommand accepts --config PATH, a file of key=value lines (one per
line, # comments allowed).  Keys name long options with - or _ freely.
The file's flags are inserted before the flags typed on the command line,
so explicit flags win.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import analytic, candidates, svgplot
from . import curve as curves
from . import solver
from .errors import BracketMissError, DomainError

__all__ = ["build_parser", "main"]

# matches the acceptance slack for exact-arithmetic rounding in the sweep
_GAP_FLOOR = 1e-12
_SWEEP_CHUNK = 250_000


def _merge_config(argv: list[str]) -> list[str]:
    argv = list(argv)
    while "--config" in argv:
        at = argv.index("--config")
        if at + 1 >= len(argv):
            raise DomainError("--config needs a file path")
        path = argv[at + 1]
        del argv[at : at + 2]
        try:
            with open(path, encoding="ascii") as handle:
                text = handle.read()
        except OSError as exc:
            raise DomainError(f"cannot read config file {path!r}: {exc}") from None
        flags: list[str] = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise DomainError(f"config line {raw!r} is not key=value")
            flags.append("--" + key.strip().replace("_", "-"))
            flags.append(value.strip())
        # keep the subcommand token first so argparse still routes correctly
        keep = 1 if argv and not argv[0].startswith("-") else 0
        argv = argv[:keep] + flags + argv[keep:]
    return argv


def _add_solver_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--segments", type=int, default=None, help="grid segment count")
    sub.add_argument("--gradient-tolerance", type=float, default=None)
    sub.add_argument("--area-tolerance", type=float, default=None)
    sub.add_argument("--max-inner-iterations", type=int, default=None)
    sub.add_argument("--penalty", type=float, default=None, help="initial area penalty weight")
    sub.add_argument("--outer-tolerance", type=float, default=None, help="half-width bracket width at stop")
    sub.add_argument(
        "--outer-bracket", type=float, nargs=2, default=None, metavar=("LO", "HI"),
        help="explicit half-width search bracket",
    )


def _solver_config(args) -> solver.SolverConfig:
    overrides = {
        "segments": args.segments,
        "gradient_tolerance": args.gradient_tolerance,
        "area_tolerance": args.area_tolerance,
        "max_inner_iterations": args.max_inner_iterations,
        "penalty": args.penalty,
        "outer_tolerance": args.outer_tolerance,
        "outer_bracket": tuple(args.outer_bracket) if args.outer_bracket else None,
    }
    return solver.SolverConfig(**{k: v for k, v in overrides.items() if v is not None})


def _cmd_analytic(args) -> int:
    solution = analytic.closed_form_solution(args.beta, args.area)
    pairs = [
        ("beta", solution.beta),
        ("area", solution.area),
        ("radius", solution.radius),
        ("half_width", solution.half_width),
        ("curvature", solution.curvature),
        ("center_depth", solution.center_depth),
        ("apex_height", solution.apex_height),
        ("energy", analytic.minimal_energy(solution.beta, solution.area)),
        ("contact_angle_deg", math.degrees(analytic.contact_angle(solution.beta))),
    ]
    for key, value in pairs:
        print(f"{key}={value:.17g}")
    return 0


def _cmd_solve(args) -> int:
    config = _solver_config(args)
    if args.half_width is not None:
        report = solver.minimize_fixed_width(args.beta, args.half_width, args.area, config)
    else:
        report = solver.minimize_free_width(args.beta, args.area, config)
    for line in solver.report_lines(report):
        print(line)
    if report.converged:
        angle = math.degrees(solver.measured_contact_angle(report))
        print(f"contact_angle_deg={angle:.17g}")
    if args.curve_out:
        curves.write_curve_csv(report.curve, args.curve_out)
    if args.report_out:
        solver.write_report(report, args.report_out)
    if args.svg_out:
        svgplot.write_overlay(report.curve, args.beta, args.svg_out)
    if not report.converged:
        print("error: iteration budget exhausted before tolerance", file=sys.stderr)
        return 4
    return 0


def _cmd_verify(args) -> int:
    checked = 0
    violations = 0
    min_gap = math.inf
    remaining = args.count
    chunk_index = 0
    while remaining > 0:
        take = min(remaining, _SWEEP_CHUNK)
        half_widths, heights = curves.random_admissible_batch(
            [args.seed, chunk_index], take,
            p_range=(args.p_min, args.p_max),
            segments=args.segments, amplitude=args.amplitude,
        )
        lengths, _ = curves.batch_length_area(half_widths, heights)
        gaps = curves.batch_isoperimetric_gap(args.beta, half_widths, heights)
        violations += int(np.sum(gaps < -_GAP_FLOOR * (1.0 + lengths)))
        min_gap = min(min_gap, float(np.min(gaps)))
        checked += take
        remaining -= take
        chunk_index += 1
    print(f"checked={checked}")
    print(f"min_gap={min_gap:.17g}")
    print(f"violations={violations}")
    if violations:
        print("error: sharp length inequality violated", file=sys.stderr)
        return 3
    return 0


def _cmd_gradcheck(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for index in range(args.count):
        curve = curves.random_admissible([args.seed, index], segments=args.segments)
        multiplier = float(rng.uniform(-1.0, 1.0))
        penalty = float(rng.uniform(0.0, 10.0))
        target = float(rng.uniform(0.1, 2.0))
        exact = solver.discrete_gradient(curve, args.beta, multiplier, penalty, target)
        probed = solver.finite_difference_gradient(curve, args.beta, multiplier, penalty, target)
        scale = max(1.0, float(np.max(np.abs(exact))))
        worst = max(worst, float(np.max(np.abs(probed - exact))) / scale)
    print(f"checked={args.count}")
    print(f"max_relative_error={worst:.17g}")
    if worst > args.tolerance:
        print("error: analytic gradient disagrees with finite differences", file=sys.stderr)
        return 3
    return 0


def _cmd_compare(args) -> int:
    ranked = candidates.rank_candidates(args.total_area)
    for line in candidates.candidates_csv_lines(ranked):
        print(line)
    if args.out:
        candidates.write_candidates_csv(ranked, args.out)
    return 0


def _cmd_export(args) -> int:
    curve = curves.sample_closed_form(args.beta, args.area, args.segments)
    summary = curves.metrics(curve, args.beta)
    curves.write_curve_csv(curve, args.curve_out)
    if args.svg_out:
        svgplot.write_overlay(curve, args.beta, args.svg_out)
    print(f"half_width={curve.half_width:.17g}")
    print(f"length={summary.length:.17g}")
    print(f"area={summary.area:.17g}")
    print(f"energy={summary.energy:.17g}")
    print(f"gap={summary.gap:.17g}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sessile",
        description="Sessile drop on a line: closed forms, discrete solver, checks.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("analytic", help="print the closed-form minimizer")
    sub.add_argument("--beta", type=float, required=True, help="adhesion strength in [0, 1)")
    sub.add_argument("--area", type=float, required=True)
    sub.set_defaults(handler=_cmd_analytic)

    sub = commands.add_parser("solve", help="run the discrete constrained minimizer")
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--area", type=float, required=True)
    sub.add_argument("--half-width", type=float, default=None,
                     help="fix the support half-width (default: optimize it)")
    _add_solver_options(sub)
    sub.add_argument("--curve-out", default=None, help="write the profile as CSV")
    sub.add_argument("--report-out", default=None, help="write the report as key=value lines")
    sub.add_argument("--svg-out", default=None, help="write an SVG overlay against the exact arc")
    sub.set_defaults(handler=_cmd_solve)

    sub = commands.add_parser("verify-inequality",
                              help="sweep random profiles against the sharp length bound")
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--count", type=int, default=1000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--segments", type=int, default=16)
    sub.add_argument("--amplitude", type=float, default=1.0)
    sub.add_argument("--p-min", type=float, default=0.2)
    sub.add_argument("--p-max", type=float, default=3.0)
    sub.set_defaults(handler=_cmd_verify)

    sub = commands.add_parser("gradcheck",
                              help="compare the analytic gradient with finite differences")
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--count", type=int, default=20)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--segments", type=int, default=16)
    sub.add_argument("--tolerance", type=float, default=1e-6)
    sub.set_defaults(handler=_cmd_gradcheck)

    sub = commands.add_parser("compare", help="rank two-bubble cluster candidates by energy")
    sub.add_argument("--total-area", type=float, required=True)
    sub.add_argument("--out", default=None, help="write the ranking as CSV")
    sub.set_defaults(handler=_cmd_compare)

    sub = commands.add_parser("export", help="sample the closed form and write artifacts")
    sub.add_argument("--beta", type=float, required=True)
    sub.add_argument("--area", type=float, required=True)
    sub.add_argument("--segments", type=int, default=256)
    sub.add_argument("--curve-out", required=True)
    sub.add_argument("--svg-out", default=None)
    sub.set_defaults(handler=_cmd_export)

    return parser


def main(argv=None) -> int:
    raw = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        merged = _merge_config(raw)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    args = parser.parse_args(merged)
    try:
        return args.handler(args)
    except BracketMissError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
