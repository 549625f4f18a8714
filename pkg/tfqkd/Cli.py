"""Command-line front end.

Subcommands:

- ``analytic`` -- closed-form fidelity and slice-attack figures at one point
- ``simulate`` -- a seeded session next to its exact expectation, with a PASS/FAIL flag
- ``sweep`` -- either of the above over a uniform grid of one parameter
- ``validate`` -- configuration file findings

Tables go to standard output (or ``--out``) as CSV or JSON; diagnostics go
to standard error. Exit status: 0 success, 1 validation errors, 2 usage or
input errors, 3 numerical failure.
"""
import argparse
import logging
import math
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

from . import Analytic
from .ConfigFile import load_physical_config
from .Errors import AccuracyError, ConfigFileError, DomainError
from .Eve import EveStrategy, TimeSliceAttack
from .Oracle import oracle_expectations
from .Protocol import SessionConfig, run_session
from .PulseModel import DimensionlessParams, Severity, to_dimensionless, validate
from .Report import Cell, OutputRow, render_csv, render_json
from .Stats import COUNT_FIELDS, ESTIMATE_FIELDS, SessionStats, agreement

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_HANDLER_NAME = "tfqkd-cli"
_FINDINGS_HEADER = ("severity", "code", "message")


class UsageError(Exception):
    """A flag combination argparse cannot reject on its own."""


class InvalidConfigError(Exception):
    """A configuration file that parses but has ERROR findings."""


@dataclass(frozen=True)
class Point:
    """One parameter point as given on the command line.

    Unlike :class:`~tfqkd.PulseModel.DimensionlessParams` it admits ``x = 0``
    and ``y = 0``, which the closed forms accept. ``from_config`` marks points
    derived from a validated file, whose width findings are already reported.
    """

    x: float
    y: float
    z: float
    n: int
    from_config: bool = False

    def params(self) -> DimensionlessParams:
        return DimensionlessParams(self.x, self.y, self.z, self.n)


# -- rows ---------------------------------------------------------------------


def analytic_row(pt: Point) -> OutputRow:
    """Closed forms at *pt*, exact and thin-slice side by side."""
    exact = Analytic.eve_analytics(pt.x, pt.y, pt.z)
    approx = Analytic.small_y_approx(pt.x, pt.y, pt.z)
    cells: list[tuple[str, Cell]] = [
        ("x", pt.x),
        ("y", pt.y),
        ("z", pt.z),
        ("n", pt.n),
        ("fidelity", Analytic.fidelity(pt.x)),
        ("mean_qundit_fidelity", Analytic.mean_qundit_fidelity(pt.x, pt.n)),
    ]
    for suffix, a in (("", exact), ("_small_y", approx)):
        cells += [
            (f"p1{suffix}", a.p1),
            (f"p2{suffix}", a.p2),
            (f"p3{suffix}", a.p3),
            (f"P{suffix}", a.key_fraction_P),
            (f"E{suffix}", a.added_error_E),
            (f"P/E{suffix}", a.ratio_info_per_disturbance),
            (f"E/P{suffix}", a.ratio_error_per_info),
        ]
    return OutputRow(tuple(cells))


def stats_row(kind: str, config: SessionConfig, stats: SessionStats, verdict: str) -> OutputRow:
    """One session's statistics; *kind* is ``simulate`` or ``oracle``."""
    p = config.params
    cells: list[tuple[str, Cell]] = [
        ("row", kind),
        ("eve", config.eve.label),
        ("x", p.x),
        ("y", p.y),
        ("z", p.z),
        ("n", p.n_symbols),
        ("trials", config.trials),
        ("seed", config.seed),
    ]
    cells += [(name, getattr(stats, name)) for name in COUNT_FIELDS]
    for name in ESTIMATE_FIELDS:
        e = getattr(stats, name)
        cells += [(name, e.value), (f"{name}_lo", e.lo), (f"{name}_hi", e.hi)]
    cells += [
        ("info_per_disturbance", stats.info_per_disturbance),
        ("disturbance_per_info", stats.disturbance_per_info),
        ("agreement", verdict),
    ]
    return OutputRow(tuple(cells))


def simulate_rows(config: SessionConfig) -> list[OutputRow]:
    """Run *config*, compare it with its expectation, and return both rows."""
    sampled = run_session(config)
    expected = oracle_expectations(config)
    failures = agreement(sampled, expected)
    if failures:
        logger.warning("outside 4 sigma of the expectation: %s", ", ".join(failures))
    verdict = "FAIL" if failures else "PASS"
    return [
        stats_row("simulate", config, sampled, verdict),
        stats_row("oracle", config, expected, verdict),
    ]


# -- argument handling ----------------------------------------------------------


def _base_point(args: argparse.Namespace) -> Point:
    if args.config is None:
        if args.slice_halfwidth is not None:
            raise UsageError("--slice-halfwidth needs --config")
        return Point(args.x, args.y, args.z, args.n)
    if args.slice_halfwidth is None:
        raise UsageError("--config needs --slice-halfwidth")
    cfg = load_physical_config(args.config)
    findings = validate(cfg)
    errors = [f for f in findings if f.severity is Severity.ERROR]
    for finding in findings:
        level = logging.ERROR if finding.severity is Severity.ERROR else logging.WARNING
        logger.log(level, "%s: %s", args.config, finding)
    if errors:
        raise InvalidConfigError(f"{args.config}: {len(errors)} errors, refusing to convert")
    p = to_dimensionless(cfg, args.slice_halfwidth)
    return Point(p.x, p.y, p.z, p.n_symbols, from_config=True)


def _warn_geometry(pt: Point, slices: bool) -> None:
    if slices and Analytic.slices_overlap(pt.x, pt.y):
        logger.warning("slices overlap: y=%g > x=%g, adjacent windows intersect", pt.y, pt.x)
    if pt.from_config:
        return
    if Analytic.separation_exceeds_width(pt.x, pt.z):
        logger.warning(
            "bin separation 2*sqrt2*x=%g exceeds the wrong-basis width z=%g",
            2.0 * math.sqrt(2.0) * pt.x,
            pt.z,
        )
    if Analytic.span_exceeds_width(pt.x, pt.z, pt.n):
        logger.warning("bin span of %d bins exceeds the wrong-basis width z=%g", pt.n, pt.z)


def _session(pt: Point, args: argparse.Namespace) -> SessionConfig:
    eve = EveStrategy.from_label(args.eve, pt.y)
    return SessionConfig(pt.params(), args.trials, args.seed, eve, args.shards)


def _grid(args: argparse.Namespace) -> list[float]:
    if not args.start < args.stop:
        raise UsageError(f"sweep: --from ({args.start:g}) must be below --to ({args.stop:g})")
    if args.steps < 2:
        raise UsageError(f"sweep: --steps must be >= 2, got {args.steps}")
    last = args.steps - 1
    return [args.start * (1.0 - i / last) + args.stop * (i / last) for i in range(args.steps)]


def _sweep_point(base: Point, param: str, value: float, hold_span: bool) -> Point:
    if param == "n":
        n = round(value)
        if abs(value - n) > 1e-9:
            raise UsageError(f"sweep: --param n needs integer grid points, got {value:g}")
        pt = replace(base, n=n)
    else:
        pt = replace(base, **{param: value})
    if hold_span:
        pt = replace(pt, z=pt.z * (pt.n - 1))
    return pt


def _emit(args: argparse.Namespace, rows: list[OutputRow], header: Optional[tuple] = None) -> None:
    text = render_json(rows) if args.format == "json" else render_csv(rows, header)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")


# -- subcommands ----------------------------------------------------------------


def cmd_analytic(args: argparse.Namespace) -> int:
    pt = _base_point(args)
    _warn_geometry(pt, slices=True)
    _emit(args, [analytic_row(pt)])
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    pt = _base_point(args)
    config = _session(pt, args)
    _warn_geometry(pt, slices=isinstance(config.eve, TimeSliceAttack))
    _emit(args, simulate_rows(config))
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    base = _base_point(args)
    points = [_sweep_point(base, args.param, v, args.hold_span) for v in _grid(args)]
    rows: list[OutputRow] = []
    for pt in points:
        logger.debug("sweep point %s", pt)
        if args.mode == "analytic":
            rows.append(analytic_row(pt))
        else:
            rows.extend(simulate_rows(_session(pt, args)))
    _emit(args, rows)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    findings = validate(load_physical_config(args.path))
    rows = [
        OutputRow.of(severity=f.severity.value, code=f.code, message=f.message) for f in findings
    ]
    _emit(args, rows, _FINDINGS_HEADER)
    errors = sum(1 for f in findings if f.severity is Severity.ERROR)
    print(f"{errors} errors, {len(findings) - errors} warnings", file=sys.stderr)
    return EXIT_INVALID if errors else EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="write the table here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--x", type=float, default=1.65, help="bin separation / (2*sqrt2*sigma_t)")
    point.add_argument("--y", type=float, default=0.05, help="slice half-width / (sqrt2*sigma_t)")
    point.add_argument("--z", type=float, default=2.5, help="wrong-basis width / sigma_t")
    point.add_argument("--n", type=int, default=2, help="bins per basis")
    point.add_argument("--config", default=None, help="physical configuration file")
    point.add_argument(
        "--slice-halfwidth", type=float, default=None, help="Eve's gate half-width (s)"
    )

    session = argparse.ArgumentParser(add_help=False)
    session.add_argument("--eve", choices=("none", "full", "slice"), default="none")
    session.add_argument("--trials", type=int, default=1_000_000)
    session.add_argument("--seed", type=int, default=0)
    session.add_argument("--shards", type=int, default=1)

    parser = argparse.ArgumentParser(
        prog="tfqkd", description="Time-frequency BB84: closed forms and seeded simulation."
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("analytic", parents=[common, point], help="closed-form figures")
    p.set_defaults(handler=cmd_analytic)

    p = sub.add_parser("simulate", parents=[common, point, session], help="seeded session")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("sweep", parents=[common, point, session], help="one-parameter grid")
    p.add_argument("--param", choices=("x", "y", "z", "n"), required=True)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--mode", choices=("analytic", "simulate"), default="analytic")
    p.add_argument(
        "--hold-span", action="store_true", help="scale z by (n-1) at every grid point"
    )
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("validate", parents=[common], help="check a configuration file")
    p.add_argument("path")
    p.set_defaults(handler=cmd_validate)
    return parser


def _configure_logging(verbose: bool) -> None:
    root = logging.getLogger("tfqkd")
    for handler in list(root.handlers):
        if handler.get_name() == _HANDLER_NAME:
            root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line *argv* (default ``sys.argv[1:]``) and return the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except ConfigFileError as exc:
        for diagnostic in exc.diagnostics:
            logger.error("%s", diagnostic)
        return EXIT_USAGE
    except InvalidConfigError as exc:
        logger.error("%s", exc)
        return EXIT_INVALID
    except (UsageError, DomainError) as exc:
        parser.print_usage(sys.stderr)
        logger.error("%s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except AccuracyError as exc:
        logger.error("%s (estimate %g, error bound %g)", exc, exc.estimate, exc.error_bound)
        return EXIT_NUMERIC
