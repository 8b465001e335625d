"""Command-line interface: analyze, optimize, sweep, and simulate.

Exit codes: 0 on success, 2 on configuration or usage errors, 3 when an
optimization finds no feasible configuration. With ``--out`` the report is
written to that path and, for analyze/optimize/sweep, a rendered figure is
saved next to it (suppress with ``--no-plot``).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import report
from .chain import ChainError, ChainEvaluator
from .config import ConfigError, load_config
from .mugf import DistributionError
from .optimizer import OptimizerError, optimize
from .sensitivity import (
    PARAMETERS,
    SensitivityError,
    SweepSpec,
    find_threshold,
    nominal_rate,
    sweep,
)
from .config import RATE_UNITS, to_per_second
from .simulate import SimConfig, SimulationError, simulate_chain
from .vnf import VnfModelError

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3

_USAGE_ERRORS = (
    ConfigError,
    ChainError,
    OptimizerError,
    SensitivityError,
    SimulationError,
    VnfModelError,
    DistributionError,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfcavail",
        description=(
            "Steady-state availability of multi-tenant service function "
            "chains: per-node Markov models composed through sparse "
            "performance-distribution algebra."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, redundancy: bool = True) -> None:
        p.add_argument("config", help="chain configuration JSON file")
        if redundancy:
            p.add_argument(
                "-l",
                "--redundancy",
                help="parallel nodes per subsystem, e.g. 2,3,3,3,3 (default: all ones)",
            )
        p.add_argument(
            "--format",
            choices=("text", "json", "csv"),
            default="text",
            help="output format (default: text)",
        )
        p.add_argument("--out", help="write the report to this path")
        p.add_argument(
            "--plot", help="render the figure to this path (default: next to --out)"
        )
        p.add_argument(
            "--no-plot", action="store_true", help="skip figure rendering"
        )

    p = sub.add_parser("analyze", help="evaluate one redundancy configuration")
    common(p)

    p = sub.add_parser("optimize", help="minimal-cost redundancy search")
    common(p, redundancy=False)
    p.add_argument("--A0", type=float, help="availability target (default: config)")
    p.add_argument(
        "--max-redundancy",
        type=int,
        help="override every subsystem's redundancy bound",
    )

    p = sub.add_parser("sweep", help="availability along one rate parameter")
    common(p)
    p.add_argument("--param", required=True, choices=PARAMETERS)
    p.add_argument(
        "--range",
        dest="range_",
        metavar="LO:HI",
        help="swept values in --unit (default: nominal/10 .. nominal*10 per second)",
    )
    p.add_argument("--points", type=int, default=25, help="sweep points (default 25)")
    p.add_argument(
        "--unit",
        choices=RATE_UNITS,
        default="per_second",
        help="unit of --range figures (default per_second)",
    )
    p.add_argument("--A0", type=float, help="availability target (default: config)")
    p.add_argument(
        "--threshold",
        action="store_true",
        help="also bisect for the rate where availability hits the target",
    )

    p = sub.add_parser("simulate", help="Monte Carlo availability estimate")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--horizon", type=float, default=1e8, help="model seconds")
    p.add_argument(
        "--warmup", type=float, help="discarded model seconds (default: 1%% of horizon)"
    )
    p.add_argument("--replications", type=int, default=5)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def _dispatch(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.command == "analyze":
        return _cmd_analyze(args, cfg)
    if args.command == "optimize":
        return _cmd_optimize(args, cfg)
    if args.command == "sweep":
        return _cmd_sweep(args, cfg)
    if args.command == "simulate":
        return _cmd_simulate(args, cfg)
    raise AssertionError(f"unhandled command {args.command}")


def _parse_redundancy(args, spec) -> tuple[int, ...]:
    raw = getattr(args, "redundancy", None)
    if raw is None:
        return (1,) * spec.size
    try:
        l = tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise ChainError(f"cannot parse redundancy vector {raw!r}") from None
    return spec.check_redundancy(l)


def _figure_path(args) -> Path | None:
    if args.no_plot:
        return None
    if args.plot:
        return Path(args.plot)
    if args.out:
        return Path(args.out).with_suffix(".png")
    return None


def _emit(args, content: str) -> None:
    if args.out:
        Path(args.out).write_text(content)
    else:
        sys.stdout.write(content)


def _cmd_analyze(args, cfg) -> int:
    l = _parse_redundancy(args, cfg.spec)
    result = ChainEvaluator(cfg.spec).evaluate(l)
    if args.format == "json":
        content = report.to_json(report.analyze_dict(cfg.spec, l, result))
    elif args.format == "csv":
        content = report.analyze_csv(cfg.spec, l, result)
    else:
        content = report.analyze_text(cfg.spec, l, result)
    _emit(args, content)
    figure = _figure_path(args)
    if figure:
        report.render_analyze_figure(cfg.spec, result, figure)
    return EXIT_OK


def _cmd_optimize(args, cfg) -> int:
    spec = cfg.spec
    if args.max_redundancy is not None:
        from dataclasses import replace

        spec = type(spec)(
            subsystems=tuple(
                replace(s, max_redundancy=args.max_redundancy)
                for s in spec.subsystems
            ),
            demand=spec.demand,
        )
    a0 = cfg.a0 if args.A0 is None else args.A0
    result = optimize(spec, a0, keep_evaluations=True)
    if args.format == "json":
        content = report.to_json(report.optimize_dict(result))
    elif args.format == "csv":
        content = report.optimize_csv(result)
    else:
        content = report.optimize_text(result)
    _emit(args, content)
    figure = _figure_path(args)
    if figure:
        report.render_optimize_figure(result, figure)
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def _sweep_values(args, nominal: float) -> tuple[float, ...]:
    if args.points < 1:
        raise SensitivityError("--points must be >= 1")
    if args.range_ is None:
        lo, hi = nominal / 10.0, nominal * 10.0
    else:
        try:
            lo_s, hi_s = args.range_.split(":")
            lo_u, hi_u = float(lo_s), float(hi_s)
        except ValueError:
            raise SensitivityError(
                f"cannot parse --range {args.range_!r}; expected LO:HI"
            ) from None
        lo = to_per_second(lo_u, args.unit)
        hi = to_per_second(hi_u, args.unit)
        lo, hi = min(lo, hi), max(lo, hi)
    if args.points == 1:
        return (lo,)
    values = np.geomspace(lo, hi, args.points)
    return tuple(float(v) for v in values)


def _cmd_sweep(args, cfg) -> int:
    l = _parse_redundancy(args, cfg.spec)
    a0 = cfg.a0 if args.A0 is None else args.A0
    nominal = nominal_rate(cfg.spec, args.param)
    values = _sweep_values(args, nominal)
    spec_obj = SweepSpec(
        parameter=args.param, values=values, redundancy=l, target=a0
    )
    points = sweep(cfg.spec, spec_obj)
    threshold = None
    if args.threshold:
        try:
            threshold = find_threshold(cfg.spec, args.param, a0, l)
        except SensitivityError as exc:
            print(f"warning: threshold search failed: {exc}", file=sys.stderr)
    if args.format == "json":
        content = report.to_json(report.sweep_dict(points, threshold))
    elif args.format == "csv":
        content = report.sweep_csv(points)
    else:
        content = report.sweep_text(points, threshold)
    _emit(args, content)
    figure = _figure_path(args)
    if figure:
        report.render_sweep_figure(points, figure, target=a0, nominal_rate=nominal)
    return EXIT_OK


def _cmd_simulate(args, cfg) -> int:
    l = _parse_redundancy(args, cfg.spec)
    sim_config = SimConfig(
        horizon=args.horizon,
        seed=args.seed,
        replications=args.replications,
        warmup=args.warmup,
    )
    estimate = simulate_chain(cfg.spec, l, sim_config)
    if args.format == "json":
        content = report.to_json(report.simulate_dict(estimate, sim_config))
    elif args.format == "csv":
        content = (
            "mean,std_error,replications,horizon,warmup,seed\n"
            f"{estimate.availability_mean!r},{estimate.std_error!r},"
            f"{estimate.replications},{sim_config.horizon!r},"
            f"{sim_config.warmup!r},{sim_config.seed}\n"
        )
    else:
        content = report.simulate_text(estimate, sim_config)
    _emit(args, content)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
