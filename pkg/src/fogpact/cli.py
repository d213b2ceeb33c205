"""Command-line front end.

Subcommands ``solve``, ``compare``, ``sweep`` and ``simulate`` read a TOML
config (see :mod:`fogpact.config`). Exit codes: 0 success, 2 bad config or
arguments, 3 solver failure, 4 utility overflow. Errors are printed as a
single ``error: ...`` line on stderr.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from pathlib import Path

from . import contract_solver as cs
from .config import ConfigError, load_config
from .contract_solver import Plan, PlanKind, SolveReport
from .errors import BadDimension, FogpactError, UtilityOverflow
from .experiments import EvaluationMode, emit_csv, fmt, rank_plans, run_sweep
from .market_model import expected_fn_utility, fn_certainty_equivalent
from .monte_carlo import SimConfig, estimate_fn_utility

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_OVERFLOW = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _threads() -> int:
    raw = os.environ.get("FOGPACT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _vector(x) -> str:
    return "[" + ", ".join(fmt(v) for v in x) + "]"


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(Path(output), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _plan_from_args(args) -> Plan:
    plan = Plan.parse(args.plan)
    if args.dim is not None:
        if plan.kind is not PlanKind.SINGLE_BONUS:
            raise UsageError("--dim only applies to --plan single-bonus")
        plan = Plan(plan.kind, args.dim)
    return plan


def format_report(report: SolveReport) -> str:
    lines = [f'plan = "{report.plan.kind.value}"']
    if report.plan.kind is PlanKind.SINGLE_BONUS:
        lines.append(f"dim = {report.plan.dim}")
    lines += [
        f"t = {fmt(report.contract.t)}",
        f"s = {_vector(report.contract.s)}",
        f"a = {_vector(report.effort)}",
        f"no_utility = {fmt(report.no_utility)}",
        f"fn_ce = {fmt(report.fn_ce)}",
        f"welfare = {fmt(report.welfare)}",
    ]
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    doc = load_config(args.config)
    report = cs.solve(doc.instance, _plan_from_args(args))
    _write(format_report(report), args.output)
    return EXIT_OK


def cmd_compare(args) -> int:
    if args.output is None:
        raise UsageError("compare requires --output")
    doc = load_config(args.config)
    reports = rank_plans(doc.instance, EvaluationMode(args.mode))
    lines = ["plan,no_utility,fn_ce,welfare"]
    lines += [f"{r.plan.kind.value},{fmt(r.no_utility)},{fmt(r.fn_ce)},{fmt(r.welfare)}" for r in reports]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.output is None:
        raise UsageError("sweep requires --output")
    doc = load_config(args.config)
    if doc.sweep is None:
        raise ConfigError(f"{args.config}: no [sweep] section")
    result = run_sweep(doc.sweep, workers=_threads())
    emit_csv(result, args.output, n=doc.instance.n)
    return EXIT_OK


def cmd_simulate(args) -> int:
    doc = load_config(args.config)
    sim_plan = doc.sim.plan if doc.sim else Plan(PlanKind.GENERAL)
    base = doc.sim.config if doc.sim else SimConfig(100_000)
    if args.plan is not None or args.dim is not None:
        if args.plan is None:
            args.plan = sim_plan.kind.value
        sim_plan = _plan_from_args(args)
    try:
        config = SimConfig(
            samples=base.samples if args.samples is None else args.samples,
            seed=base.seed if args.seed is None else args.seed,
            antithetic=base.antithetic,
            workers=_threads(),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    inst = doc.instance
    report = cs.solve(inst, sim_plan)
    result = estimate_fn_utility(inst, report.contract, report.effort, config)
    analytic = expected_fn_utility(inst, report.contract, report.effort)
    ce = fn_certainty_equivalent(inst, report.contract, report.effort)
    diff = result.mean_fn_utility - analytic
    if result.stderr_fn_utility > 0:
        z = diff / result.stderr_fn_utility
    elif abs(diff) <= 1e-12 * abs(analytic):
        z = 0.0  # noise-free: the estimate is exact up to rounding
    else:
        z = math.copysign(math.inf, diff)
    empirical_ce = -math.log(-result.mean_fn_utility) / inst.eta
    analytic_payment = report.contract.t + float(report.contract.s @ report.effort)
    lines = [
        f'plan = "{report.plan.kind.value}"',
        f"samples_used = {result.samples_used}",
        f"seed = {config.seed}",
        f"mean_fn_utility = {fmt(result.mean_fn_utility)}",
        f"stderr_fn_utility = {fmt(result.stderr_fn_utility)}",
        f"analytic_fn_utility = {fmt(analytic)}",
        f"empirical_ce = {fmt(empirical_ce)}",
        f"analytic_ce = {fmt(ce)}",
        f"z_score = {fmt(z)}",
        f"mean_payment = {fmt(result.mean_payment)}",
        f"stderr_payment = {fmt(result.stderr_payment)}",
        f"analytic_payment = {fmt(analytic_payment)}",
        f"mean_qos = {_vector(result.mean_qos)}",
    ]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fogpact", description="Optimal linear payment plans for fog nodes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    plan_choices = [k.value for k in PlanKind]

    p = sub.add_parser("solve", help="solve one payment plan")
    p.add_argument("config")
    p.add_argument("--plan", default="general", choices=plan_choices)
    p.add_argument("--dim", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("compare", help="rank all six plans")
    p.add_argument("config")
    p.add_argument("--mode", default="own", choices=[m.value for m in EvaluationMode])
    p.add_argument("--output")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("sweep", help="run the [sweep] section and write CSV")
    p.add_argument("config")
    p.add_argument("--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo check of the certainty equivalent")
    p.add_argument("config")
    p.add_argument("--plan", choices=plan_choices)
    p.add_argument("--dim", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_simulate)
    return parser


def _fail(code: int, message: str) -> int:
    print(f"error: {' '.join(str(message).split())}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ConfigError, BadDimension) as exc:
        return _fail(EXIT_CONFIG, exc)
    except UtilityOverflow as exc:
        return _fail(EXIT_OVERFLOW, exc)
    except FogpactError as exc:
        return _fail(EXIT_SOLVER, exc)
    except OSError as exc:
        return _fail(EXIT_CONFIG, f"{exc.filename}: {exc.strerror}")


if __name__ == "__main__":
    sys.exit(main())
