"""Parameter sweeps, plan rankings and their CSV output."""

from __future__ import annotations

import csv
import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from . import contract_solver as cs
from .contract_solver import ALL_PLANS, Plan, PlanKind, SolveReport
from .errors import InvalidInstance, InvalidPerturbation, InvalidSweep
from .market_model import Contract, MarketInstance, fn_best_response

SWEEP_PARAMETERS = ("c_ii", "eta", "sigma_ii", "beta_i")


class EvaluationMode(enum.Enum):
    """Which instance the partially independent plans are scored against.

    ``OWN`` scores each plan on the instance it was solved for. ``TRUE`` keeps
    the bonus vector but lets the fog node best-respond on the true instance,
    with the salary reset so participation binds there.
    """

    OWN = "own"
    TRUE = "true"


_MODIFIED_PLANS = {
    PlanKind.INDEPENDENT,
    PlanKind.STOCHASTIC_INDEPENDENT,
    PlanKind.TECHNOLOGICALLY_INDEPENDENT,
}


def solve_plan(inst: MarketInstance, plan: Plan, mode: EvaluationMode = EvaluationMode.OWN) -> SolveReport:
    report = cs.solve(inst, plan)
    if mode is EvaluationMode.OWN or plan.kind not in _MODIFIED_PLANS:
        return report
    s = report.contract.s
    a = fn_best_response(inst, Contract(0.0, s))
    return cs.make_report(inst, plan, Contract(cs.binding_salary(inst, s, a), s), a)


def rank_plans(inst: MarketInstance, mode: EvaluationMode = EvaluationMode.OWN) -> list[SolveReport]:
    """Solve all six plans and sort them by operator utility, best first.

    Ties keep the order of :class:`PlanKind`.
    """
    reports = [solve_plan(inst, plan, mode) for plan in ALL_PLANS]
    return sorted(reports, key=lambda r: -r.no_utility)


@dataclass(frozen=True)
class SweepSpec:
    base: MarketInstance
    parameter: str
    values: tuple[float, ...]
    plans: tuple[Plan, ...] = ALL_PLANS
    mode: EvaluationMode = EvaluationMode.OWN
    index: int = 0

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise InvalidSweep(f"unknown sweep parameter {self.parameter!r}; use one of {SWEEP_PARAMETERS}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise InvalidSweep("sweep values must be non-empty")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise InvalidSweep("sweep values must be strictly increasing")
        if self.parameter != "eta" and not 0 <= self.index < self.base.n:
            raise InvalidSweep(f"sweep index {self.index} out of range for n={self.base.n}")
        if not self.plans:
            raise InvalidSweep("at least one plan is required")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "plans", tuple(self.plans))


@dataclass(frozen=True, eq=False)
class SweepRow:
    param_value: float
    plan: str
    no_utility: float
    fn_ce: float
    welfare: float
    t: float
    s: NDArray[np.float64]


@dataclass(eq=False)
class SweepResult:
    rows: list[SweepRow] = field(default_factory=list)

    def column(self, plan: Plan | str, attr: str = "no_utility") -> NDArray[np.float64]:
        """Values of ``attr`` for one plan, in sweep order."""
        label = str(plan)
        return np.array([getattr(r, attr) for r in self.rows if r.plan == label])


def perturb(base: MarketInstance, parameter: str, index: int, value: float) -> MarketInstance:
    """Copy of ``base`` with one swept parameter set to ``value``."""
    try:
        if parameter == "eta":
            return base.replace(eta=value)
        if parameter == "beta_i":
            beta = np.array(base.beta)
            beta[index] = value
            return base.replace(beta=beta)
        name = {"c_ii": "c", "sigma_ii": "sigma"}[parameter]
        m = np.array(getattr(base, name))
        m[index, index] = value
        return base.replace(**{name: m})
    except InvalidInstance as exc:
        raise InvalidPerturbation(f"{parameter}={value:.12g} gives an invalid instance: {exc}") from exc


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Solve every plan at every sweep value. Rows come out ordered by value, then plan."""

    def point(value):
        inst = perturb(spec.base, spec.parameter, spec.index, value)
        rows = []
        for plan in spec.plans:
            r = solve_plan(inst, plan, spec.mode)
            rows.append(SweepRow(value, str(plan), r.no_utility, r.fn_ce, r.welfare, r.contract.t, r.contract.s))
        return rows

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(point, spec.values))
    else:
        chunks = [point(v) for v in spec.values]
    return SweepResult([row for chunk in chunks for row in chunk])


def fmt(x: float) -> str:
    """12 significant digits, the precision used for every text output."""
    return format(float(x), ".12g")


def emit_csv(result: SweepResult, path, n: int | None = None) -> None:
    """Write ``result`` as UTF-8 CSV with LF line endings.

    ``n`` sets the number of ``s_i`` columns when there are no rows to infer it from.
    """
    if n is None:
        n = len(result.rows[0].s) if result.rows else 0
    header = ["param_value", "plan", "no_utility", "fn_ce", "welfare", "t"] + [f"s_{i}" for i in range(n)]
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for r in result.rows:
            writer.writerow(
                [fmt(r.param_value), r.plan, fmt(r.no_utility), fmt(r.fn_ce), fmt(r.welfare), fmt(r.t)]
                + [fmt(x) for x in r.s]
            )


def read_csv(path) -> SweepResult:
    """Parse a file written by :func:`emit_csv`."""
    rows = []
    with open(Path(path), encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        s_cols = [c for c in reader.fieldnames or [] if c.startswith("s_")]
        for rec in reader:
            rows.append(
                SweepRow(
                    param_value=float(rec["param_value"]),
                    plan=rec["plan"],
                    no_utility=float(rec["no_utility"]),
                    fn_ce=float(rec["fn_ce"]),
                    welfare=float(rec["welfare"]),
                    t=float(rec["t"]),
                    s=np.array([float(rec[c]) for c in s_cols]),
                )
            )
    return SweepResult(rows)
