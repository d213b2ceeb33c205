"""Optimal linear payment plans.

The fog node best-responds to a bonus vector ``s`` with effort ``a = c^-1 s``,
and the operator sets the fixed salary so the participation constraint binds.
Substituting both leaves a concave quadratic in ``s``::

    g(s) = beta @ c^-1 @ s - 0.5 * s @ c^-1 @ s - 0.5 * eta * s @ sigma @ s

whose maximiser is ``s* = (I + eta c sigma)^-1 beta`` and whose maximum minus
``w_bar`` is the operator's utility. The plan variants below either solve a
modified instance or restrict the feasible ``s``. :func:`solve_numeric_oracle`
maximises ``g`` directly by gradient ascent and never touches the closed form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from . import matrix_core
from .errors import BadDimension, InvalidInstance, InvalidPerturbation, NoConvergence
from .market_model import (
    Contract,
    MarketInstance,
    fn_certainty_equivalent,
    measurement_cost,
    no_certainty_equivalent,
    operation_cost,
    social_welfare,
)


class PlanKind(enum.Enum):
    GENERAL = "general"
    INDEPENDENT = "independent"
    STOCHASTIC_INDEPENDENT = "stochastic-independent"
    TECHNOLOGICALLY_INDEPENDENT = "technologically-independent"
    SINGLE_BONUS = "single-bonus"
    OPENING_REWARD = "opening-reward"


@dataclass(frozen=True)
class Plan:
    """A plan kind plus, for single bonus, the paid dimension (``None`` = auto)."""

    kind: PlanKind
    dim: int | None = None

    def __post_init__(self):
        if self.dim is not None and self.kind is not PlanKind.SINGLE_BONUS:
            raise ValueError(f"dim only applies to single-bonus, not {self.kind.value}")

    @classmethod
    def parse(cls, text: str) -> Plan:
        """Parse ``"general"``, ``"single-bonus"`` or ``"single-bonus:1"``."""
        name, _, dim = text.strip().partition(":")
        try:
            kind = PlanKind(name)
        except ValueError:
            choices = ", ".join(k.value for k in PlanKind)
            raise ValueError(f"unknown plan {name!r} (choose from {choices})") from None
        if dim:
            return cls(kind, int(dim))
        return cls(kind)

    def __str__(self):
        if self.dim is None:
            return self.kind.value
        return f"{self.kind.value}:{self.dim}"


ALL_PLANS = tuple(Plan(k) for k in PlanKind)


@dataclass(frozen=True, eq=False)
class SolveReport:
    plan: Plan
    contract: Contract
    effort: NDArray[np.float64]
    no_utility: float
    fn_ce: float
    welfare: float
    instance_digest: str


def make_report(inst: MarketInstance, plan: Plan, contract: Contract, effort) -> SolveReport:
    """Evaluate ``(contract, effort)`` on ``inst`` and package the result."""
    effort = np.array(effort, dtype=np.float64)
    effort.flags.writeable = False
    return SolveReport(
        plan=plan,
        contract=contract,
        effort=effort,
        no_utility=no_certainty_equivalent(inst, contract, effort),
        fn_ce=fn_certainty_equivalent(inst, contract, effort),
        welfare=social_welfare(inst, contract, effort),
        instance_digest=inst.digest(),
    )


def binding_salary(inst: MarketInstance, s, a) -> float:
    """Fixed salary that leaves the fog node exactly at its reservation level."""
    return inst.w_bar - float(np.dot(s, a)) + operation_cost(inst, a) + measurement_cost(inst, s)


def optimal_bonus(inst: MarketInstance) -> NDArray[np.float64]:
    """Closed-form optimal bonus vector ``(I + eta c sigma)^-1 beta``."""
    m = np.eye(inst.n) + (inst.eta * inst.c) @ inst.sigma
    return matrix_core.solve_general(m, inst.beta)


def solve_general(inst: MarketInstance) -> SolveReport:
    """Optimal plan paying on every QoS dimension, full cost and noise coupling."""
    return _solve_closed_form(inst, Plan(PlanKind.GENERAL))


def _solve_closed_form(inst: MarketInstance, plan: Plan) -> SolveReport:
    s = optimal_bonus(inst)
    c_inv = matrix_core.invert(inst.c)
    a = c_inv @ s
    t = inst.w_bar + 0.5 * float(s @ (inst.eta * inst.sigma - c_inv) @ s)
    return make_report(inst, plan, Contract(t, s), a)


def _diag(m):
    return np.diag(np.diag(m))


def independent_instance(inst: MarketInstance) -> MarketInstance:
    return inst.replace(c=_diag(inst.c), sigma=_diag(inst.sigma))


def stochastic_independent_instance(inst: MarketInstance) -> MarketInstance:
    return inst.replace(sigma=_diag(inst.sigma))


def technologically_independent_instance(inst: MarketInstance) -> MarketInstance:
    return inst.replace(c=_diag(inst.c))


def solve_independent(inst: MarketInstance) -> SolveReport:
    """General plan on the instance with both ``c`` and ``sigma`` diagonalised.

    Utilities are reported against the diagonalised instance.
    """
    return _solve_closed_form(independent_instance(inst), Plan(PlanKind.INDEPENDENT))


def solve_stochastic_independent(inst: MarketInstance) -> SolveReport:
    """Measurement errors treated as uncorrelated; cost coupling kept."""
    return _solve_closed_form(
        stochastic_independent_instance(inst), Plan(PlanKind.STOCHASTIC_INDEPENDENT)
    )


def solve_technologically_independent(inst: MarketInstance) -> SolveReport:
    """Cost coupling dropped; measurement correlation kept."""
    return _solve_closed_form(
        technologically_independent_instance(inst), Plan(PlanKind.TECHNOLOGICALLY_INDEPENDENT)
    )


def solve_single_bonus(inst: MarketInstance, dim: int | None = None) -> SolveReport:
    """Best plan that pays a bonus on one QoS dimension only.

    With ``s = x * e_i`` the reduced objective is a scalar quadratic in ``x``
    with maximiser ``(c^-1 beta)_i / ((c^-1)_ii + eta * sigma_ii)``. When
    ``dim`` is ``None`` every dimension is tried and the one giving the
    operator the most utility wins; ties go to the lowest index. The report's
    ``plan.dim`` names the dimension actually paid.
    """
    if dim is not None:
        if isinstance(dim, bool) or not isinstance(dim, (int, np.integer)) or not 0 <= dim < inst.n:
            raise BadDimension(f"single-bonus dim must be an integer in [0, {inst.n}), got {dim!r}")
        dims = [int(dim)]
    else:
        dims = range(inst.n)
    c_inv = matrix_core.invert(inst.c)
    leverage = c_inv @ inst.beta
    best = None
    for i in dims:
        s = np.zeros(inst.n)
        s[i] = leverage[i] / (c_inv[i, i] + inst.eta * inst.sigma[i, i])
        a = c_inv @ s
        report = make_report(inst, Plan(PlanKind.SINGLE_BONUS, i), Contract(binding_salary(inst, s, a), s), a)
        if best is None or report.no_utility > best.no_utility:
            best = report
    return best


def solve_opening_reward(inst: MarketInstance) -> SolveReport:
    """Salary-only plan with dictated effort, i.e. the first-best benchmark.

    The operator fixes ``a = c^-1 beta`` and pays cost plus reservation.
    Neither ``eta`` nor ``sigma`` enters.
    """
    a = matrix_core.invert(inst.c) @ inst.beta
    s = np.zeros(inst.n)
    t = inst.w_bar + operation_cost(inst, a)
    return make_report(inst, Plan(PlanKind.OPENING_REWARD), Contract(t, s), a)


_SOLVERS = {
    PlanKind.GENERAL: solve_general,
    PlanKind.INDEPENDENT: solve_independent,
    PlanKind.STOCHASTIC_INDEPENDENT: solve_stochastic_independent,
    PlanKind.TECHNOLOGICALLY_INDEPENDENT: solve_technologically_independent,
    PlanKind.OPENING_REWARD: solve_opening_reward,
}


def solve(inst: MarketInstance, plan: Plan | PlanKind | str) -> SolveReport:
    """Dispatch to the solver for ``plan``."""
    if isinstance(plan, str):
        plan = Plan.parse(plan)
    elif isinstance(plan, PlanKind):
        plan = Plan(plan)
    if plan.kind is PlanKind.SINGLE_BONUS:
        return solve_single_bonus(inst, plan.dim)
    return _SOLVERS[plan.kind](inst)


def solve_numeric_oracle(
    inst: MarketInstance,
    axis: int | None = None,
    *,
    tol: float = 1e-10,
    max_iter: int = 100_000,
) -> SolveReport:
    """Maximise the reduced objective ``g(s)`` by gradient ascent.

    Starts at ``s = 0``. Each step begins from a Barzilai-Borwein trial length
    and is halved until the Armijo condition holds. The increase in ``g`` along
    a step is computed with the trapezoid rule on the gradient, which is exact
    for a quadratic and avoids cancellation near the optimum. Stops when the
    sup-norm of the gradient is at most ``tol``.

    With ``axis`` set only that coordinate of ``s`` is optimised.

    Raises:
        NoConvergence: after ``max_iter`` iterations.
    """
    n = inst.n
    if axis is not None and not 0 <= axis < n:
        raise BadDimension(f"axis must be in [0, {n}), got {axis}")
    c_inv = matrix_core.invert(inst.c)
    lever = c_inv @ inst.beta
    mask = np.ones(n)
    if axis is not None:
        mask = np.zeros(n)
        mask[axis] = 1.0

    def grad(s):
        return (lever - c_inv @ s - inst.eta * (inst.sigma @ s)) * mask

    s = np.zeros(n)
    d = grad(s)
    step = 1.0
    for _ in range(max_iter):
        if np.max(np.abs(d)) <= tol:
            break
        dd = float(d @ d)
        while True:
            s_new = s + step * d
            d_new = grad(s_new)
            gain = 0.5 * step * float((d + d_new) @ d)
            if gain >= 1e-4 * step * dd:
                break
            step *= 0.5
            if step < 1e-300:
                raise NoConvergence("line search collapsed")
        ds = s_new - s
        curvature = float(ds @ (d - d_new))
        s, d = s_new, d_new
        step = float(ds @ ds) / curvature if curvature > 0 else 1.0
    else:
        raise NoConvergence(f"gradient ascent did not converge in {max_iter} iterations")

    a = c_inv @ s
    plan = Plan(PlanKind.GENERAL) if axis is None else Plan(PlanKind.SINGLE_BONUS, axis)
    return make_report(inst, plan, Contract(binding_salary(inst, s, a), s), a)


def _perturbed(inst: MarketInstance, param: str, index: tuple[int, ...], delta: float) -> MarketInstance:
    try:
        if param == "eta":
            return inst.replace(eta=inst.eta + delta)
        if param == "beta":
            (i,) = index
            beta = np.array(inst.beta)
            beta[i] += delta
            return inst.replace(beta=beta)
        if param in ("c", "sigma"):
            i, j = index
            m = np.array(getattr(inst, param))
            m[i, j] += delta
            if i != j:
                m[j, i] += delta
            return inst.replace(**{param: m})
    except InvalidInstance as exc:
        raise InvalidPerturbation(f"perturbing {param}{list(index)} by {delta:+.3g}: {exc}") from exc
    raise ValueError(f"unknown parameter {param!r}; use 'c', 'sigma', 'eta' or 'beta'")


def parameter_value(inst: MarketInstance, param: str, index: tuple[int, ...] = ()) -> float:
    if param == "eta":
        return inst.eta
    return float(getattr(inst, param)[tuple(index)])


def comparative_static_sensitivity(
    inst: MarketInstance,
    param: str,
    index: tuple[int, ...] = (),
    h: float | None = None,
) -> NDArray[np.float64]:
    """Central finite-difference derivative of the optimal bonus vector.

    ``param`` is one of ``"c"``, ``"sigma"`` (with ``index=(i, j)``; an
    off-diagonal perturbation moves both symmetric entries), ``"beta"`` (with
    ``index=(i,)``) or ``"eta"``. The default step is
    ``1e-5 * max(1, |value|)``.
    """
    if h is None:
        h = 1e-5 * max(1.0, abs(parameter_value(inst, param, index)))
    if not h > 0:
        raise ValueError("h must be positive")
    up = optimal_bonus(_perturbed(inst, param, index, h))
    down = optimal_bonus(_perturbed(inst, param, index, -h))
    return (up - down) / (2 * h)
