"""Optimal linear payment plans between a network operator and a fog node under moral hazard."""

from .contract_solver import (
    ALL_PLANS,
    Plan,
    PlanKind,
    SolveReport,
    comparative_static_sensitivity,
    solve,
    solve_general,
    solve_independent,
    solve_numeric_oracle,
    solve_opening_reward,
    solve_single_bonus,
    solve_stochastic_independent,
    solve_technologically_independent,
)
from .errors import (
    BadDimension,
    DimensionMismatch,
    FogpactError,
    InvalidInstance,
    InvalidPerturbation,
    InvalidProfile,
    InvalidSweep,
    NoConvergence,
    NotPsd,
    SingularMatrix,
    UtilityOverflow,
)
from .experiments import EvaluationMode, SweepResult, SweepSpec, emit_csv, rank_plans, read_csv, run_sweep
from .fixtures import fixture_instance
from .market_model import (
    Contract,
    MarketInstance,
    expected_fn_utility,
    fn_best_response,
    fn_certainty_equivalent,
    fn_exponential_utility,
    no_certainty_equivalent,
    operation_cost,
    social_welfare,
)
from .monte_carlo import SimConfig, SimResult, estimate_fn_utility, sample_qos
from .scenario import ResourceProfile, profile_to_effort

__version__ = "0.1.0"
