"""TOML config files describing an instance, an optional sweep and simulation.

Example::

    [instance]
    c = [[1.5], [0.1, 1.5]]        # lower triangle, mirrored
    sigma = [[1.5, 0.6], [0.6, 2.0]]
    beta = [1.0, 1.0]
    eta = 2.0
    w_bar = 0.0

    [sweep]
    parameter = "eta"              # c_ii | eta | sigma_ii | beta_i
    index = 0
    values = [0.5, 1.0, 2.0]
    plans = ["general", "opening-reward"]
    mode = "own"

    [sim]
    samples = 100000
    seed = 42
    antithetic = false
    plan = "general"
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .contract_solver import ALL_PLANS, Plan
from .errors import FogpactError
from .experiments import EvaluationMode, SweepSpec
from .market_model import MarketInstance
from .monte_carlo import SimConfig


class ConfigError(FogpactError, ValueError):
    pass


@dataclass(frozen=True)
class SimSection:
    config: SimConfig
    plan: Plan


@dataclass(frozen=True)
class ConfigDocument:
    instance: MarketInstance
    sweep: SweepSpec | None = None
    sim: SimSection | None = None
    plans: tuple[Plan, ...] | None = None


def parse_matrix(rows, n: int, field: str) -> list[list[float]]:
    """Accept a full ``n x n`` matrix or its lower triangle (row ``i`` has ``i+1`` entries)."""
    if not isinstance(rows, list) or len(rows) != n or not all(isinstance(r, list) for r in rows):
        raise ConfigError(f"[instance] {field}: expected {n} bracketed rows")
    try:
        rows = [[float(x) for x in r] for r in rows]
    except (TypeError, ValueError):
        raise ConfigError(f"[instance] {field}: entries must be numbers") from None
    lengths = [len(r) for r in rows]
    if lengths == list(range(1, n + 1)) and n > 1:
        full = [[0.0] * n for _ in range(n)]
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                full[i][j] = full[j][i] = x
        return full
    if lengths != [n] * n:
        raise ConfigError(f"[instance] {field}: rows must all have length {n} or form a lower triangle")
    return rows


def _require(table: dict, key: str, section: str):
    if key not in table:
        raise ConfigError(f"[{section}] missing required key {key!r}")
    return table[key]


def _number(value, field):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{field}: expected a number, got {value!r}")
    return float(value)


def _plan(text, field) -> Plan:
    if not isinstance(text, str):
        raise ConfigError(f"{field}: expected a plan name string")
    try:
        return Plan.parse(text)
    except ValueError as exc:
        raise ConfigError(f"{field}: {exc}") from None


def parse_instance(table: dict) -> MarketInstance:
    beta = _require(table, "beta", "instance")
    if not isinstance(beta, list) or not beta:
        raise ConfigError("[instance] beta: expected a non-empty list")
    n = len(beta)
    if "n" in table and table["n"] != n:
        raise ConfigError(f"[instance] n = {table['n']} does not match len(beta) = {n}")
    c = parse_matrix(_require(table, "c", "instance"), n, "c")
    sigma = parse_matrix(_require(table, "sigma", "instance"), n, "sigma")
    try:
        return MarketInstance(
            c=c,
            sigma=sigma,
            beta=[_number(b, "[instance] beta") for b in beta],
            eta=_number(_require(table, "eta", "instance"), "[instance] eta"),
            w_bar=_number(table.get("w_bar", 0.0), "[instance] w_bar"),
            allow_complementarity=bool(table.get("allow_complementarity", False)),
        )
    except FogpactError as exc:
        raise ConfigError(f"[instance] {exc}") from None


def load_config(path) -> ConfigDocument:
    """Read and validate a config file. All problems surface as :class:`ConfigError`."""
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None

    inst = parse_instance(_require(data, "instance", "top level"))

    plans = None
    if "plans" in data:
        plans = tuple(_plan(p, "plans") for p in data["plans"])

    sweep = None
    if "sweep" in data:
        table = data["sweep"]
        try:
            sweep = SweepSpec(
                base=inst,
                parameter=_require(table, "parameter", "sweep"),
                values=tuple(_number(v, "[sweep] values") for v in _require(table, "values", "sweep")),
                plans=tuple(_plan(p, "[sweep] plans") for p in table["plans"]) if "plans" in table
                else plans or ALL_PLANS,
                mode=EvaluationMode(table.get("mode", "own")),
                index=int(table.get("index", 0)),
            )
        except ConfigError:
            raise
        except (FogpactError, ValueError) as exc:
            raise ConfigError(f"[sweep] {exc}") from None

    sim = None
    if "sim" in data:
        table = data["sim"]
        plan = _plan(table.get("plan", "general"), "[sim] plan")
        try:
            if "dim" in table:
                plan = Plan(plan.kind, int(table["dim"]))
            sim = SimSection(
                SimConfig(
                    samples=table.get("samples", 100_000),
                    seed=table.get("seed", 0),
                    antithetic=bool(table.get("antithetic", False)),
                ),
                plan,
            )
        except ValueError as exc:
            raise ConfigError(f"[sim] {exc}") from None

    return ConfigDocument(instance=inst, sweep=sweep, sim=sim, plans=plans)
