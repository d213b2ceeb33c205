"""Market data for one operator and one fog node, and the payoff evaluators.

Notation used in this module:

* ``c``      operation-cost matrix, the fog node pays ``0.5 * a @ c @ a``
* ``sigma``  covariance of the QoS measurement noise, ``q = a + eps``
* ``beta``   marginal value of each resource to the operator
* ``eta``    the fog node's absolute risk aversion (CARA)
* ``w_bar``  the fog node's reservation certainty equivalent

A contract pays ``w = t + s @ q``.
"""

from __future__ import annotations

import dataclasses
import hashlib
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import matrix_core
from .errors import DimensionMismatch, InvalidInstance, NotSymmetric, UtilityOverflow

EXPONENT_CAP = 700.0


@dataclass(frozen=True, eq=False)
class MarketInstance:
    """Problem data, validated at construction.

    Arrays are copied and frozen (read-only). ``c`` must be symmetric positive
    definite with non-negative entries unless ``allow_complementarity`` is set,
    in which case negative off-diagonals are accepted but positive definiteness
    is still required. ``sigma`` may be singular, including all zeros.
    """

    c: NDArray[np.float64]
    sigma: NDArray[np.float64]
    beta: NDArray[np.float64]
    eta: float
    w_bar: float = 0.0
    allow_complementarity: bool = False

    def __post_init__(self):
        try:
            c = matrix_core.as_symmetric(self.c, "c")
            sigma = matrix_core.as_symmetric(self.sigma, "sigma")
        except NotSymmetric as exc:
            raise InvalidInstance(str(exc)) from exc
        beta = np.array(self.beta, dtype=np.float64, copy=True).reshape(-1)
        n = c.shape[0]
        if sigma.shape[0] != n or beta.shape[0] != n:
            raise InvalidInstance(
                f"dimension mismatch: c is {n}x{n}, sigma is "
                f"{sigma.shape[0]}x{sigma.shape[0]}, beta has length {beta.shape[0]}"
            )
        if not np.all(np.isfinite(beta)):
            raise InvalidInstance("beta has non-finite entries")
        if not self.allow_complementarity and np.any(c < 0):
            raise InvalidInstance(
                "c has negative entries (technological complementarity); "
                "pass allow_complementarity=True to permit them"
            )
        if not matrix_core.is_positive_definite(c):
            raise InvalidInstance("c must be positive definite")
        if np.any(np.diag(sigma) < 0) or not matrix_core.validate_psd(sigma):
            raise InvalidInstance("sigma must be positive semi-definite")
        eta = float(self.eta)
        if not (np.isfinite(eta) and eta > 0):
            raise InvalidInstance(f"eta must be a positive finite number, got {self.eta!r}")
        w_bar = float(self.w_bar)
        if not np.isfinite(w_bar):
            raise InvalidInstance("w_bar must be finite")
        beta.flags.writeable = False
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "eta", eta)
        object.__setattr__(self, "w_bar", w_bar)

    @property
    def n(self) -> int:
        return self.c.shape[0]

    def replace(self, **changes) -> MarketInstance:
        return dataclasses.replace(self, **changes)

    def digest(self) -> str:
        """SHA-256 over the numeric content; stable across runs."""
        h = hashlib.sha256()
        for arr in (self.c, self.sigma, self.beta, np.array([self.eta, self.w_bar])):
            h.update(np.ascontiguousarray(arr, dtype="<f8").tobytes())
        h.update(b"\x01" if self.allow_complementarity else b"\x00")
        return h.hexdigest()


@dataclass(frozen=True, eq=False)
class Contract:
    """Linear payment plan: fixed salary ``t`` plus ``s @ q``."""

    t: float
    s: NDArray[np.float64]

    def __post_init__(self):
        s = np.array(self.s, dtype=np.float64, copy=True).reshape(-1)
        if not np.all(np.isfinite(s)) or not np.isfinite(self.t):
            raise ValueError("contract entries must be finite")
        s.flags.writeable = False
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", float(self.t))


def _vec(inst: MarketInstance, x: ArrayLike, name: str) -> NDArray[np.float64]:
    arr = np.asarray(x, dtype=np.float64)
    if arr.shape != (inst.n,):
        raise DimensionMismatch(f"{name} must have shape ({inst.n},), got {arr.shape}")
    return arr


def operation_cost(inst: MarketInstance, a: ArrayLike) -> float:
    a = _vec(inst, a, "a")
    return 0.5 * float(a @ inst.c @ a)


def measurement_cost(inst: MarketInstance, s: ArrayLike) -> float:
    """Risk premium ``0.5 * eta * s @ sigma @ s`` the fog node demands for noisy pay."""
    s = _vec(inst, s, "s")
    return 0.5 * inst.eta * float(s @ inst.sigma @ s)


def fn_certainty_equivalent(inst: MarketInstance, contract: Contract, a: ArrayLike) -> float:
    a = _vec(inst, a, "a")
    s = _vec(inst, contract.s, "s")
    return contract.t + float(s @ a) - operation_cost(inst, a) - measurement_cost(inst, s)


def cara_utility(eta: float, net_income: ArrayLike) -> NDArray[np.float64] | float:
    """``-exp(-eta * net_income)``, refusing exponents above ``EXPONENT_CAP``."""
    exponent = -eta * np.asarray(net_income, dtype=np.float64)
    if np.any(exponent > EXPONENT_CAP):
        raise UtilityOverflow(
            f"CARA exponent {float(np.max(exponent)):.6g} exceeds {EXPONENT_CAP:g}"
        )
    out = -np.exp(exponent)
    return float(out) if out.ndim == 0 else out


def fn_exponential_utility(inst: MarketInstance, w_realized: ArrayLike, a: ArrayLike):
    """Realised CARA utility of the fog node for payment(s) ``w_realized`` at effort ``a``.

    Accepts a scalar or an array of payments.
    """
    return cara_utility(inst.eta, np.asarray(w_realized, dtype=np.float64) - operation_cost(inst, a))


def expected_fn_utility(inst: MarketInstance, contract: Contract, a: ArrayLike) -> float:
    """Closed-form expected CARA utility under Gaussian pay, via the certainty equivalent."""
    return cara_utility(inst.eta, fn_certainty_equivalent(inst, contract, a))


def no_certainty_equivalent(inst: MarketInstance, contract: Contract, a: ArrayLike) -> float:
    """Operator's expected profit; the operator is risk neutral."""
    a = _vec(inst, a, "a")
    s = _vec(inst, contract.s, "s")
    return float(inst.beta @ a) - float(s @ a) - contract.t


def social_welfare(inst: MarketInstance, contract: Contract, a: ArrayLike) -> float:
    """Joint surplus. Independent of ``contract.t``."""
    a = _vec(inst, a, "a")
    return float(inst.beta @ a) - operation_cost(inst, a) - measurement_cost(inst, contract.s)


def fn_best_response(inst: MarketInstance, contract: Contract) -> NDArray[np.float64]:
    """Effort maximising the fog node's certainty equivalent: ``a = c^-1 s``."""
    s = _vec(inst, contract.s, "s")
    return matrix_core.invert(inst.c) @ s
