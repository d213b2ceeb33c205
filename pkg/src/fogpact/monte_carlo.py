"""Seeded simulation of noisy QoS and the fog node's realised CARA utility.

Noise is drawn in fixed-size blocks. Block ``b`` gets its own Philox stream
keyed by ``(seed, b)``, so the draws do not depend on how many worker threads
are used, and the per-block partial sums are reduced in block order.
"""

from __future__ import annotations

import math
from collections.abc import Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from . import matrix_core
from .market_model import EXPONENT_CAP, Contract, MarketInstance, operation_cost
from .errors import UtilityOverflow

BLOCK_SIZE = 1 << 16


@dataclass(frozen=True)
class SimConfig:
    samples: int
    seed: int = 0
    antithetic: bool = False
    workers: int = 1

    def __post_init__(self):
        if isinstance(self.samples, bool) or not isinstance(self.samples, int) or self.samples < 1:
            raise ValueError(f"samples must be a positive integer, got {self.samples!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True, eq=False)
class SimResult:
    mean_fn_utility: float
    stderr_fn_utility: float
    mean_payment: float
    stderr_payment: float
    mean_qos: NDArray[np.float64]
    samples_used: int


def _block_sizes(samples: int) -> list[int]:
    full, rest = divmod(samples, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def _block_noise(seed: int, block: int, size: int, factor: NDArray[np.float64]) -> NDArray[np.float64]:
    ss = np.random.SeedSequence(seed, spawn_key=(block,))
    z = np.random.Generator(np.random.Philox(ss)).standard_normal((size, factor.shape[1]))
    return z @ factor.T


def sample_qos(inst: MarketInstance, a: ArrayLike, config: SimConfig) -> Iterator[NDArray[np.float64]]:
    """Yield blocks of QoS draws ``q = a + eps`` with ``eps ~ N(0, sigma)``.

    Each yielded array has shape ``(block, n)``. With ``config.antithetic`` each
    block is followed by its mirror ``a - eps``.
    """
    a = np.asarray(a, dtype=np.float64)
    factor = matrix_core.sampling_factor(inst.sigma)
    for b, size in enumerate(_block_sizes(config.samples)):
        eps = _block_noise(config.seed, b, size, factor)
        yield a + eps
        if config.antithetic:
            yield a - eps


def _payments(t: float, s: NDArray[np.float64], q: NDArray[np.float64]) -> NDArray[np.float64]:
    # column-by-column so a row's value never depends on the block it sits in
    w = np.full(q.shape[0], t)
    for j in range(q.shape[1]):
        w += q[:, j] * s[j]
    return w


class _Moments:
    """Shifted sums for a numerically careful mean and variance."""

    def __init__(self, shift):
        self.shift = shift
        self.sums = []
        self.squares = []
        self.count = 0

    def add(self, values):
        d = values - self.shift
        self.sums.append(np.sum(d, axis=0))
        self.squares.append(np.sum(d * d, axis=0))
        self.count += d.shape[0]

    def mean(self):
        return self.shift + _fsum(self.sums) / self.count

    def stderr(self):
        if self.count < 2:
            return math.inf
        total = _fsum(self.sums)
        var = (_fsum(self.squares) - total * total / self.count) / (self.count - 1)
        return math.sqrt(max(var, 0.0) / self.count)


def _fsum(parts):
    arr = np.asarray(parts, dtype=np.float64)
    if arr.ndim == 1:
        return math.fsum(arr)
    return np.array([math.fsum(col) for col in arr.T])


def estimate_fn_utility(
    inst: MarketInstance, contract: Contract, a: ArrayLike, config: SimConfig
) -> SimResult:
    """Monte Carlo estimate of the fog node's expected CARA utility and expected pay.

    With antithetic sampling the standard errors are computed over pair
    averages, which are independent, and ``samples_used`` counts both halves.

    Raises:
        UtilityOverflow: if any sampled CARA exponent exceeds the cap.
    """
    a = np.asarray(a, dtype=np.float64)
    s = np.asarray(contract.s, dtype=np.float64)
    psi = operation_cost(inst, a)
    factor = matrix_core.sampling_factor(inst.sigma)

    def utility(w):
        exponent = -inst.eta * (w - psi)
        if np.any(exponent > EXPONENT_CAP):
            raise UtilityOverflow(
                f"sampled CARA exponent {float(np.max(exponent)):.6g} exceeds {EXPONENT_CAP:g}"
            )
        return -np.exp(exponent)

    w0 = _payments(contract.t, s, a[None, :])
    u_stats = _Moments(utility(w0)[0])
    w_stats = _Moments(w0[0])
    q_stats = _Moments(a)

    def run_block(job):
        b, size = job
        eps = _block_noise(config.seed, b, size, factor)
        w = _payments(contract.t, s, a + eps)
        u = utility(w)
        if config.antithetic:
            w_m = _payments(contract.t, s, a - eps)
            return 0.5 * (u + utility(w_m)), 0.5 * (w + w_m), np.broadcast_to(a, eps.shape)
        return u, w, a + eps

    jobs = list(enumerate(_block_sizes(config.samples)))
    if config.workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_block, jobs))
    else:
        results = map(run_block, jobs)
    for u, w, q in results:
        u_stats.add(u)
        w_stats.add(w)
        q_stats.add(q)

    mean_qos = np.asarray(q_stats.mean(), dtype=np.float64)
    return SimResult(
        mean_fn_utility=float(u_stats.mean()),
        stderr_fn_utility=float(u_stats.stderr()),
        mean_payment=float(w_stats.mean()),
        stderr_payment=float(w_stats.stderr()),
        mean_qos=mean_qos,
        samples_used=config.samples * (2 if config.antithetic else 1),
    )
