"""Closed-form General plan versus a gradient-ascent search that never sees the formula.

Run: python demos/oracle_check.py
"""

import time

import numpy as np

from fogpact import MarketInstance, solve_general, solve_numeric_oracle

rng = np.random.default_rng(0)
worst_s = worst_u = 0.0
start = time.perf_counter()
for _ in range(200):
    n = int(rng.integers(1, 7))
    a = rng.uniform(0, 1, (n, n))
    b = rng.uniform(-1, 1, (n, n))
    c = a.T @ a + 0.1 * np.eye(n)
    sigma = b.T @ b
    inst = MarketInstance(
        c=0.5 * (c + c.T), sigma=0.5 * (sigma + sigma.T), beta=rng.uniform(-2, 2, n), eta=rng.uniform(0.1, 5)
    )
    closed, oracle = solve_general(inst), solve_numeric_oracle(inst)
    worst_s = max(worst_s, float(np.max(np.abs(closed.contract.s - oracle.contract.s))))
    worst_u = max(worst_u, abs(closed.no_utility - oracle.no_utility))

print(f"200 random instances in {time.perf_counter() - start:.2f}s")
print(f"largest bonus difference   {worst_s:.2e}")
print(f"largest utility difference {worst_u:.2e}")

# The scalar case has s* = beta / (1 + eta c sigma^2).
inst = MarketInstance(c=[[2.0]], sigma=[[1.0]], beta=[1.0], eta=1.0)
r = solve_general(inst)
print(f"scalar case: s*={r.contract.s[0]:.6f} a*={r.effort[0]:.6f} t*={r.contract.t:.6f} U={r.no_utility:.6f}")
