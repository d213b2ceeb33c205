"""Monte Carlo check that a Gaussian payment's CARA utility is -exp(-eta * CE).

Under the optimal General plan the salary makes the fog node indifferent to
its outside option, so the simulated utility should sit at -exp(-eta w_bar).

Run: python demos/certainty_equivalent.py
"""

import math

from fogpact import SimConfig, estimate_fn_utility, fixture_instance, solve_general
from fogpact.market_model import expected_fn_utility

for w_bar in (0.0, 0.5):
    inst = fixture_instance().replace(w_bar=w_bar)
    report = solve_general(inst)
    for antithetic in (False, True):
        sim = estimate_fn_utility(
            inst, report.contract, report.effort, SimConfig(1_000_000, seed=42, antithetic=antithetic)
        )
        exact = expected_fn_utility(inst, report.contract, report.effort)
        z = (sim.mean_fn_utility - exact) / sim.stderr_fn_utility
        print(
            f"w_bar={w_bar:.1f} antithetic={antithetic!s:5}  simulated {sim.mean_fn_utility:.6f}"
            f" +- {sim.stderr_fn_utility:.6f}  exact {exact:.6f}  z={z:+.2f}"
        )
    print(f"  reservation utility -exp(-eta w_bar) = {-math.exp(-inst.eta * w_bar):.6f}")
