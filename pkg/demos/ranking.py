"""Rank the six plans, first on their own simplified instances, then on the true one.

In own mode each restricted plan is scored as if its simplifying assumption
held. In true mode its bonus is kept, the node best-responds to the real
costs and noise, and the salary is rebound, so General comes out on top of
the second-best plans.

Run: python demos/ranking.py
"""

from fogpact import EvaluationMode, fixture_instance, rank_plans
from fogpact.contract_solver import comparative_static_sensitivity

inst = fixture_instance()
for mode in EvaluationMode:
    print(f"{mode.value} mode")
    for r in rank_plans(inst, mode):
        print(f"  {str(r.plan):30} U={r.no_utility:.6f}  s={r.contract.s.round(4).tolist()}")

d = comparative_static_sensitivity(inst, "sigma", (0, 0))
print(f"raising noise on resource 0 moves the bonuses by {d.round(4).tolist()} per unit variance")
