"""How each plan's operator utility moves as cost, risk aversion and noise grow.

Writes one CSV per sweep into the current directory and prints the General
and Opening Reward columns.

Run: python demos/sweeps.py
"""

from fogpact import SweepSpec, emit_csv, fixture_instance, run_sweep
from fogpact.fixtures import C11_VALUES, ETA_VALUES, SIGMA11_VALUES

for parameter, values in (("c_ii", C11_VALUES), ("eta", ETA_VALUES), ("sigma_ii", SIGMA11_VALUES)):
    result = run_sweep(SweepSpec(base=fixture_instance(), parameter=parameter, values=values))
    emit_csv(result, f"sweep_{parameter}.csv")
    print(f"{parameter} sweep -> sweep_{parameter}.csv")
    for plan in ("general", "opening-reward"):
        col = result.column(plan)
        print(f"  {plan:15}", " ".join(f"{u:8.5f}" for u in col))
