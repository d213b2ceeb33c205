"""Frozen reference instance for the sweep and ranking experiments.

No published parameter values exist for the six-plan comparison, so this
instance was chosen by hand: two resources with equal costs and unit returns,
weak cost substitution (``c_12 = 0.1``) and stronger noise correlation
(``sigma_12 = 0.6``). At every point of the three sweep grids below it ranks
the plans in a fixed order with clear gaps, and General utility falls strictly
along each sweep. ``demos/find_fixture.py`` checks these properties and
compares the instance with the rest of a small parameter grid.
"""

from .market_model import MarketInstance

FIXTURE_C = ((1.5, 0.1), (0.1, 1.5))
FIXTURE_SIGMA = ((1.5, 0.6), (0.6, 2.0))
FIXTURE_BETA = (1.0, 1.0)
FIXTURE_ETA = 2.0
FIXTURE_W_BAR = 0.0

C11_VALUES = (1.0, 1.5, 2.0, 2.5, 3.0)
ETA_VALUES = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0)
SIGMA11_VALUES = (1.0, 1.5, 2.0, 2.5, 3.0)


def fixture_instance() -> MarketInstance:
    return MarketInstance(
        c=FIXTURE_C,
        sigma=FIXTURE_SIGMA,
        beta=FIXTURE_BETA,
        eta=FIXTURE_ETA,
        w_bar=FIXTURE_W_BAR,
    )
