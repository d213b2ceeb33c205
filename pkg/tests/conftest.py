import numpy as np
import pytest

from fogpact.market_model import MarketInstance

ACCEPTANCE_LINES = []


def random_instance(rng, n=None, w_bar=0.0):
    """C = A'A + 0.1 I with A >= 0, sigma = B'B, as used by the oracle checks."""
    if n is None:
        n = int(rng.integers(1, 7))
    a = rng.uniform(0.0, 1.0, (n, n))
    b = rng.uniform(-1.0, 1.0, (n, n))
    c = a.T @ a + 0.1 * np.eye(n)
    sigma = b.T @ b
    return MarketInstance(
        c=0.5 * (c + c.T),
        sigma=0.5 * (sigma + sigma.T),
        beta=rng.uniform(-2.0, 2.0, n),
        eta=rng.uniform(0.1, 5.0),
        w_bar=w_bar,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def identity2():
    return MarketInstance(c=np.eye(2), sigma=np.eye(2), beta=[1.0, 1.0], eta=1.0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
