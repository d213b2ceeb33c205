import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fogpact.errors import DimensionMismatch, InvalidInstance, UtilityOverflow
from fogpact.market_model import (
    Contract,
    MarketInstance,
    fn_best_response,
    fn_certainty_equivalent,
    fn_exponential_utility,
    no_certainty_equivalent,
    operation_cost,
    social_welfare,
)

from conftest import random_instance


def inst1(**kw):
    base = dict(c=[[1.0]], sigma=[[1.0]], beta=[1.0], eta=1.0)
    base.update(kw)
    return MarketInstance(**base)


class TestConstruction:
    def test_rejects_semidefinite_cost(self):
        with pytest.raises(InvalidInstance, match="positive definite"):
            MarketInstance(c=[[1.0, 1.0], [1.0, 1.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0)

    def test_rejects_complementarity_unless_allowed(self):
        c = [[1.0, -0.2], [-0.2, 1.0]]
        with pytest.raises(InvalidInstance, match="complementarity"):
            MarketInstance(c=c, sigma=np.eye(2), beta=[1, 1], eta=1.0)
        inst = MarketInstance(c=c, sigma=np.eye(2), beta=[1, 1], eta=1.0, allow_complementarity=True)
        assert inst.c[0, 1] == -0.2

    def test_complementarity_still_needs_pd(self):
        with pytest.raises(InvalidInstance):
            MarketInstance(c=[[1.0, -1.0], [-1.0, 1.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0,
                           allow_complementarity=True)

    @pytest.mark.parametrize("eta", [0.0, -1.0, math.inf, math.nan])
    def test_rejects_bad_eta(self, eta):
        with pytest.raises(InvalidInstance):
            inst1(eta=eta)

    def test_rejects_indefinite_sigma(self):
        with pytest.raises(InvalidInstance):
            MarketInstance(c=np.eye(2), sigma=[[1.0, 2.0], [2.0, 1.0]], beta=[1, 1], eta=1.0)

    def test_zero_sigma_allowed(self):
        assert inst1(sigma=[[0.0]]).sigma[0, 0] == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInstance, match="dimension"):
            MarketInstance(c=np.eye(2), sigma=np.eye(2), beta=[1.0], eta=1.0)

    def test_asymmetric(self):
        with pytest.raises(InvalidInstance):
            MarketInstance(c=[[1.0, 0.1], [0.2, 1.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0)

    def test_arrays_are_frozen_copies(self):
        c = np.eye(2)
        inst = MarketInstance(c=c, sigma=np.eye(2), beta=[1, 1], eta=1.0)
        c[0, 0] = 5.0
        assert inst.c[0, 0] == 1.0
        with pytest.raises(ValueError):
            inst.beta[0] = 3.0

    def test_digest_is_content_based(self):
        a = inst1()
        assert a.digest() == inst1().digest()
        assert a.digest() != inst1(eta=2.0).digest()


def test_operation_cost_examples():
    i2 = MarketInstance(c=np.eye(2), sigma=np.eye(2), beta=[1, 1], eta=1.0)
    assert operation_cost(i2, [1.0, 1.0]) == 1.0
    assert operation_cost(i2, [0.0, 0.0]) == 0.0
    i3 = MarketInstance(c=[[2.0, 1.0], [1.0, 2.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0)
    assert operation_cost(i3, [1.0, 1.0]) == 3.0
    with pytest.raises(DimensionMismatch):
        operation_cost(i2, [1.0])


def test_fn_certainty_equivalent_examples():
    inst = inst1(w_bar=0.7)
    assert fn_certainty_equivalent(inst, Contract(1.0, [0.0]), [0.0]) == 1.0
    assert fn_certainty_equivalent(inst1(), Contract(0.0, [1.0]), [1.0]) == 0.0
    assert fn_certainty_equivalent(inst, Contract(inst.w_bar, [0.0]), [0.0]) == inst.w_bar
    with pytest.raises(DimensionMismatch):
        fn_certainty_equivalent(inst, Contract(0.0, [1.0, 2.0]), [0.0])


def test_fn_exponential_utility_examples():
    inst = inst1()
    a = np.array([0.3])
    assert fn_exponential_utility(inst, 0.0, [0.0]) == -1.0
    psi = operation_cost(inst, a)
    assert fn_exponential_utility(inst, math.log(2) + psi, a) == pytest.approx(-0.5, abs=1e-15)
    assert fn_exponential_utility(inst1(eta=2.0), psi, a) == -1.0


def test_fn_exponential_utility_overflow():
    with pytest.raises(UtilityOverflow):
        fn_exponential_utility(inst1(), -701.0, [0.0])
    assert fn_exponential_utility(inst1(), -699.0, [0.0]) < 0


def test_fn_exponential_utility_vectorised():
    u = fn_exponential_utility(inst1(), np.array([0.0, 1.0]), [0.0])
    np.testing.assert_allclose(u, [-1.0, -math.exp(-1.0)])


def test_no_certainty_equivalent_examples():
    i2 = MarketInstance(c=np.eye(2), sigma=np.eye(2), beta=[1, 1], eta=1.0)
    assert no_certainty_equivalent(i2, Contract(0.0, [0.0, 0.0]), [1.0, 1.0]) == 2.0
    assert no_certainty_equivalent(i2, Contract(0.0, i2.beta), [0.3, -2.0]) == 0.0
    assert no_certainty_equivalent(inst1(), Contract(0.1, [0.5]), [0.5]) == pytest.approx(0.15, abs=1e-15)


def test_social_welfare_examples(identity2):
    assert social_welfare(identity2, Contract(3.0, [0.0, 0.0]), [0.0, 0.0]) == 0.0
    k = Contract(0.0, [0.5, 0.5])
    assert social_welfare(identity2, k, [0.5, 0.5]) == pytest.approx(0.5, abs=1e-15)


def test_best_response_examples():
    i = MarketInstance(c=2 * np.eye(2), sigma=np.eye(2), beta=[1, 1], eta=1.0)
    np.testing.assert_allclose(fn_best_response(i, Contract(0.0, [1.0, 1.0])), [0.5, 0.5], atol=1e-15)
    np.testing.assert_array_equal(fn_best_response(i, Contract(0.0, [0.0, 0.0])), [0.0, 0.0])
    j = MarketInstance(c=[[2.0, 1.0], [1.0, 2.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0)
    np.testing.assert_allclose(fn_best_response(j, Contract(0.0, [1.0, 1.0])), [1 / 3, 1 / 3], atol=1e-15)


def test_best_response_beats_grid_search():
    inst = MarketInstance(c=[[2.0, 0.5], [0.5, 1.0]], sigma=np.eye(2), beta=[1, 1], eta=1.0)
    k = Contract(0.2, [0.7, -0.4])
    grid = np.linspace(-2, 2, 401)
    best = max(
        (fn_certainty_equivalent(inst, k, [x, y]), x, y) for x in grid[::4] for y in grid[::4]
    )
    # refine around the coarse optimum
    xs = best[1] + np.linspace(-0.04, 0.04, 81)
    ys = best[2] + np.linspace(-0.04, 0.04, 81)
    fine = max((fn_certainty_equivalent(inst, k, [x, y]), x, y) for x in xs for y in ys)
    a = fn_best_response(inst, k)
    np.testing.assert_allclose(a, fine[1:], atol=1e-3)
    assert fn_certainty_equivalent(inst, k, a) >= fine[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_welfare_is_sum_of_certainty_equivalents(seed):
    rng = np.random.default_rng(seed)
    inst = random_instance(rng, n=int(rng.integers(1, 5)), w_bar=rng.normal())
    k = Contract(rng.normal(), rng.normal(size=inst.n))
    a = rng.normal(size=inst.n)
    total = fn_certainty_equivalent(inst, k, a) + no_certainty_equivalent(inst, k, a)
    assert social_welfare(inst, k, a) == pytest.approx(total, abs=1e-12 * max(1.0, abs(total)))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_best_response_beats_perturbations(seed):
    rng = np.random.default_rng(seed)
    inst = random_instance(rng, n=int(rng.integers(1, 5)))
    k = Contract(0.0, rng.uniform(-2, 2, inst.n))
    a = fn_best_response(inst, k)
    top = fn_certainty_equivalent(inst, k, a)
    d = rng.normal(size=(1000, inst.n))
    d *= rng.uniform(0, 1, (1000, 1)) / np.linalg.norm(d, axis=1, keepdims=True)
    for delta in d:
        assert fn_certainty_equivalent(inst, k, a + delta) <= top


@given(st.floats(-50, 50), st.floats(1e-6, 10))
def test_exponential_utility_monotone_and_negative(w, dw):
    inst = inst1()
    lo = fn_exponential_utility(inst, w, [0.0])
    hi = fn_exponential_utility(inst, w + dw, [0.0])
    assert lo < 0 and hi < 0
    assert hi > lo
