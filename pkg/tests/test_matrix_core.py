import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fogpact import matrix_core as mc
from fogpact.errors import NotPsd, NotSymmetric, SingularMatrix


def small_square(max_n=8):
    return st.integers(1, max_n).flatmap(
        lambda n: arrays(np.float64, (n, n), elements=st.floats(-10, 10, allow_subnormal=False))
    )


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.eye(2), True),
        ([[1.0, 2.0], [2.0, 1.0]], False),  # eigenvalues 3, -1
        ([[1.0, 1.0], [1.0, 1.0]], True),  # eigenvalues 2, 0
    ],
)
def test_validate_psd(m, expected):
    assert mc.validate_psd(m, 1e-9) is expected


def test_validate_psd_rejects_negative_tol():
    with pytest.raises(ValueError):
        mc.validate_psd(np.eye(2), -1.0)


def test_as_symmetric_checks_shape_and_symmetry():
    with pytest.raises(NotSymmetric):
        mc.as_symmetric([[1.0, 2.0], [2.5, 1.0]])
    with pytest.raises(NotSymmetric):
        mc.as_symmetric(np.ones((2, 3)))
    with pytest.raises(NotSymmetric):
        mc.as_symmetric(np.eye(65))
    m = mc.as_symmetric([[1, 2], [2, 1]])
    assert m.dtype == np.float64 and not m.flags.writeable


def test_invert_examples():
    np.testing.assert_array_equal(mc.invert(np.eye(3)), np.eye(3))
    np.testing.assert_allclose(mc.invert(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]), rtol=0, atol=1e-15)
    # adjugate: [[2,1],[1,2]]^-1 = (1/3)[[2,-1],[-1,2]]
    np.testing.assert_allclose(
        mc.invert([[2.0, 1.0], [1.0, 2.0]]), np.array([[2.0, -1.0], [-1.0, 2.0]]) / 3, rtol=0, atol=1e-15
    )


@pytest.mark.parametrize("m", [[[1.0, 1.0], [1.0, 1.0]], [[1.0, 2.0], [2.0, 1.0]], np.zeros((2, 2))])
def test_invert_rejects_non_pd(m):
    with pytest.raises(SingularMatrix):
        mc.invert(m)


@pytest.mark.parametrize(
    "m, v, x",
    [
        (np.eye(2), [3.0, 7.0], [3.0, 7.0]),
        (np.diag([2.0, 5.0]), [2.0, 5.0], [1.0, 1.0]),
        ([[1.0, 1.0], [0.0, 1.0]], [2.0, 1.0], [1.0, 1.0]),  # back substitution
    ],
)
def test_solve_general_examples(m, v, x):
    np.testing.assert_allclose(mc.solve_general(m, v), x, rtol=0, atol=1e-15)


def test_solve_general_singular():
    with pytest.raises(SingularMatrix):
        mc.solve_general([[1.0, 2.0], [2.0, 4.0]], [1.0, 2.0])


def test_sampling_factor_examples():
    np.testing.assert_array_equal(mc.sampling_factor(np.eye(2)), np.eye(2))
    np.testing.assert_allclose(mc.sampling_factor(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    np.testing.assert_array_equal(mc.sampling_factor(np.zeros((3, 3))), np.zeros((3, 3)))


def test_sampling_factor_rank_deficient():
    m = np.array([[1.0, 1.0], [1.0, 1.0]])
    f = mc.sampling_factor(m)
    assert np.max(np.abs(f @ f.T - m)) <= 1e-8


def test_sampling_factor_not_psd():
    with pytest.raises(NotPsd):
        mc.sampling_factor([[1.0, 2.0], [2.0, 1.0]])


def pd_in_range(a):
    """Symmetric PD matrix with entries in [-10, 10] built from ``a``."""
    n = a.shape[0]
    m = a.T @ a / (10.2 * n) + 0.1 * np.eye(n)
    return 0.5 * (m + m.T)


@settings(max_examples=200, deadline=None)
@given(small_square())
def test_invert_is_an_involution(a):
    m = pd_in_range(a)
    assert np.abs(m).max() <= 10.0
    inv = mc.invert(m)
    assert np.max(np.abs(m @ inv - np.eye(m.shape[0]))) <= 1e-10
    np.testing.assert_allclose(mc.invert(inv), m, rtol=0, atol=1e-8)


@settings(max_examples=200, deadline=None)
@given(small_square())
def test_sampling_factor_reproduces_psd(a):
    m = a.T @ a
    m = 0.5 * (m + m.T)
    f = mc.sampling_factor(m)
    assert np.max(np.abs(f @ f.T - m)) <= 1e-8 * max(1.0, np.abs(m).max())


@settings(max_examples=200, deadline=None)
@given(small_square(), st.data())
def test_solve_general_matches_inverse(a, data):
    m = pd_in_range(a)
    v = data.draw(arrays(np.float64, (m.shape[0],), elements=st.floats(-10, 10)))
    x = mc.solve_general(m, v)
    np.testing.assert_allclose(x, mc.invert(m) @ v, rtol=0, atol=1e-9)
    assert np.max(np.abs(m @ x - v)) <= 1e-10 * max(np.max(np.abs(v)), 1e-300)
