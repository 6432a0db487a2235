import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import memgrad as mg
from memgrad.tuning import theta_table

KAPPAS = [1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9]
MEMORIES = range(1, 13)


def expand_repeated_root(root, n):
    """Coefficients of (r - root)^n by repeated convolution."""
    c = np.array([1.0])
    for _ in range(n):
        c = np.convolve(c, [1.0, -root])
    return c


def test_gamma_examples():
    assert mg.gamma(1, 0.25) == 0.75
    assert mg.gamma(2, 0.25) == 0.5
    assert mg.gamma(3, 0.001) == pytest.approx(0.9, abs=1e-15)


def test_theta_examples():
    np.testing.assert_array_equal(mg.theta(1, 0.3), [1.0])
    np.testing.assert_allclose(mg.theta(2, 0.25), [4 / 3, -1 / 3], rtol=1e-15)
    # oracle: (r - 0.9)^3 = r^3 - 2.7 r^2 + 2.43 r - 0.729, divided by -m = -0.999
    c = expand_repeated_root(0.9, 3)[1:]
    oracle = -c / 0.999
    np.testing.assert_allclose(mg.theta(3, 0.001), oracle, rtol=1e-13)
    np.testing.assert_allclose(mg.theta(3, 0.001), [2.7027027, -2.4324324, 0.7297297], atol=1e-7)


def test_fg_beta():
    assert mg.fg_beta(0.25) == pytest.approx(1 / 3, rel=1e-15)
    assert mg.fg_beta(0.01) == pytest.approx(9 / 11, rel=1e-15)
    assert 0 < mg.fg_beta(1 - 1e-12) < 1e-12


def test_rate_bound():
    assert mg.rate_bound(3, 0.1, 0) == 1.0
    assert mg.rate_bound(2, 0.25, 2) == 0.25
    assert mg.rate_bound(5, 0.01, 10) == pytest.approx((1 - 0.01 ** 0.2) ** 10, rel=1e-14)
    assert mg.rate_bound(5, 0.01, 10) == pytest.approx(6.2e-3, rel=0.02)


@pytest.mark.parametrize("bad", [0.0, 1.0, -0.5, 2.0])
def test_kappa_domain(bad):
    with pytest.raises(mg.InputError):
        mg.gamma(2, bad)
    with pytest.raises(mg.InputError):
        mg.theta(2, bad)


def test_memory_domain():
    with pytest.raises(mg.InputError):
        mg.theta(0, 0.5)


@pytest.mark.parametrize("N,kappa", list(itertools.product(MEMORIES, KAPPAS)))
def test_affine_constraint(N, kappa):
    assert abs(np.sum(mg.theta(N, kappa)) - 1.0) <= 1e-10


@pytest.mark.parametrize("N,kappa", list(itertools.product(MEMORIES, KAPPAS)))
def test_expansion_identity(N, kappa):
    m = 1 - kappa
    c = expand_repeated_root(mg.gamma(N, kappa), N)
    th = mg.theta(N, kappa)
    np.testing.assert_allclose(c[1:], -th * m, rtol=1e-10, atol=0)


@pytest.mark.parametrize("kappa", KAPPAS)
def test_memory_two_is_fast_gradient(kappa):
    b = mg.fg_beta(kappa)
    th = mg.theta(2, kappa)
    assert abs(th[0] - (1 + b)) <= 1e-12
    assert abs(th[1] + b) <= 1e-12


@pytest.mark.parametrize("kappa", KAPPAS)
def test_gamma_decreasing_in_memory(kappa):
    g = [mg.gamma(N, kappa) for N in MEMORIES]
    assert all(a > b for a, b in zip(g, g[1:]))
    assert all(0 < v < 1 for v in g)


def test_theta_table_rows():
    T = theta_table(4, 0.05)
    for j in range(1, 5):
        np.testing.assert_array_equal(T[j - 1, :j], mg.theta(j, 0.05))
        assert not np.any(T[j - 1, j:])


def test_tuning_params():
    p = mg.TuningParams.synthesise(2, 0.25)
    assert p.gamma == 0.5 and p.m == 0.75
    assert p.beta == pytest.approx(1 / 3)
    assert mg.TuningParams.synthesise(3, 0.25).beta is None


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12), st.floats(1e-8, 0.99))
def test_constraint_property(N, kappa):
    th = mg.theta(N, kappa)
    assert th.size == N
    assert abs(th.sum() - 1.0) <= 1e-9 * max(1.0, np.abs(th).max())
    assert 0 < mg.gamma(N, kappa) < 1
