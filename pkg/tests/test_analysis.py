import numpy as np
import pytest

import memgrad as mg
from memgrad.analysis import instability_interval


def fg_root_radius(kappa, s):
    """Closed-form root radius of r^2 - (1+b)(1-s) r + b(1-s)."""
    b = mg.fg_beta(kappa)
    m = 1 - s
    disc = complex(((1 + b) * m) ** 2 - 4 * b * m)
    r1 = ((1 + b) * m + np.sqrt(disc)) / 2
    r2 = ((1 + b) * m - np.sqrt(disc)) / 2
    return max(abs(r1), abs(r2))


def test_char_poly_examples():
    np.testing.assert_array_equal(mg.char_poly(mg.theta(4, 0.1), 0.0).coeffs, [1, 0, 0, 0, 0])
    np.testing.assert_array_equal(mg.char_poly([1.0], 0.5).coeffs, [1.0, -0.5])
    p = mg.char_poly(mg.theta(2, 0.25), 0.75)
    np.testing.assert_allclose(p.coeffs, [1.0, -1.0, 0.25], rtol=1e-15)
    assert p.degree == 2


def test_char_poly_range():
    with pytest.raises(mg.InputError):
        mg.char_poly([1.0], 1.5)


def test_polynomial_spec_monic():
    with pytest.raises(mg.InputError):
        mg.PolynomialSpec(np.array([2.0, 1.0]))


def test_root_radius_simple():
    assert mg.root_radius(mg.PolynomialSpec(np.array([1.0, -0.5]))) == 0.5
    assert mg.root_radius(mg.PolynomialSpec(np.array([1.0, -1.0, 0.25]))) == pytest.approx(0.5, abs=1e-6)


@pytest.mark.parametrize("N", range(1, 9))
@pytest.mark.parametrize("kappa", [0.01, 0.1, 0.5])
def test_root_radius_repeated_root(N, kappa):
    g = mg.gamma(N, kappa)
    rho = mg.root_radius(mg.char_poly(mg.theta(N, kappa), 1 - kappa))
    assert abs(rho - g) <= 10 * g * 1e-16 ** (1 / N)


def test_root_radius_n5_scale():
    g = mg.gamma(5, 0.01)
    rho = mg.root_radius(mg.char_poly(mg.theta(5, 0.01), 0.99))
    assert abs(rho - g) <= 1e-3


def test_rho_sweep_memory_one_exact():
    rows = mg.rho_sweep(1, 0.5, 11)
    assert [r.m_value for r in rows] == list(np.linspace(0, 0.5, 11))
    assert all(r.rho == r.m_value for r in rows)
    assert max(r.rho for r in mg.rho_sweep(1, 0.2, 101)) == pytest.approx(0.8, abs=1e-15)


@pytest.mark.parametrize("N", range(1, 8))
def test_rho_sweep_starts_at_zero(N):
    assert mg.rho_sweep(N, 0.05, 3)[0].rho == 0.0


def test_rho_sweep_exceeds_one_for_memory_five():
    rows = mg.rho_sweep(5, 0.01, 2001)
    assert max(r.rho for r in rows) > 1
    lo, hi = instability_interval(rows)
    inside = [r.rho > 1 for r in rows if lo <= r.m_value <= hi]
    assert all(inside)  # contiguous


def test_rho_sweep_fg_against_closed_form():
    rows = mg.rho_sweep(2, 0.01, 2001)
    for r in rows:
        assert r.rho == pytest.approx(fg_root_radius(0.01, 1 - r.m_value), abs=1e-6)
    assert max(r.rho for r in rows) <= 1 + 1e-9
    assert instability_interval(rows) is None


def test_rho_sweep_grid_check():
    with pytest.raises(mg.InputError):
        mg.rho_sweep(2, 0.1, 1)


def test_transfer_function_memory_one():
    kappa = 0.3
    m = 1 - kappa
    G = mg.transfer_function(1, kappa)
    np.testing.assert_allclose(G.numerator, [-(1 - kappa) * m])
    np.testing.assert_allclose(G.denominator, [1.0, m])
    assert G(1.0) == pytest.approx(-(1 - kappa) * m / (1 + m), rel=1e-15)
    z = 0.3 + 0.8j
    assert G(z) == pytest.approx(-(1 - kappa) * m / (z + m))


@pytest.mark.parametrize("N", [2, 3, 5])
def test_transfer_function_structure(N):
    kappa = 0.01
    s = (1 - kappa) * mg.theta(N, kappa)
    G = mg.transfer_function(N, kappa)
    np.testing.assert_array_equal(G.denominator, np.concatenate(([1.0], s)))
    np.testing.assert_array_equal(G.numerator, -(1 - kappa) * s)
    # printed form, evaluated directly in negative powers of z
    z = 1.7 - 0.4j
    S = sum(s[j] * z ** (-j) for j in range(N))
    assert G(z) == pytest.approx(-(1 - kappa) * S / (z + S), rel=1e-12)


def test_transfer_function_char_variant_poles():
    N, kappa = 4, 0.1
    G = mg.transfer_function(N, kappa, variant="char")
    poles = G.poles()
    assert np.max(np.abs(poles - mg.gamma(N, kappa))) <= 10 * 1e-16 ** (1 / N)
    printed = mg.transfer_function(N, kappa).poles()
    assert not np.allclose(np.abs(printed), mg.gamma(N, kappa), atol=1e-3)


def test_mode_decay_memory_one_at_L():
    w = mg.mode_decay(1, 0.1, 1.0, 5)
    np.testing.assert_array_equal(w, [1, 0, 0, 0, 0, 0])


def test_mode_decay_slowest_mode_memory_one():
    w = mg.mode_decay(1, 0.1, 0.1, 20)
    np.testing.assert_allclose(w, 0.9 ** np.arange(21), rtol=1e-13)


def test_mode_decay_unstable_band_grows():
    w = mg.mode_decay(5, 0.01, 1 - 0.7, 3000)
    assert w[-1] > 1e10 * w[0]


def test_mode_decay_input_checks():
    with pytest.raises(mg.InputError):
        mg.mode_decay(3, 0.1, 0.05, 10)
    with pytest.raises(mg.InputError):
        mg.mode_decay(3, 0.1, 0.5, 2)


@pytest.mark.parametrize("N", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("m", [0.2, 0.5, 0.7, 0.95])
def test_root_radius_matches_recursion_growth(N, m):
    kappa = 0.01
    w = mg.mode_decay(N, kappa, 1 - m, 500)
    rho = mg.root_radius(mg.char_poly(mg.theta(N, kappa), m))
    # k-th root of the envelope over the second half of the run
    tail = np.max(w[400:])
    head = np.max(w[150:250])
    rate = (tail / head) ** (1 / 250)
    assert rate == pytest.approx(rho, abs=1e-2)
