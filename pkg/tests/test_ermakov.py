import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from singosc.ermakov import (
    ErmakovParams,
    ErmakovParamsError,
    classical_pair,
    classical_pair_dot,
    ermakov_residual,
    phase_antiderivative,
    phase_integral,
    sigma,
    sigma_dot,
    sigma_sq,
)

RNG = np.random.default_rng(11)

admissible = st.tuples(st.floats(0.2, 12.0), st.floats(0.2, 12.0), st.floats(-3.0, 3.0)).filter(
    lambda p: p[0] * p[1] >= 1.0
)


@pytest.mark.parametrize("a, c", [(0.0, 1.0), (1.0, -1.0), (0.5, 1.0)])
def test_invalid_parameters(a, c):
    with pytest.raises(ErmakovParamsError):
        ErmakovParams(a, c)


def test_classical_pair_values():
    p = ErmakovParams(2.0, 1.0, 0.3)
    assert classical_pair(p, 0.3) == pytest.approx((1.0, 0.0))
    q1, q2 = classical_pair(p, 0.3 + math.pi / 4)
    assert q1 == pytest.approx(0.0, abs=1e-15) and q2 == pytest.approx(1.0)


def test_classical_wronskian():
    p = ErmakovParams(2.0, 1.0, 0.0)
    t = RNG.uniform(-5, 5, 10)
    q1, q2 = classical_pair(p, t)
    d1, d2 = classical_pair_dot(p, t)
    np.testing.assert_allclose(q1 * d2 - d1 * q2, 2.0, atol=1e-12)


def test_sigma_sq_examples():
    assert np.all(sigma_sq(ErmakovParams(1.0, 1.0), np.linspace(0, 3, 9)) == 1.0)
    assert sigma_sq(ErmakovParams(2.0, 1.0), 0.0) == pytest.approx(2.0)
    t = np.linspace(0, math.pi / 2, 200001)
    p = ErmakovParams(2.0, 1.0)
    assert p.sigma_sq_min == pytest.approx(1.5 - math.sqrt(1.25), rel=1e-14)
    assert np.min(sigma_sq(p, t)) == pytest.approx(0.3819660, abs=1e-7)


def test_sigma_sq_matches_quadratic_form():
    p = ErmakovParams(3.0, 2.0, 0.4)
    t = RNG.uniform(-4, 4, 20)
    q1, q2 = classical_pair(p, t)
    np.testing.assert_allclose(sigma_sq(p, t), p.a * q1**2 + p.b * q1 * q2 + p.c * q2**2, rtol=1e-14)


def test_sigma_dot_examples():
    assert np.all(sigma_dot(ErmakovParams(1.0, 1.0), np.linspace(0, 3, 9)) == 0.0)
    assert sigma_dot(ErmakovParams(2.0, 1.0), 0.0) == pytest.approx(math.sqrt(2.0), rel=1e-14)


@given(admissible, st.floats(-5.0, 5.0))
def test_sigma_dot_finite_difference(pars, t):
    p = ErmakovParams(*pars)
    h = 1e-5
    fd = (sigma(p, t + h) - sigma(p, t - h)) / (2 * h)
    assert abs(sigma_dot(p, t) - fd) < 1e-8 * max(1.0, p.sigma_sq_max)


@pytest.mark.parametrize("a, c", [(1, 1), (2, 1), (1, 2), (3, 2)])
def test_ermakov_residual_adopted_variant(a, c):
    p = ErmakovParams(a, c, 0.0)
    t = RNG.uniform(-10, 10, 100)
    assert np.max(np.abs(ermakov_residual(p, t))) < 1e-10


def test_printed_variant_fails_in_stationary_case():
    assert ermakov_residual(ErmakovParams(1.0, 1.0), 0.7, coupling=1.0) == pytest.approx(3.0)


def test_ermakov_residual_against_ode_integration():
    # integrate sigma'' = -4 sigma + 4/sigma^3 from the closed-form initial data
    from scipy.integrate import solve_ivp

    p = ErmakovParams(2.0, 1.0, 0.0)
    sol = solve_ivp(lambda t, y: [y[1], -4 * y[0] + 4 / y[0] ** 3], (0, 3), [sigma(p, 0.0), sigma_dot(p, 0.0)],
                    rtol=1e-11, atol=1e-12, dense_output=True)
    t = np.linspace(0, 3, 50)
    np.testing.assert_allclose(sol.sol(t)[0], sigma(p, t), atol=1e-8)


@given(admissible, st.floats(-4.0, 4.0))
def test_residual_invariant_under_t0_shift(pars, shift):
    a, c, t0 = pars
    t = np.linspace(-2, 2, 11)
    r1 = ermakov_residual(ErmakovParams(a, c, t0), t)
    r2 = ermakov_residual(ErmakovParams(a, c, t0 + shift), t + shift)
    np.testing.assert_allclose(r1, r2, atol=1e-9)


@given(admissible)
def test_sigma_sq_positive_and_periodic(pars):
    p = ErmakovParams(*pars)
    t = np.linspace(p.t0, p.t0 + math.pi / 2, 10000)
    assert np.all(sigma_sq(p, t) > 0)
    np.testing.assert_allclose(sigma_sq(p, t + math.pi / 2), sigma_sq(p, t), atol=1e-12 * p.sigma_sq_max)


def test_phase_integral_stationary():
    p = ErmakovParams(1.0, 1.0)
    for T in (0.3, 2.0, 17.5):
        assert phase_integral(p, 0.0, T) == pytest.approx(T, rel=1e-13)


def test_phase_integral_against_quadrature():
    p = ErmakovParams(2.0, 1.0)
    ref, _ = quad(lambda t: 1.0 / sigma_sq(p, t), 0.0, math.pi, epsabs=1e-13, epsrel=1e-13, limit=200)
    assert phase_integral(p, 0.0, math.pi) == pytest.approx(ref, abs=1e-9)


@given(admissible, st.floats(-6.0, 6.0), st.floats(-6.0, 6.0))
def test_phase_integral_quadrature_oracle(pars, t1, t2):
    p = ErmakovParams(*pars)
    ref, _ = quad(lambda t: 1.0 / sigma_sq(p, t), t1, t2, epsabs=1e-12, epsrel=1e-12, limit=500)
    assert phase_integral(p, t1, t2) == pytest.approx(ref, abs=1e-9 * max(1.0, abs(ref)))


@given(admissible, st.floats(-6.0, 6.0), st.floats(-6.0, 6.0))
def test_phase_integral_additive(pars, t1, t2):
    p = ErmakovParams(*pars)
    assert phase_integral(p, 0.0, t1) + phase_integral(p, t1, t2) == pytest.approx(
        phase_integral(p, 0.0, t2), abs=1e-10)


@given(admissible)
def test_phase_monotone(pars):
    p = ErmakovParams(*pars)
    t = np.linspace(-10, 10, 20001)
    assert np.all(np.diff(phase_antiderivative(p, t)) > 0)


def test_phase_derivative_is_inverse_sigma_sq():
    p = ErmakovParams(3.0, 2.0, 0.2)
    t = RNG.uniform(-5, 5, 100)
    h = 1e-5
    fd = (phase_antiderivative(p, t + h) - phase_antiderivative(p, t - h)) / (2 * h)
    np.testing.assert_allclose(fd, 1.0 / sigma_sq(p, t), atol=1e-7)


def test_phase_anchor():
    p = ErmakovParams(2.0, 1.0, 0.9)
    assert phase_antiderivative(p, 0.9) == 0.0
