import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from conftest import bumps, make_grid
from singosc import base_invariant as base
from singosc.ermakov import ErmakovParams, sigma
from singosc.grid import GridResolutionWarning, SpatialGrid, grid_inner, rayleigh_quotient, relative_residual
from singosc.verify import inner_product, time_derivative


def test_model_params_validation():
    with pytest.raises(ValueError):
        base.ModelParams(-0.1)
    assert base.ModelParams(0.0).g == 0.0


def test_eigenvalue_examples():
    assert base.eigenvalue_base(0, 0) == 3
    assert base.eigenvalue_base(2, 1) == 13
    for g in (0, 1, 2.5):
        for n in range(10):
            assert base.eigenvalue_base(n + 1, g) - base.eigenvalue_base(n, g) == 4


def test_norm_const_examples():
    assert base.norm_const(0, 1) == pytest.approx(math.sqrt(2 / (0.75 * math.sqrt(math.pi))), rel=1e-14)
    assert base.norm_const(0, 1) == pytest.approx(1.2265, abs=1e-4)
    assert base.norm_const(0, 0) == pytest.approx(math.sqrt(4 / math.sqrt(math.pi)), rel=1e-14)


@pytest.mark.parametrize("g", [0.0, 1.0, 2.0])
@pytest.mark.parametrize("n", range(6))
def test_chi_normalized_scipy_oracle(n, g):
    val, _ = quad(lambda z: base.chi(n, g, z) ** 2, 0, np.inf, epsabs=1e-13, limit=200)
    assert val == pytest.approx(1.0, abs=1e-9)


def test_chi_small_z_power():
    z = np.array([1e-4, 2e-4])
    c = base.chi(0, 1.0, z)
    assert c[1] / c[0] == pytest.approx(4.0, rel=1e-6)


def test_chi_maximum_location():
    z = np.linspace(0.5, 3.0, 250001)
    assert z[np.argmax(base.chi(0, 1.0, z))] == pytest.approx(math.sqrt(2.0), abs=1e-5)


def _zeros(f, z):
    s = np.sign(f)
    idx = np.flatnonzero(s[1:] * s[:-1] < 0)
    return 0.5 * (z[idx] + z[idx + 1])


@pytest.mark.parametrize("g", [0.0, 1.0, 2.0])
def test_zero_count_and_interlacing(g):
    z = np.linspace(1e-3, 12.0, 200001)
    for n in range(6):
        zn = _zeros(base.chi(n, g, z), z)
        zn1 = _zeros(base.chi(n + 1, g, z), z)
        assert len(zn) == n and len(zn1) == n + 1
        for k in range(n):
            assert zn1[k] < zn[k] < zn1[k + 1]


def test_chi_prime_finite_difference():
    z = np.linspace(0.3, 6.0, 50)
    h = 1e-6
    for n in range(4):
        fd = (base.chi(n, 2.0, z + h) - base.chi(n, 2.0, z - h)) / (2 * h)
        np.testing.assert_allclose(base.chi_prime(n, 2.0, z), fd, atol=2e-8)


def test_varphi_stationary_limit():
    erm = ErmakovParams(1.0, 1.0)
    x = np.linspace(0.05, 8, 300)
    for n in range(4):
        v = base.varphi1(n, 1.0, erm, x, 1.234)
        np.testing.assert_allclose(v, base.stationary_phi(n, 1.0, x), atol=1e-14)
        assert np.all(v.imag == 0)


def test_varphi_modulus(erm_a2c1):
    x = np.linspace(0.05, 6, 100)
    t = 0.8
    s = sigma(erm_a2c1, t)
    np.testing.assert_allclose(np.abs(base.varphi1(2, 1.0, erm_a2c1, x, t)) ** 2,
                               base.chi(2, 1.0, x / s) ** 2 / s, rtol=1e-13)


@pytest.mark.parametrize("t", [0.0, 0.4, 1.3])
def test_varphi_unit_norm(erm_a2c1, t):
    st = base.base_state(3, 1.0, erm_a2c1)
    assert inner_product(st, st, t).real == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("g", [1.0, 2.0])
def test_invariant1_eigen_residual(erm_a2c1, grid_a2c1, g):
    for n in range(6):
        for t in (0.1, 0.7, 1.9):
            f = base.varphi1(n, g, erm_a2c1, grid_a2c1.x, t)
            If = base.apply_invariant1(f, erm_a2c1, g, grid_a2c1, t)
            assert relative_residual(If, base.eigenvalue_base(n, g) * f, f, grid_a2c1) < 1e-6


def test_invariant1_stationary_equals_hamiltonian():
    erm = ErmakovParams(1.0, 1.0)
    grid = make_grid(erm)
    for n in range(4):
        f = base.stationary_phi(n, 1.0, grid.x) + 0j
        lhs = base.apply_invariant1(f, erm, 1.0, grid, 0.5)
        assert relative_residual(lhs, base.eigenvalue_base(n, 1.0) * f, f, grid) < 1e-8
        assert relative_residual(lhs, base.hamiltonian1_apply(f, 1.0, grid), f, grid) < 1e-12


def test_invariant1_linearity(erm_a2c1, grid_a2c1):
    f, h = bumps(1.0, grid_a2c1, 2)
    al, be = 0.3 - 1.1j, 2.5
    lhs = base.apply_invariant1(al * f + be * h, erm_a2c1, 1.0, grid_a2c1, 0.6)
    rhs = al * base.apply_invariant1(f, erm_a2c1, 1.0, grid_a2c1, 0.6) + be * base.apply_invariant1(h, erm_a2c1, 1.0, grid_a2c1, 0.6)
    # stencil rounding is amplified by 1/h^2
    assert relative_residual(lhs, rhs, f, grid_a2c1) < 1e-9


def test_invariant1_hermitian_and_r_sign(erm_a2c1, grid_a2c1):
    # the +i sigma sigma'/2 term in R makes I1 symmetric; the opposite sign does not
    x = grid_a2c1.x
    f = np.exp(-((x - 3) ** 2) / 0.18 + 0.7j * x)
    h = np.exp(-((x - 3.4) ** 2) / 0.18 - 0.3j * x)
    t = 0.6

    def asym(op):
        return abs(grid_inner(h, op(f), grid_a2c1) - grid_inner(op(h), f, grid_a2c1))

    op = lambda v: base.apply_invariant1(v, erm_a2c1, 1.0, grid_a2c1, t)
    s2, ssd, _ = base.invariant_coefficients(erm_a2c1, t)
    flipped = lambda v: op(v) - 1j * ssd * v
    assert asym(op) < 1e-10
    assert asym(flipped) > 1e-2


def test_theta1_stationary():
    erm = ErmakovParams(1.0, 1.0, 0.5)
    for n in range(4):
        assert base.theta1(n, 1.0, erm, 2.5) == pytest.approx(-base.eigenvalue_base(n, 1.0) * 2.0, rel=1e-13)


@pytest.mark.parametrize("n", range(4))
def test_schroedinger_residual_psi1(erm_a2c1, grid_a2c1, n):
    t = 0.77
    st = base.base_state(n, 1.0, erm_a2c1)
    psi = st.psi(grid_a2c1.x, t)
    dpsi = time_derivative(lambda tt: st.psi(grid_a2c1.x, tt), t)
    assert relative_residual(1j * dpsi, base.hamiltonian1_apply(psi, 1.0, grid_a2c1), psi, grid_a2c1) < 1e-5


def test_equal_time_orthonormality(erm_a2c1):
    states = [base.base_state(n, 1.0, erm_a2c1) for n in range(6)]
    for t in (0.2, 1.1):
        gram = np.array([[inner_product(a, b, t) for b in states] for a in states])
        assert np.max(np.abs(gram - np.eye(6))) < 1e-8


def test_rayleigh_quotient_time_independent(erm_a2c1, grid_a2c1):
    for n in (0, 3):
        rq = []
        for t in np.linspace(0.0, 1.5, 10):
            f = base.varphi1(n, 1.0, erm_a2c1, grid_a2c1.x, t)
            rq.append(rayleigh_quotient(f, base.apply_invariant1(f, erm_a2c1, 1.0, grid_a2c1, t), grid_a2c1))
        assert (max(rq) - min(rq)) / base.eigenvalue_base(n, 1.0) < 1e-6


def test_norm_conservation(erm_a2c1):
    st = base.base_state(2, 1.0, erm_a2c1)
    norms = [inner_product(st, st, t).real for t in np.linspace(0, 3, 8)]
    assert max(norms) - min(norms) < 1e-9


def test_unequal_time_overlap_nonzero(erm_a2c1):
    s0 = base.base_state(0, 1.0, erm_a2c1)
    s1 = base.base_state(1, 1.0, erm_a2c1)
    x = np.linspace(1e-3, 15, 30001)
    best = 0.0
    for t1, t2 in ((0.0, 0.5), (0.3, 1.2), (1.0, 0.1)):
        ov = np.trapezoid(np.conj(s0.psi(x, t1)) * s1.psi(x, t2), x)
        best = max(best, abs(ov))
    assert best > 1e-6


def test_coarse_grid_warns(erm_a2c1):
    grid = SpatialGrid.with_spacing(0.05, 10.0, 0.25, order=8)
    f = base.varphi1(5, 1.0, erm_a2c1, grid.x, 0.3)
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        base.apply_invariant1(f, erm_a2c1, 1.0, grid, 0.3, tol=1e-6)
    assert any(issubclass(w.category, GridResolutionWarning) for w in rec)
