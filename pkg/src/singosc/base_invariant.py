"""Stationary singular oscillator and its nonstationary quantum invariant.

``H1 = -d^2/dx^2 + x^2 + g(g+1)/x^2`` on the half line. The invariant

    I1(t) = -sigma^2 d^2/dx^2 + i sigma sigma' x d/dx + R(x, t) + sigma^2 g(g+1)/x^2,
    R(x, t) = i sigma sigma' / 2 + (sigma'^2 / 4 + 1 / sigma^2) x^2,

has eigenfunctions ``exp(i sigma' x^2 / 4 sigma) chi_n(x / sigma) / sqrt(sigma)``
with the time-independent eigenvalues ``4n + 2g + 3``.
"""

from dataclasses import dataclass
from typing import Callable, Optional
import math

import numpy as np

from . import ermakov as erk
from .grid import check_resolution, d1, d2
from .specfun import gamma, laguerre


@dataclass(frozen=True)
class ModelParams:
    """Coupling ``g >= 0`` of the ``g(g+1)/x^2`` barrier."""

    g: float = 1.0

    def __post_init__(self):
        if not (float(self.g) >= 0.0):
            raise ValueError(f"barrier coupling must satisfy g >= 0, got {self.g}")


@dataclass(frozen=True)
class QuantumState:
    """Invariant eigenfunction together with its Lewis-Riesenfeld phase.

    ``varphi(x, t)`` is the eigenfunction of the invariant, ``theta(t)`` the
    phase, and ``psi = exp(i theta) varphi`` solves the Schroedinger
    equation. ``extent(t)`` is a cutoff beyond which the state is
    negligible (used by the quadrature).
    """

    index: int
    eigenvalue: float
    family: str
    varphi: Callable
    theta: Callable
    extent: Callable
    label: Optional[str] = None

    def psi(self, x, t):
        return np.exp(1j * self.theta(t)) * self.varphi(x, t)

    def density(self, x, t):
        return np.abs(self.varphi(x, t)) ** 2

    __call__ = psi


def eigenvalue_base(n, g):
    """``E_n = lambda_n^(1) = 4n + 2g + 3``."""
    return 4 * n + 2 * g + 3


def norm_const(n, g):
    return math.sqrt(2.0 * gamma(n + 1) / gamma(n + g + 1.5))


def potential_v1(g, x):
    x = np.asarray(x, dtype=float)
    return x**2 + g * (g + 1) / x**2


def chi(n, g, z):
    """Real eigenfunction of ``-d^2/dz^2 + z^2 + g(g+1)/z^2``."""
    z = np.asarray(z, dtype=float)
    return norm_const(n, g) * np.exp(-0.5 * z**2) * z ** (g + 1) * laguerre(n, g + 0.5, z**2)


def chi_prime(n, g, z):
    """Analytic ``d chi_n / dz`` via ``d/dx L_n^(a)(x) = -L_{n-1}^(a+1)(x)``."""
    z = np.asarray(z, dtype=float)
    z2 = z**2
    lag = laguerre(n, g + 0.5, z2)
    dlag = -laguerre(n - 1, g + 1.5, z2) if n > 0 else 0.0
    return norm_const(n, g) * np.exp(-0.5 * z2) * z**g * ((g + 1 - z2) * lag + 2.0 * z2 * dlag)


def stationary_phi(n, g, x):
    return chi(n, g, x)


def gauge(erm, x, t):
    """``exp(i sigma' x^2 / (4 sigma)) / sqrt(sigma)``."""
    s = erk.sigma(erm, t)
    sd = erk.sigma_dot(erm, t)
    x = np.asarray(x, dtype=float)
    return np.exp(1j * sd / (4.0 * s) * x**2) / np.sqrt(s)


def varphi1(n, g, erm, x, t):
    s = erk.sigma(erm, t)
    return gauge(erm, x, t) * chi(n, g, np.asarray(x, dtype=float) / s)


def theta1(n, g, erm, t):
    """Lewis-Riesenfeld phase, anchored so that ``theta(t0) = 0``."""
    return -eigenvalue_base(n, g) * erk.phase_integral(erm, erm.t0, t)


def psi1(n, g, erm, x, t):
    return np.exp(1j * theta1(n, g, erm, t)) * varphi1(n, g, erm, x, t)


def z_extent(eigenvalue):
    # chi decays like exp(-z^2/2) beyond the turning point sqrt(lambda)
    return math.sqrt(max(eigenvalue, 0.0)) + 10.0


def base_state(n, g, erm):
    lam = eigenvalue_base(n, g)
    zc = z_extent(lam)
    return QuantumState(
        index=n,
        eigenvalue=lam,
        family="base",
        varphi=lambda x, t: varphi1(n, g, erm, x, t),
        theta=lambda t: theta1(n, g, erm, t),
        extent=lambda t: zc * float(erk.sigma(erm, t)),
        label=f"psi1_{n}",
    )


def invariant_coefficients(erm, t):
    """``(sigma^2, sigma sigma', sigma'^2/4 + 1/sigma^2)`` at time t."""
    s = float(erk.sigma(erm, t))
    sd = float(erk.sigma_dot(erm, t))
    return s * s, s * sd, 0.25 * sd * sd + 1.0 / (s * s)


def apply_invariant1(f, erm, g, grid, t, tol=None):
    """Stencil action of ``I1(t)`` on samples ``f`` of a function on ``grid``."""
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    x = grid.x
    s2, ssd, c1 = invariant_coefficients(erm, t)
    r = 0.5j * ssd + c1 * x**2
    return -s2 * d2(f, grid) + 1j * ssd * x * d1(f, grid) + (r + s2 * g * (g + 1) / x**2) * f


def hamiltonian1_apply(f, g, grid, tol=None):
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    return -d2(f, grid) + potential_v1(g, grid.x) * f
