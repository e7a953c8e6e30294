"""Factorization of the invariant ``I1 = A^dagger A + eps``.

The seed ``u(z)`` solves ``-u'' + (z^2 + g(g+1)/z^2) u = eps u`` and is the
mix ``ka u1 + kb u2`` of

    u1 = exp(-z^2/2) z^(g+1) 1F1((3+2g-eps)/4, 3/2+g; z^2)
    u2 = exp(-z^2/2) z^(-g)  1F1((1-2g-eps)/4, 1/2-g; z^2)

Everything downstream uses the logarithmic derivatives of ``u``, computed
from term-wise differentiated Kummer series in overflow-free form:
``W = -(ln u)'`` and ``F = 2 W' = -2 (ln u)''``.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import ermakov as erk
from .base_invariant import invariant_coefficients, potential_v1
from .grid import check_resolution, d1, d2
from .specfun import PoleError, gamma, kummer_1f1_scaled, rgamma


class SeedConstraintError(ValueError):
    """The seed parameters violate the regularity constraints."""


class NodelessViolationError(ValueError):
    """The seed ``u(z)`` has a zero on the half line (possibly at infinity)."""


@dataclass(frozen=True)
class SeedParams:
    """Factorization energy and mixing coefficients of the seed."""

    epsilon: float
    ka: float
    kb: float


def kummer_parameters(g, epsilon):
    """``((a1, b1), (a2, b2))`` of the two Kummer functions in the seed."""
    return (
        ((3.0 + 2.0 * g - epsilon) / 4.0, 1.5 + g),
        ((1.0 - 2.0 * g - epsilon) / 4.0, 0.5 - g),
    )


def _check_poles(g):
    b2 = 0.5 - g
    if b2 <= 0 and float(b2).is_integer():
        raise PoleError(f"g = {g} makes 1/2 - g a non-positive integer; the seed is undefined")


def ratio_bound(g, epsilon):
    """Lower bound on ``ka / kb`` for a nodeless seed.

    ``-Gamma(1/2-g) Gamma(a1) / (Gamma(3/2+g) Gamma(a2))``; zero when ``a2``
    is a pole of Gamma.
    """
    (a1, b1), (a2, b2) = kummer_parameters(g, epsilon)
    return -gamma(b2) * gamma(a1) * rgamma(a2) / gamma(b1)


def asymptotic_weights(g, epsilon):
    """Coefficients of ``exp(z^2/2) z^p`` in ``u1`` and ``u2`` as ``z -> oo``."""
    (a1, b1), (a2, b2) = kummer_parameters(g, epsilon)
    return gamma(b1) * rgamma(a1), gamma(b2) * rgamma(a2)


def validate_seed(seed, g):
    """Check the closed-form constraints; raise :class:`SeedConstraintError`."""
    _check_poles(g)
    eps, ka, kb = float(seed.epsilon), float(seed.ka), float(seed.kb)
    if not eps < 2.0 * g + 3.0:
        raise SeedConstraintError(f"need epsilon < 2g+3 = {2 * g + 3}, got {eps}")
    if kb == 0.0:
        raise SeedConstraintError("need kb != 0")
    bound = ratio_bound(g, eps)
    if not ka / kb > bound:
        raise SeedConstraintError(f"need ka/kb > {bound:.12g}, got {ka / kb:.12g}")


def seed_logderivs(g, epsilon, ka, kb, z):
    """Overflow-free description of the seed at ``z > 0``.

    Returns ``(logabs, sign, d1, d2)`` with ``u = sign exp(logabs)``,
    ``d1 = (ln u)'`` and ``d2 = (ln u)'' - g / z^2``; the explicit singular
    part ``g / z^2`` of ``(ln u)''`` is kept out of ``d2`` so callers can
    cancel it analytically.
    """
    _check_poles(g)
    z = np.asarray(z, dtype=float)
    x = z * z
    lz = np.log(z)
    (a1, b1), (a2, b2) = kummer_parameters(g, epsilon)

    def triple(a, b):
        return [kummer_1f1_scaled(a + k, b + k, x) for k in range(3)]

    m1 = triple(a1, b1)
    m2 = triple(a2, b2)
    shift = (2.0 * g + 1.0) * lz
    logs = [lg + shift for lg, _ in m1] + [lg for lg, _ in m2]
    used = [ka != 0.0] * 3 + [kb != 0.0] * 3
    with np.errstate(invalid="ignore"):
        ref = np.max([np.where(np.isfinite(lg), lg, -np.inf) for lg, u in zip(logs, used) if u], axis=0)
    ref = np.where(np.isfinite(ref), ref, 0.0)
    v = [s * np.exp(lg - ref) for lg, (_, s) in zip(logs, m1 + m2)]
    r1, r1b = a1 / b1, (a1 + 1.0) / (b1 + 1.0)
    r2, r2b = a2 / b2, (a2 + 1.0) / (b2 + 1.0)
    p = 2.0 * g + 1.0

    # S = ka z^(2g+1) M1(z^2) + kb M2(z^2), all scaled by exp(-ref)
    s0 = ka * v[0] + kb * v[3]
    s1 = ka * (p / z * v[0] + 2.0 * z * r1 * v[1]) + kb * (2.0 * z * r2 * v[4])
    s2 = ka * (
        p * (p - 1.0) / x * v[0] + (4.0 * p + 2.0) * r1 * v[1] + 4.0 * x * r1 * r1b * v[2]
    ) + kb * (2.0 * r2 * v[4] + 4.0 * x * r2 * r2b * v[5])

    q1 = s1 / s0
    q2 = s2 / s0
    with np.errstate(divide="ignore"):
        logabs = -0.5 * x - g * lz + ref + np.log(np.abs(s0))
    dl1 = -z - g / z + q1
    dl2 = -1.0 + q2 - q1 * q1
    return logabs, np.sign(s0), dl1, dl2


def seed_basis(g, epsilon, z):
    """The two independent solutions ``(u1, u2)`` at ``z``."""
    lu1, s1, _, _ = seed_logderivs(g, epsilon, 1.0, 0.0, z)
    lu2, s2, _, _ = seed_logderivs(g, epsilon, 0.0, 1.0, z)
    return s1 * np.exp(lu1), s2 * np.exp(lu2)


def seed_basis_derivatives(g, epsilon, z):
    """``(u1', u2')`` at ``z``."""
    lu1, s1, p1, _ = seed_logderivs(g, epsilon, 1.0, 0.0, z)
    lu2, s2, p2, _ = seed_logderivs(g, epsilon, 0.0, 1.0, z)
    return s1 * np.exp(lu1) * p1, s2 * np.exp(lu2) * p2


def wronskian_tilde(g, epsilon, z=1.0):
    """``u1 u2' - u2 u1'`` evaluated at ``z`` (constant in ``z``).

    Both solutions grow like ``exp(z^2/2)``, so the relative rounding error
    grows like ``1e-16 exp(z^2)``: below 1e-9 only for ``z <~ 3.5``.
    """
    u1, u2 = seed_basis(g, epsilon, z)
    du1, du2 = seed_basis_derivatives(g, epsilon, z)
    return u1 * du2 - u2 * du1


def wronskian_small_z(g):
    """Value of the Wronskian from the leading powers ``z^(g+1)`` and ``z^(-g)``."""
    return -(2.0 * g + 1.0)


@dataclass(frozen=True)
class NodelessCertificate:
    """Outcome of the sign scan of ``u`` on the half line."""

    passed: bool
    z_cut: float
    sign_changes: int
    first_zero: float
    tail_growing: bool
    reason: str


def nodeless_scan(g, seed, z_min=1e-4, z_cut=12.0, n_points=20000, growth=(1.0, 1.5, 2.25)):
    """Sign scan of the seed on log-spaced points, repeated with growing cutoffs.

    A seed passes when it keeps one sign everywhere and ``ln|u|`` increases
    at the end of every scan window; a decaying tail means the zero sits at
    infinity (the constraint boundary).
    """
    total_changes = 0
    first_zero = math.inf
    tail_ok = True
    cut = z_cut
    for factor in growth:
        cut = z_cut * factor
        z = np.geomspace(z_min, cut, n_points)
        logabs, sign, dl1, _ = seed_logderivs(g, seed.epsilon, seed.ka, seed.kb, z)
        bad = ~np.isfinite(logabs) | (sign == 0)
        flips = np.flatnonzero((sign[1:] != sign[:-1]) | bad[1:])
        if flips.size:
            total_changes = max(total_changes, int(flips.size))
            first_zero = min(first_zero, float(z[flips[0] + 1]))
        tail = z > 0.8 * cut
        if not np.all(dl1[tail] > 0.0):
            tail_ok = False
    passed = total_changes == 0 and tail_ok
    if passed:
        reason = "nodeless"
    elif total_changes:
        reason = f"sign change near z={first_zero:.6g}"
    else:
        reason = "u decays at large z: zero at infinity"
    return NodelessCertificate(passed, cut, total_changes, first_zero, tail_ok, reason)


class SeedSolution:
    """A validated, nodeless seed with evaluators for ``u``, ``W`` and ``F``."""

    def __init__(self, params, g, check_constraints=True, scan=True):
        _check_poles(g)
        if check_constraints:
            validate_seed(params, g)
        self.params = params
        self.g = float(g)
        self.certificate = nodeless_scan(self.g, params) if scan else None
        if self.certificate is not None and not self.certificate.passed:
            raise NodelessViolationError(self.certificate.reason)

    def _ld(self, z):
        p = self.params
        return seed_logderivs(self.g, p.epsilon, p.ka, p.kb, z)

    def log_u(self, z):
        """``(ln|u|, sign u)``."""
        logabs, sign, _, _ = self._ld(z)
        return logabs, sign

    def u(self, z):
        logabs, sign, _, _ = self._ld(z)
        return sign * np.exp(logabs)

    def u_prime(self, z):
        logabs, sign, dl1, _ = self._ld(z)
        return sign * np.exp(logabs) * dl1

    def u_second(self, z):
        logabs, sign, dl1, dl2 = self._ld(z)
        z = np.asarray(z, dtype=float)
        return sign * np.exp(logabs) * (dl2 + self.g / z**2 + dl1 * dl1)

    def w(self, z):
        """Superpotential ``W = -u'/u``."""
        return -self._ld(z)[2]

    def w_prime(self, z):
        z = np.asarray(z, dtype=float)
        return -(self._ld(z)[3] + self.g / z**2)

    def f(self, z):
        """Deformation ``F = 2 W' = -2 (ln u)''``."""
        return 2.0 * self.w_prime(z)

    def f_regular(self, z):
        """``F + 2g / z^2``, free of the explicit ``1/z^2`` singularity."""
        return -2.0 * self._ld(z)[3]

    def riccati_residual(self, z):
        """``-W' + W^2 - z^2 - g(g+1)/z^2 + eps``."""
        z = np.asarray(z, dtype=float)
        _, _, dl1, dl2 = self._ld(z)
        g = self.g
        # -W' + W^2 = (ln u)'' + (ln u)'^2, with the g/z^2 pieces cancelled by hand
        return dl2 + dl1 * dl1 + g / z**2 - z**2 - g * (g + 1.0) / z**2 + self.params.epsilon


def superpotential_w(seed, g, z):
    return SeedSolution(seed, g).w(z)


def deformation_f(seed, g, z):
    return SeedSolution(seed, g).f(z)


def seed_u(seed, g, z):
    return SeedSolution(seed, g).u(z)


def _w_complex(sol, erm, x, t):
    s = float(erk.sigma(erm, t))
    sd = float(erk.sigma_dot(erm, t))
    return -0.5j * sd * x + sol.w(x / s)


def apply_a(f, erm, sol, grid, t, tol=None):
    """``A(t) f = sigma f' + w f``, ``w = -i sigma' x / 2 + W(x / sigma)``."""
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    s = float(erk.sigma(erm, t))
    return s * d1(f, grid) + _w_complex(sol, erm, grid.x, t) * f


def apply_a_dagger(f, erm, sol, grid, t, tol=None):
    """``A^dagger(t) f = -sigma f' + conj(w) f``."""
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    s = float(erk.sigma(erm, t))
    return -s * d1(f, grid) + np.conj(_w_complex(sol, erm, grid.x, t)) * f


def potential_v2(sol, erm, x, t):
    """``V2 = x^2 + g(g+1)/x^2 + F(x / sigma) / sigma^2``.

    Evaluated as ``x^2 + g(g-1)/x^2 + (F + 2g/z^2)/sigma^2`` so the
    cancelling barriers never get subtracted numerically.
    """
    x = np.asarray(x, dtype=float)
    s2 = np.asarray(erk.sigma_sq(erm, t), dtype=float)
    g = sol.g
    z = x / np.sqrt(s2)
    return x**2 + g * (g - 1.0) / x**2 + sol.f_regular(z) / s2


def hamiltonian2_apply(f, sol, erm, grid, t, tol=None):
    """``H2(t) f = -f'' + V2(x, t) f``."""
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    return -d2(f, grid) + potential_v2(sol, erm, grid.x, t) * f


def apply_invariant1_factorized(f, erm, sol, grid, t):
    """``A^dagger A f + eps f``."""
    return apply_a_dagger(apply_a(f, erm, sol, grid, t), erm, sol, grid, t) + sol.params.epsilon * np.asarray(f)


def apply_invariant2_factorized(f, erm, sol, grid, t):
    """``A A^dagger f + eps f``."""
    return apply_a(apply_a_dagger(f, erm, sol, grid, t), erm, sol, grid, t) + sol.params.epsilon * np.asarray(f)


def apply_invariant2(f, sol, erm, grid, t, tol=None):
    """Stencil action of ``I2(t)`` in coordinate form."""
    f = np.asarray(f, dtype=complex)
    if tol is not None:
        check_resolution(f, grid, tol)
    x = grid.x
    s2, ssd, c1 = invariant_coefficients(erm, t)
    z = x / math.sqrt(s2)
    g = sol.g
    r = 0.5j * ssd + c1 * x**2
    # g(g+1)/z^2 + F = g(g-1)/z^2 + (F + 2g/z^2)
    pot = g * (g - 1.0) / z**2 + sol.f_regular(z)
    return -s2 * d2(f, grid) + 1j * ssd * x * d1(f, grid) + (r + pot) * f
