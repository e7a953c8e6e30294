"""Closed-form Ermakov solution driving every time dependence.

The classical pair ``q1 = cos 2(t - t0)``, ``q2 = sin 2(t - t0)`` has
Wronskian 2, and

    sigma^2 = a q1^2 + b q1 q2 + c q2^2,   b = 2 sqrt(ac - 1),

solves ``sigma'' + 4 sigma = 4 / sigma^3`` exactly. The coupling 4 on the
right-hand side is the one consistent with ``W0 = 2`` and with the
invariant coefficient ``C1 = sigma'^2 / 4 + 1 / sigma^2``; the variant with
coupling 1 fails already at ``a = c = 1`` (residual 3).
"""

from dataclasses import dataclass
import math

import numpy as np

ERMAKOV_COUPLING = 4.0
WRONSKIAN = 2.0


class ErmakovParamsError(ValueError):
    pass


@dataclass(frozen=True)
class ErmakovParams:
    """Parameters ``(a, c, t0)`` of the nodeless Ermakov solution."""

    a: float = 1.0
    c: float = 1.0
    t0: float = 0.0

    def __post_init__(self):
        a, c = float(self.a), float(self.c)
        if not (a > 0 and c > 0):
            raise ErmakovParamsError(f"need a > 0 and c > 0, got a={a}, c={c}")
        if a * c < 1.0:
            raise ErmakovParamsError(f"need a*c >= 1 so that b is real, got a*c={a * c}")
        if self.sigma_sq_min <= 0.0:
            raise ErmakovParamsError("sigma^2 has a node")

    @property
    def d(self):
        """``sqrt(ac - 1)``, half the mixing coefficient b."""
        return math.sqrt(max(self.a * self.c - 1.0, 0.0))

    @property
    def b(self):
        return 2.0 * self.d

    @property
    def sigma_sq_min(self):
        half_sum = 0.5 * (self.a + self.c)
        half_diff = 0.5 * (self.a - self.c)
        return half_sum - math.hypot(half_diff, self.d)

    @property
    def sigma_sq_max(self):
        return 0.5 * (self.a + self.c) + math.hypot(0.5 * (self.a - self.c), self.d)

    @property
    def is_stationary(self):
        return self.a == 1.0 and self.c == 1.0


def classical_pair(params, t):
    tau = np.asarray(t, dtype=float) - params.t0
    return np.cos(2.0 * tau), np.sin(2.0 * tau)


def classical_pair_dot(params, t):
    tau = np.asarray(t, dtype=float) - params.t0
    return -2.0 * np.sin(2.0 * tau), 2.0 * np.cos(2.0 * tau)


def _harmonics(params, t):
    tau = np.asarray(t, dtype=float) - params.t0
    return np.cos(4.0 * tau), np.sin(4.0 * tau)


def sigma_sq(params, t):
    cos4, sin4 = _harmonics(params, t)
    return 0.5 * (params.a + params.c) + 0.5 * (params.a - params.c) * cos4 + params.d * sin4


def sigma_sq_dot(params, t):
    cos4, sin4 = _harmonics(params, t)
    return -2.0 * (params.a - params.c) * sin4 + 4.0 * params.d * cos4


def sigma_sq_ddot(params, t):
    return -16.0 * (sigma_sq(params, t) - 0.5 * (params.a + params.c))


def sigma(params, t):
    return np.sqrt(sigma_sq(params, t))


def sigma_dot(params, t):
    return sigma_sq_dot(params, t) / (2.0 * sigma(params, t))


def sigma_ddot(params, t):
    s = sigma(params, t)
    y1 = sigma_sq_dot(params, t)
    return sigma_sq_ddot(params, t) / (2.0 * s) - y1 * y1 / (4.0 * s**3)


def ermakov_residual(params, t, coupling=ERMAKOV_COUPLING):
    """``sigma'' + 4 sigma - coupling / sigma^3`` from the analytic derivatives."""
    s = sigma(params, t)
    return sigma_ddot(params, t) + 4.0 * s - coupling / s**3


def _unwrapped_angle(params, t):
    # continuous version of arctan(d + c tan s), s = 2(t - t0)
    s = 2.0 * (np.asarray(t, dtype=float) - params.t0)
    raw = np.arctan2(params.c * np.sin(s) + params.d * np.cos(s), np.cos(s))
    return raw + 2.0 * np.pi * np.round((s - raw) / (2.0 * np.pi))


def phase_antiderivative(params, t):
    """Continuous antiderivative of ``1 / sigma^2``, zero at ``t0``."""
    return 0.5 * (_unwrapped_angle(params, t) - math.atan(params.d))


def phase_integral(params, t_from, t_to):
    """``int_{t_from}^{t_to} dt' / sigma^2(t')`` in closed form."""
    return phase_antiderivative(params, t_to) - phase_antiderivative(params, t_from)
