"""Special functions used throughout the package.

Gamma (Lanczos with reflection), associated Laguerre polynomials,
Kummer's confluent hypergeometric function 1F1 and the error function.
Everything is self-contained in double precision; the inner loops of the
Kummer series and the Laguerre recurrence live in :mod:`singosc.kernels`.
"""

import math

import numpy as np

from . import kernels


class PoleError(ValueError):
    """Raised when a function is evaluated at one of its poles."""


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_SQRT_PI = math.sqrt(math.pi)


def _is_nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def _sinpi(x):
    # sin(pi x) with exact argument reduction, accurate near the integers
    n = round(x)
    r = x - n
    s = math.sin(math.pi * r)
    return -s if int(n) % 2 else s


def gamma(x):
    """Euler Gamma function of a real argument.

    Raises :class:`PoleError` at zero and the negative integers.
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"Gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (_sinpi(x) * gamma(1.0 - x))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for k in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[k] / (x + k)
    t = x + _LANCZOS_G + 0.5
    # split the power to postpone overflow for large arguments
    p = t ** (0.5 * (x + 0.5))
    return _SQRT_2PI * p * (p * math.exp(-t)) * acc


def rgamma(x):
    """Reciprocal Gamma function, zero at the poles of Gamma."""
    if _is_nonpositive_integer(float(x)):
        return 0.0
    return 1.0 / gamma(x)


def laguerre(n, alpha, x):
    """Associated Laguerre polynomial ``L_n^(alpha)(x)``.

    Works on scalars and arrays; arrays keep their shape.
    """
    if n < 0:
        raise ValueError("degree must be non-negative")
    xa = np.asarray(x, dtype=float)
    out = kernels.laguerre_recurrence(int(n), float(alpha), xa).reshape(xa.shape)
    return float(out) if out.ndim == 0 else out


def _check_b(b):
    if _is_nonpositive_integer(float(b)):
        raise PoleError(f"1F1 lower parameter {b} is a non-positive integer")


def kummer_1f1_scaled(a, b, x):
    """Kummer's function in overflow-free form.

    Returns ``(logabs, sign)`` arrays with ``1F1(a, b; x) = sign * exp(logabs)``.
    The series is summed with compensation and periodic rescaling, so the
    magnitude never overflows even where ``exp(x)`` would.
    """
    _check_b(b)
    xa = np.asarray(x, dtype=float)
    flat = xa.ravel()
    # for x < 0 the direct series alternates; a terminating series (a a
    # non-positive integer) has terms of one sign there and is kept as is
    neg = (flat < 0.0) & (not _is_nonpositive_integer(float(a)))
    mant = np.empty_like(flat)
    lsc = np.empty_like(flat)
    if (~neg).any():
        m, s = kernels.hyp1f1_series(float(a), float(b), flat[~neg])
        mant[~neg], lsc[~neg] = m, s
    if neg.any():
        # Kummer's transformation keeps the series free of cancellation
        m, s = kernels.hyp1f1_series(float(b - a), float(b), -flat[neg])
        mant[neg], lsc[neg] = m, s + flat[neg]
    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(mant)) + lsc
    sign = np.sign(mant)
    return logabs.reshape(xa.shape), sign.reshape(xa.shape)


def kummer_1f1(a, b, x):
    """Kummer's confluent hypergeometric function ``1F1(a, b; x)``.

    Raises :class:`PoleError` when ``b`` is a non-positive integer and
    ``OverflowError`` when the value is not representable; use
    :func:`kummer_1f1_scaled` there.
    """
    logabs, sign = kummer_1f1_scaled(a, b, x)
    if np.any(logabs > 709.0):
        raise OverflowError("1F1 overflows double precision; use kummer_1f1_scaled")
    out = sign * np.exp(logabs)
    return float(out) if np.ndim(out) == 0 else out


def _erf_scalar(x):
    ax = abs(x)
    if ax < 3.0:
        # non-alternating series: 2/sqrt(pi) e^{-x^2} sum 2^n x^{2n+1} / (2n+1)!!
        x2 = ax * ax
        term = ax
        total = ax
        n = 0
        while term > 1e-17 * total:
            n += 1
            term *= 2.0 * x2 / (2 * n + 1)
            total += term
        val = 2.0 / _SQRT_PI * math.exp(-x2) * total
    else:
        val = 1.0 - _erfc_cf(ax)
    return math.copysign(val, x)


def _erfc_cf(x):
    # continued fraction for x > 3 (modified Lentz)
    tiny = 1e-300
    f = x
    c = x
    d = 0.0
    k = 1
    while True:
        an = 0.5 * k
        d = x + an * d
        d = tiny if d == 0.0 else d
        c = x + an / c
        c = tiny if c == 0.0 else c
        d = 1.0 / d
        delta = c * d
        f *= delta
        k += 1
        if abs(delta - 1.0) < 1e-16 or k > 500:
            break
    return math.exp(-x * x) / (_SQRT_PI * f)


def erf(x):
    """Error function (scalars or arrays)."""
    xa = np.asarray(x, dtype=float)
    if xa.ndim == 0:
        return _erf_scalar(float(xa))
    return np.vectorize(_erf_scalar, otypes=[float])(xa)
