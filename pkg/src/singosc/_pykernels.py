"""NumPy fallback for the compiled kernels in ``_ckernels.pyx``.

Same signatures and the same summation order, vectorized across points
instead of looping in C.
"""

import numpy as np

_BIG = 1e200
_LOG_BIG = np.log(_BIG)


def hyp1f1_series(a, b, x, maxiter=100000):
    """Kummer series at every point of ``x``.

    Returns ``(mantissa, logscale)`` with ``1F1 = mantissa * exp(logscale)``.
    """
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    s = np.ones_like(x)
    comp = np.zeros_like(x)
    term = np.ones_like(x)
    lscale = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    nmin = max(0.0, -a, -b)
    for n in range(maxiter):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        r = (a + n) / (b + n) * x[idx] / (n + 1.0)
        t = term[idx] * r
        y = t - comp[idx]
        tt = s[idx] + y
        comp[idx] = (tt - s[idx]) - y
        s[idx] = tt
        term[idx] = t
        big = np.abs(tt) > _BIG
        if big.any():
            j = idx[big]
            s[j] /= _BIG
            term[j] /= _BIG
            comp[j] /= _BIG
            lscale[j] += _LOG_BIG
        t = term[idx]
        done = t == 0.0
        if n > nmin + 1:
            ar = np.abs(r)
            with np.errstate(divide="ignore", invalid="ignore"):
                tail = np.abs(t) * ar / (1.0 - ar)
            done |= (ar < 1.0) & (tail <= 1e-17 * np.abs(s[idx]))
        active[idx[done]] = False
    return s, lscale


def laguerre_recurrence(n, alpha, x):
    """Associated Laguerre polynomial by forward three-term recurrence."""
    x = np.ascontiguousarray(x, dtype=np.float64).ravel()
    l0 = np.ones_like(x)
    if n == 0:
        return l0
    l1 = 1.0 + alpha - x
    for k in range(1, n):
        l0, l1 = l1, ((2.0 * k + 1.0 + alpha - x) * l1 - (k + alpha) * l0) / (k + 1.0)
    return l1
