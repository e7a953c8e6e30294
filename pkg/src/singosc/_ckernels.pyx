# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: rescaled Kummer series and Laguerre recurrence."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, log

cnp.import_array()

cdef double _BIG = 1e200
cdef double _LOG_BIG = 460.51701859880914  # log(1e200)


cdef inline void _hyp1f1_one(double a, double b, double x, int maxiter,
                             double *mant, double *logscale, int *nterms) nogil:
    cdef double s = 1.0, comp = 0.0, term = 1.0, r, y, tt
    cdef double lscale = 0.0
    cdef double nmin = 0.0
    cdef int n
    if -a > nmin:
        nmin = -a
    if -b > nmin:
        nmin = -b
    for n in range(maxiter):
        r = (a + n) / (b + n) * x / (n + 1.0)
        term = term * r
        y = term - comp
        tt = s + y
        comp = (tt - s) - y
        s = tt
        if fabs(s) > _BIG:
            s = s / _BIG
            term = term / _BIG
            comp = comp / _BIG
            lscale = lscale + _LOG_BIG
        if term == 0.0:
            break
        if n > nmin + 1 and fabs(r) < 1.0:
            if fabs(term) * fabs(r) / (1.0 - fabs(r)) <= 1e-17 * fabs(s):
                break
    mant[0] = s
    logscale[0] = lscale
    nterms[0] = n + 1


def hyp1f1_series(double a, double b, x, int maxiter=100000):
    """Kummer series at every point of ``x``.

    Returns ``(mantissa, logscale)`` with ``1F1 = mantissa * exp(logscale)``.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t i, m = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] mant = np.empty(m)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lsc = np.empty(m)
    cdef double mv, lv
    cdef int nt
    with nogil:
        for i in range(m):
            _hyp1f1_one(a, b, xs[i], maxiter, &mv, &lv, &nt)
            mant[i] = mv
            lsc[i] = lv
    return mant, lsc


def laguerre_recurrence(int n, double alpha, x):
    """Associated Laguerre polynomial by forward three-term recurrence."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xs = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t i, m = xs.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef double l0, l1, l2, xv
    cdef int k
    with nogil:
        for i in range(m):
            xv = xs[i]
            l0 = 1.0
            if n == 0:
                out[i] = l0
                continue
            l1 = 1.0 + alpha - xv
            for k in range(1, n):
                l2 = ((2.0 * k + 1.0 + alpha - xv) * l1 - (k + alpha) * l0) / (k + 1.0)
                l0 = l1
                l1 = l2
            out[i] = l1
    return out
