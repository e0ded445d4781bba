# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid-scan kernel.

Implements the same ``scan_block`` contract as ``subadd._gridscan_py`` (see
that module's docstring): absolute-index node coordinates ``x0 + i*dx``,
the working function's exact expression tree, gap ``(a*f(x)+f(y)) - f(a*x+y)``,
and strict ``<`` row-major first-occurrence argmin tracking.

Compiled with ``-ffp-contract=off`` so no multiply-add fusion perturbs the
rounding sequence; ``fabs``/``log1p``/``exp`` come from libm, matching the
interpreter's ``math`` module on this platform.
"""

from libc.math cimport exp, fabs, isfinite, log1p
from libc.stdlib cimport free, malloc

BACKEND_NAME = "compiled"


cdef inline double _f_value(double t, double mu, double sigma, double alpha,
                            double h0) noexcept nogil:
    cdef double at = fabs(t)
    cdef double g = at + log1p(at)
    cdef double z = (at - mu) / sigma
    cdef double h = exp(-(z * z))
    return g + alpha * (h - h0)


def scan_block(double a, double mu, double sigma, double alpha,
               double x0, double dx, double y0, double dy,
               Py_ssize_t i0, Py_ssize_t i1, Py_ssize_t j0, Py_ssize_t j1):
    """Scan one index block; returns ``(min_gap, best_i, best_j)`` with
    ``(-1, -1)`` when no node produced a finite value."""
    cdef Py_ssize_t ni = i1 - i0
    cdef Py_ssize_t nj = j1 - j0
    if ni <= 0 or nj <= 0:
        return float("inf"), -1, -1

    cdef double z0 = (0.0 - mu) / sigma
    cdef double h0 = exp(-(z0 * z0))

    cdef double *fy = <double *> malloc(nj * sizeof(double))
    cdef double *ys = <double *> malloc(nj * sizeof(double))
    if fy == NULL or ys == NULL:
        if fy != NULL:
            free(fy)
        if ys != NULL:
            free(ys)
        raise MemoryError("scan_block: out of memory")

    cdef double best = float("inf")
    cdef Py_ssize_t best_i = -1
    cdef Py_ssize_t best_j = -1
    cdef Py_ssize_t i, j
    cdef double x, y, fx, s, gapv
    cdef bint found = 0

    with nogil:
        for j in range(nj):
            y = y0 + (<double> (j0 + j)) * dy
            ys[j] = y
            fy[j] = _f_value(y, mu, sigma, alpha, h0)
        for i in range(ni):
            x = x0 + (<double> (i0 + i)) * dx
            fx = _f_value(x, mu, sigma, alpha, h0)
            for j in range(nj):
                s = a * x + ys[j]
                gapv = (a * fx + fy[j]) - _f_value(s, mu, sigma, alpha, h0)
                if isfinite(gapv) and gapv < best:
                    best = gapv
                    best_i = i0 + i
                    best_j = j0 + j
                    found = 1

    free(fy)
    free(ys)
    if not found:
        return float("inf"), -1, -1
    return best, best_i, best_j
