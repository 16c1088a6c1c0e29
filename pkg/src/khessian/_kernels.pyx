# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_fallback`` for the reference semantics."""
import numpy as np
cimport numpy as cnp
from libc.math cimport cbrt, fabs, pow, sqrt

cnp.import_array()


def sigma_k(lams, int k):
    cdef double[::1] x = np.ascontiguousarray(lams, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], i, j
    cdef double[::1] e = np.zeros(k + 1)
    e[0] = 1.0
    for i in range(m):
        for j in range(k, 0, -1):
            e[j] += x[i] * e[j - 1]
    return e[k]


def weighted_cumsum(const double[::1] g, const double[::1] wa, const double[::1] wb):
    cdef Py_ssize_t m = g.shape[0], i
    out = np.empty(m)
    cdef double[::1] o = out
    cdef double acc = 0.0
    o[0] = 0.0
    for i in range(m - 1):
        acc += wa[i] * g[i] + wb[i] * g[i + 1]
        o[i + 1] = acc
    return out


def fixed_point_step(const double[::1] values, const double[::1] wa,
                     const double[::1] wb, const double[::1] rpow,
                     const double[::1] h, int k, double c):
    cdef Py_ssize_t m = values.shape[0], i
    cdef double inv_k = 1.0 / k
    cdef double acc = 0.0, gl, gr, q
    phi_arr = np.empty(m)
    ut_arr = np.empty(m)
    cdef double[::1] phi = phi_arr
    cdef double[::1] ut = ut_arr

    gl = _ipow(fabs(values[0]), k)
    phi[0] = 0.0
    for i in range(m - 1):
        gr = _ipow(fabs(values[i + 1]), k)
        acc += wa[i] * gl + wb[i] * gr
        gl = gr
        q = rpow[i + 1] * acc
        if q < 0.0:
            q = 0.0
        phi[i + 1] = c * _root(q, k, inv_k)

    ut[m - 1] = 0.0
    acc = 0.0
    for i in range(m - 2, -1, -1):
        acc += 0.5 * h[i] * (phi[i] + phi[i + 1])
        ut[i] = -acc
    return phi_arr, ut_arr


cdef inline double _ipow(double x, int k) nogil:
    cdef double r = 1.0
    while k > 0:
        if k & 1:
            r *= x
        x *= x
        k >>= 1
    return r


cdef inline double _root(double q, int k, double inv_k) nogil:
    if k == 1:
        return q
    if k == 2:
        return sqrt(q)
    if k == 3:
        return cbrt(q)
    if k == 4:
        return sqrt(sqrt(q))
    return pow(q, inv_k)
