# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Semantics mirror _pykernels exactly.

``p`` is the encoder exponent (``|x|**p`` forward, ``|y|**(1/p)`` back).
"""
import numpy as np

from libc.math cimport fabs, pow, rint, sqrt
from libc.stdlib cimport free, malloc


cdef void _quantize_row(const double* vk, double* vr, double* key,
                        unsigned char* used, Py_ssize_t l, long k) noexcept nogil:
    cdef Py_ssize_t i, t, best
    cdef double total = 0.0, bk = 0.0, step
    cdef long d, m
    for i in range(l):
        vr[i] = rint(vk[i])
        total += vr[i]
    d = k - <long>total
    if d == 0:
        return
    if d > 0:
        for i in range(l):
            key[i] = vr[i] - vk[i]
        m = d
        step = 1.0
    else:
        # vr >= 0 here, so sign(vr) is 0 or 1
        for i in range(l):
            key[i] = vk[i] - vr[i] - (1.0 if vr[i] > 0 else 0.0)
        m = -d
        step = -1.0
    for i in range(l):
        used[i] = 0
    # m smallest keys, lowest index first among equals (stable order)
    for t in range(m):
        best = -1
        for i in range(l):
            if not used[i] and (best < 0 or key[i] < bk):
                best = i
                bk = key[i]
        used[best] = 1
        vr[best] += step


cdef void _forward_row(const double* x, double* vk, double* vr, double* key,
                       unsigned char* used, Py_ssize_t l, long k, double enc) noexcept nogil:
    cdef Py_ssize_t j
    cdef double s = 0.0
    for j in range(l):
        if enc == 1.0:
            vk[j] = fabs(x[j])
        else:
            vk[j] = pow(fabs(x[j]), enc)
        s += vk[j]
    for j in range(l):
        vk[j] = k * (vk[j] / s)
    _quantize_row(vk, vr, key, used, l, k)


cdef double _row_error(const double* x, const double* vr, double* mag,
                       const double* table, Py_ssize_t l) noexcept nogil:
    cdef Py_ssize_t j
    cdef double ss = 0.0, nrm, e = 0.0, r, dlt
    for j in range(l):
        mag[j] = table[<long>vr[j]]
        ss += mag[j] * mag[j]
    nrm = sqrt(ss)
    for j in range(l):
        r = mag[j] / nrm
        if x[j] < 0:
            r = -r
        dlt = x[j] - r
        e += dlt * dlt
    return e


def quantize_abs_batch(va, long k):
    cdef double[:, ::1] v = np.ascontiguousarray(va, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0], l = v.shape[1], i, j
    out = np.empty((n, l), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef double* vk = <double*>malloc(3 * l * sizeof(double))
    cdef unsigned char* used = <unsigned char*>malloc(l)
    if vk == NULL or used == NULL:
        free(vk); free(used)
        raise MemoryError()
    cdef double* vr = vk + l
    cdef double* key = vk + 2 * l
    try:
        with nogil:
            for i in range(n):
                for j in range(l):
                    vk[j] = k * v[i, j]
                _quantize_row(vk, vr, key, used, l, k)
                for j in range(l):
                    o[i, j] = <long long>vr[j]
    finally:
        free(vk)
        free(used)
    return out


def quantize_batch(x, long k, double p):
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], l = xv.shape[1], i, j
    out = np.empty((n, l), dtype=np.int64)
    cdef long long[:, ::1] o = out
    cdef double* vk = <double*>malloc(3 * l * sizeof(double))
    cdef unsigned char* used = <unsigned char*>malloc(l)
    if vk == NULL or used == NULL:
        free(vk); free(used)
        raise MemoryError()
    cdef double* vr = vk + l
    cdef double* key = vk + 2 * l
    try:
        with nogil:
            for i in range(n):
                _forward_row(&xv[i, 0], vk, vr, key, used, l, k, p)
                for j in range(l):
                    o[i, j] = -<long long>vr[j] if xv[i, j] < 0 else <long long>vr[j]
    finally:
        free(vk)
        free(used)
    return out


def sq_errors_grid(x, long k, p_grid):
    cdef double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef double[::1] ps = np.ascontiguousarray(p_grid, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], l = xv.shape[1], npw = ps.shape[0], i, j, t
    out = np.empty((npw, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef double* vk = <double*>malloc((4 * l + k + 1) * sizeof(double))
    cdef unsigned char* used = <unsigned char*>malloc(l)
    if vk == NULL or used == NULL:
        free(vk); free(used)
        raise MemoryError()
    cdef double* vr = vk + l
    cdef double* key = vk + 2 * l
    cdef double* mag = vk + 3 * l
    cdef double* table = vk + 4 * l
    cdef double p
    try:
        with nogil:
            for t in range(npw):
                p = ps[t]
                for j in range(k + 1):
                    table[j] = <double>j if p == 1.0 else pow(<double>j, 1.0 / p)
                for i in range(n):
                    _forward_row(&xv[i, 0], vk, vr, key, used, l, k, p)
                    o[t, i] = _row_error(&xv[i, 0], vr, mag, table, l)
    finally:
        free(vk)
        free(used)
    return out


def sq_errors(x, long k, double p):
    return sq_errors_grid(x, k, [p])[0]
