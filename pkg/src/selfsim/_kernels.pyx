# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pointwise kernels for residue maps.

A map is passed as four int64 arrays ``(ks, rs, kps, rps)``; the piece
``(k, r, k', r')`` sends ``n = r + 2**k * j`` to ``2**k' * j + r'``.
Undefined results are ``-1``.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _apply_one(const i64[:] ks, const i64[:] rs, const i64[:] kps,
                           const i64[:] rps, Py_ssize_t m, i64 v) nogil:
    cdef Py_ssize_t i
    cdef i64 k
    if v < 0:
        return -1
    for i in range(m):
        k = ks[i]
        if (v & ((<i64>1 << k) - 1)) == rs[i]:
            return (((v - rs[i]) >> k) << kps[i]) + rps[i]
    return -1


def apply_pieces(const i64[:] ks, const i64[:] rs, const i64[:] kps,
                 const i64[:] rps, ns):
    cdef const i64[:] src = np.ascontiguousarray(ns, dtype=np.int64)
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t m = ks.shape[0]
    out = np.empty(n, dtype=np.int64)
    cdef i64[:] dst = out
    cdef Py_ssize_t j
    with nogil:
        for j in range(n):
            dst[j] = _apply_one(ks, rs, kps, rps, m, src[j])
    return out


def first_mismatch(a, b, i64 start, i64 stop):
    cdef const i64[:] aks = a[0]
    cdef const i64[:] ars = a[1]
    cdef const i64[:] akps = a[2]
    cdef const i64[:] arps = a[3]
    cdef const i64[:] bks = b[0]
    cdef const i64[:] brs = b[1]
    cdef const i64[:] bkps = b[2]
    cdef const i64[:] brps = b[3]
    cdef Py_ssize_t ma = aks.shape[0]
    cdef Py_ssize_t mb = bks.shape[0]
    cdef i64 n
    cdef i64 found = -1
    with nogil:
        for n in range(start, stop):
            if _apply_one(aks, ars, akps, arps, ma, n) != _apply_one(bks, brs, bkps, brps, mb, n):
                found = n
                break
    return found
