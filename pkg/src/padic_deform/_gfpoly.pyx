# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernels for dense polynomial arithmetic over GF(q).

Same contract as _gfpoly_py; see that module for the reference semantics.
"""

from libc.stdlib cimport free, malloc

BACKEND = "compiled"


def poly_mul(list a, list b, int cap, int q, mul, add):
    cdef const int[::1] mt = mul
    cdef const int[::1] at = add
    cdef Py_ssize_t la = len(a), lb = len(b)
    if la == 0 or lb == 0:
        return []
    cdef Py_ssize_t n = la + lb - 1
    if 0 <= cap < n:
        n = cap
    if n <= 0:
        return []
    cdef int *ca = <int *> malloc(la * sizeof(int))
    cdef int *cb = <int *> malloc(lb * sizeof(int))
    cdef int *out = <int *> malloc(n * sizeof(int))
    if ca == NULL or cb == NULL or out == NULL:
        free(ca); free(cb); free(out)
        raise MemoryError()
    cdef Py_ssize_t i, j, k, jmax
    cdef int ai, bj
    try:
        for i in range(la):
            ca[i] = a[i]
        for j in range(lb):
            cb[j] = b[j]
        for k in range(n):
            out[k] = 0
        for i in range(la):
            ai = ca[i]
            if ai == 0:
                continue
            jmax = lb if lb < n - i else n - i
            for j in range(jmax):
                bj = cb[j]
                if bj == 0:
                    continue
                k = i + j
                out[k] = at[out[k] * q + mt[ai * q + bj]]
        return [out[k] for k in range(n)]
    finally:
        free(ca)
        free(cb)
        free(out)


def series_inv(list a, int prec, int q, mul, add, neg, inv):
    cdef const int[::1] mt = mul
    cdef const int[::1] at = add
    cdef const int[::1] ng = neg
    cdef const int[::1] iv = inv
    cdef Py_ssize_t la = len(a)
    if la == 0 or a[0] == 0:
        raise ZeroDivisionError("series has zero constant term")
    cdef int *ca = <int *> malloc(la * sizeof(int))
    cdef int *out = <int *> malloc(prec * sizeof(int))
    if ca == NULL or out == NULL:
        free(ca); free(out)
        raise MemoryError()
    cdef Py_ssize_t i, k, imax
    cdef int acc, ai, c0
    try:
        for i in range(la):
            ca[i] = a[i]
        c0 = iv[ca[0]]
        out[0] = c0
        for k in range(1, prec):
            acc = 0
            imax = k if k < la - 1 else la - 1
            for i in range(1, imax + 1):
                ai = ca[i]
                if ai == 0:
                    continue
                acc = at[acc * q + mt[ai * q + out[k - i]]]
            out[k] = mt[c0 * q + ng[acc]]
        return [out[k] for k in range(prec)]
    finally:
        free(ca)
        free(out)
