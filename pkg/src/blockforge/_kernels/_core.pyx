# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: row reduction, vector reduction and group convolution
over table-encoded finite fields.  Mirrors the API of pure.py."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "compiled"


def rref(mat, add, mul, neg, inv):
    cdef cnp.ndarray[cnp.uint16_t, ndim=2] m = np.ascontiguousarray(mat, dtype=np.uint16).copy()
    cdef cnp.uint16_t[:, :] mv = m
    cdef cnp.uint16_t[:, :] addv = add
    cdef cnp.uint16_t[:, :] mulv = mul
    cdef cnp.uint16_t[:] negv = neg
    cdef cnp.uint16_t[:] invv = inv
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, lead
    cdef cnp.uint16_t scale, f, tmp
    pivots = []
    for col in range(ncols):
        if r >= nrows:
            break
        lead = -1
        for i in range(r, nrows):
            if mv[i, col]:
                lead = i
                break
        if lead < 0:
            continue
        if lead != r:
            for j in range(ncols):
                tmp = mv[r, j]
                mv[r, j] = mv[lead, j]
                mv[lead, j] = tmp
        scale = invv[mv[r, col]]
        if scale != 1:
            for j in range(ncols):
                mv[r, j] = mulv[scale, mv[r, j]]
        for i in range(nrows):
            if i == r:
                continue
            f = mv[i, col]
            if f:
                f = negv[f]
                for j in range(ncols):
                    mv[i, j] = addv[mv[i, j], mulv[f, mv[r, j]]]
        pivots.append(col)
        r += 1
    return m[:r], pivots


def reduce_vector(vec, rows, pivots, add, mul, neg, inv):
    cdef cnp.ndarray[cnp.uint16_t, ndim=1] res = np.array(vec, dtype=np.uint16, copy=True)
    cdef cnp.uint16_t[:] resv = res
    cdef cnp.uint16_t[:, :] rowsv = np.ascontiguousarray(rows, dtype=np.uint16)
    cdef cnp.uint16_t[:, :] addv = add
    cdef cnp.uint16_t[:, :] mulv = mul
    cdef cnp.uint16_t[:] negv = neg
    cdef Py_ssize_t t, j, n = res.shape[0]
    cdef cnp.uint16_t f
    cdef cnp.ndarray[cnp.uint16_t, ndim=1] coeffs = np.zeros(len(pivots), dtype=np.uint16)
    for t in range(len(pivots)):
        f = resv[<Py_ssize_t> pivots[t]]
        if f:
            coeffs[t] = f
            f = negv[f]
            for j in range(n):
                resv[j] = addv[resv[j], mulv[f, rowsv[t, j]]]
    return res, coeffs


def convolve(a, b, gtable, add, mul):
    cdef cnp.uint16_t[:] av = np.ascontiguousarray(a, dtype=np.uint16)
    cdef cnp.uint16_t[:] bv = np.ascontiguousarray(b, dtype=np.uint16)
    cdef cnp.int32_t[:, :] tv = gtable
    cdef cnp.uint16_t[:, :] addv = add
    cdef cnp.uint16_t[:, :] mulv = mul
    cdef Py_ssize_t n = av.shape[0], i, j
    cdef cnp.uint16_t ai
    cdef cnp.ndarray[cnp.uint16_t, ndim=1] out = np.zeros(n, dtype=np.uint16)
    cdef cnp.uint16_t[:] outv = out
    cdef Py_ssize_t k
    for i in range(n):
        ai = av[i]
        if ai == 0:
            continue
        for j in range(n):
            if bv[j]:
                k = tv[i, j]
                outv[k] = addv[outv[k], mulv[ai, bv[j]]]
    return out
