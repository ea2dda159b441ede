"""Pure-python (numpy) implementations of the hot kernels.

All field elements are table-encoded as integers 0..q-1.  Each kernel takes
the field's lookup tables explicitly: `add` and `mul` are (q, q) uint16
arrays, `neg` and `inv` are (q,) uint16 arrays with inv[0] = 0 as a sentinel.
The compiled backend in _core.pyx implements the same signatures.
"""

import numpy as np

BACKEND = "pure"


def rref(mat, add, mul, neg, inv):
    """Reduced row echelon form over a table-encoded finite field.

    Returns (rows, pivots): `rows` holds the nonzero echelon rows, `pivots`
    the pivot column of each row, strictly increasing.
    """
    mat = np.ascontiguousarray(mat, dtype=np.uint16).copy()
    nrows, ncols = mat.shape
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(mat[r:, col])[0]
        if hits.size == 0:
            continue
        lead = r + hits[0]
        if lead != r:
            mat[[r, lead]] = mat[[lead, r]]
        scale = inv[mat[r, col]]
        if scale != 1:
            mat[r] = mul[scale, mat[r]]
        other = np.nonzero(mat[:, col])[0]
        other = other[other != r]
        if other.size:
            factors = neg[mat[other, col]]
            mat[other] = add[mat[other], mul[factors[:, None], mat[r][None, :]]]
        pivots.append(col)
        r += 1
    return mat[:r], pivots


def reduce_vector(vec, rows, pivots, add, mul, neg, inv):
    """Reduce `vec` against echelon `rows`; return (residual, coeffs).

    coeffs[t] is the multiple of rows[t] subtracted, so that
    vec = sum_t coeffs[t]*rows[t] + residual.
    """
    res = np.array(vec, dtype=np.uint16, copy=True)
    coeffs = np.zeros(len(pivots), dtype=np.uint16)
    for t, col in enumerate(pivots):
        f = res[col]
        if f:
            coeffs[t] = f
            res = add[res, mul[neg[f], rows[t]]]
    return res, coeffs


def convolve(a, b, gtable, add, mul):
    """Group-algebra product of dense coefficient vectors.

    gtable is the group multiplication table; c[gtable[i, j]] += a[i]*b[j].
    Each row of gtable is a permutation, so scatter writes never collide.
    """
    a = np.asarray(a, dtype=np.uint16)
    b = np.asarray(b, dtype=np.uint16)
    out = np.zeros(a.shape[0], dtype=np.uint16)
    for i in np.nonzero(a)[0]:
        idx = gtable[i]
        out[idx] = add[out[idx], mul[a[i], b]]
    return out
