# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled partial-norm kernel for the Monte Carlo ball-mass estimators."""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, fabs, log

cnp.import_array()


def partial_norms_p(const double[:, ::1] samples, const double[::1] center, const double[::1] inv_weight,
                    double p, const cnp.int64_t[::1] checkpoints):
    """``out[i, j] = sum_{k < checkpoints[j]} |(samples[i, k] - center[k]) * inv_weight[k]|**p``."""
    cdef Py_ssize_t n_rows = samples.shape[0]
    cdef Py_ssize_t n_cols = samples.shape[1]
    cdef Py_ssize_t n_chk = checkpoints.shape[0]
    cdef Py_ssize_t i, k, j
    cdef double acc, d
    cdef int kind = 1 if p == 1.0 else (2 if p == 2.0 else 0)
    if center.shape[0] < n_cols or inv_weight.shape[0] < n_cols:
        raise ValueError("center and weights must cover every sampled coordinate")
    for j in range(n_chk):
        if checkpoints[j] < 1 or checkpoints[j] > n_cols or (j > 0 and checkpoints[j] < checkpoints[j - 1]):
            raise ValueError("checkpoints must be sorted dimensions in 1..n")
    out = np.empty((n_rows, n_chk), dtype=np.float64)
    cdef double[:, ::1] res = out
    with nogil:
        for i in range(n_rows):
            acc = 0.0
            j = 0
            for k in range(n_cols):
                d = fabs((samples[i, k] - center[k]) * inv_weight[k])
                if kind == 2:
                    acc = acc + d * d
                elif kind == 1:
                    acc = acc + d
                elif d > 0.0:
                    acc = acc + exp(p * log(d))
                while j < n_chk and checkpoints[j] == k + 1:
                    res[i, j] = acc
                    j = j + 1
                if j == n_chk:
                    break
    return out
