# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance kernels over encoded row matrices.

Both kernels work on the packed encoding produced by ``Table.encoded()``:
normalized numeric cells as float64 with NaN marking a missing value, and
symbol codes as int32 with -1 marking a missing value.  Per-column
disagreement follows the row-distance rules: |a - b| for two known numeric
cells, max(v, 1 - v) against a missing numeric cell, 1.0 when both are
missing; 0/1 equality for symbols with any missing side counting as 1.
The distance is the Euclidean norm of the disagreements divided by the
square root of the column count, so it lies in [0, 1].
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport isnan, sqrt

cnp.import_array()


cdef inline double _num_term(double a, double b) noexcept nogil:
    cdef double t
    if isnan(a):
        if isnan(b):
            return 1.0
        return b if b > 1.0 - b else 1.0 - b
    if isnan(b):
        return a if a > 1.0 - a else 1.0 - a
    t = a - b
    return -t if t < 0.0 else t


def point_dists(double[::1] qnum, int[::1] qsym,
                double[:, ::1] num, int[:, ::1] sym):
    """Distances from one encoded point to every row; float64 array."""
    cdef Py_ssize_t n = num.shape[0]
    cdef Py_ssize_t kn = num.shape[1]
    cdef Py_ssize_t ks = sym.shape[1]
    cdef double total = kn + ks
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j
    cdef double acc, t
    cdef int sa, sq
    if total == 0.0:
        out[:] = 0.0
        return out
    with nogil:
        for i in range(n):
            acc = 0.0
            for j in range(kn):
                t = _num_term(num[i, j], qnum[j])
                acc += t * t
            for j in range(ks):
                sa = sym[i, j]
                sq = qsym[j]
                if sa < 0 or sq < 0 or sa != sq:
                    acc += 1.0
            ov[i] = sqrt(acc / total)
    return out


def pairwise_condensed(double[:, ::1] num, int[:, ::1] sym):
    """All pairwise distances in condensed order (0,1),(0,2),...,(n-2,n-1)."""
    cdef Py_ssize_t n = num.shape[0]
    cdef Py_ssize_t kn = num.shape[1]
    cdef Py_ssize_t ks = sym.shape[1]
    cdef double total = kn + ks
    cdef Py_ssize_t m = n * (n - 1) // 2
    out = np.empty(m, dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i, j, c, pos
    cdef double acc, t
    cdef int sa, sb
    if total == 0.0:
        out[:] = 0.0
        return out
    with nogil:
        pos = 0
        for i in range(n):
            for j in range(i + 1, n):
                acc = 0.0
                for c in range(kn):
                    t = _num_term(num[i, c], num[j, c])
                    acc += t * t
                for c in range(ks):
                    sa = sym[i, c]
                    sb = sym[j, c]
                    if sa < 0 or sb < 0 or sa != sb:
                        acc += 1.0
                ov[pos] = sqrt(acc / total)
                pos += 1
    return out
