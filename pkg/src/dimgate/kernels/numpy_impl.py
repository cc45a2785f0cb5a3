"""Pure-numpy fallback for the distance kernels.

Implements the same contract as the compiled extension: encoded row
matrices with float64 normalized numerics (NaN = missing) and int32 symbol
codes (-1 = missing).  Per-column disagreement is |a - b| for two known
numeric cells, max(v, 1 - v) against a missing numeric cell, 1.0 when both
are missing; symbols disagree 0/1 with any missing side counting as 1.
Distances are Euclidean over the disagreements, divided by sqrt(#columns).
"""
import numpy as np


def _num_sq_terms(a, q):
    """Squared numeric disagreements between rows ``a`` (2-D) and point ``q``."""
    d = np.abs(a - q)
    a_nan = np.isnan(a)
    q_nan = np.isnan(q)
    only_a = ~a_nan & q_nan
    only_q = a_nan & ~q_nan
    both = a_nan & q_nan
    if only_a.any():
        d[only_a] = np.maximum(a, 1.0 - a)[only_a]
    if only_q.any():
        d[only_q] = np.broadcast_to(np.maximum(q, 1.0 - q), a.shape)[only_q]
    d[both] = 1.0
    return d * d


def point_dists(qnum, qsym, num, sym):
    """Distances from one encoded point to every row; float64 array."""
    n = num.shape[0]
    total = num.shape[1] + sym.shape[1]
    if total == 0:
        return np.zeros(n)
    acc = np.zeros(n)
    if num.shape[1]:
        acc += _num_sq_terms(num, qnum).sum(axis=1)
    if sym.shape[1]:
        mismatch = (sym != qsym) | (sym < 0) | (qsym < 0)
        acc += mismatch.sum(axis=1).astype(np.float64)
    return np.sqrt(acc / total)


def pairwise_condensed(num, sym):
    """All pairwise distances in condensed order (0,1),(0,2),...,(n-2,n-1)."""
    n = num.shape[0]
    total = num.shape[1] + sym.shape[1]
    out = np.empty(n * (n - 1) // 2, dtype=np.float64)
    if total == 0:
        out[:] = 0.0
        return out
    pos = 0
    for i in range(n - 1):
        block = n - 1 - i
        acc = np.zeros(block)
        if num.shape[1]:
            acc += _num_sq_terms(num[i + 1:], num[i]).sum(axis=1)
        if sym.shape[1]:
            mismatch = (sym[i + 1:] != sym[i]) | (sym[i + 1:] < 0) | (sym[i] < 0)
            acc += mismatch.sum(axis=1).astype(np.float64)
        out[pos:pos + block] = np.sqrt(acc / total)
        pos += block
    return out
