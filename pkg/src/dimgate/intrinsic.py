"""Fractal intrinsic-dimensionality estimate and the redundancy gate.

The estimator builds the correlation integral of pairwise row distances:
for exponentially spaced radii it counts the fraction of row pairs closer
than each radius, then reads the intrinsic dimension off the maximum
log-log slope of that curve after light smoothing.  The gate compares the
estimate ``I`` against the raw column count ``R``: the dimensionality
reduction ratio ``1 - I/R`` above one third marks a dataset where very
cheap optimizers are expected to suffice, and ``I <= 4`` is the older
absolute-threshold rule kept for comparison.
"""
import warnings
from dataclasses import dataclass

import numpy as np

from .table import DataError, Table

#: A log-log slope is kept only when both of its correlation integrals are
#: supported by more than this many row pairs; slopes estimated from fewer
#: pairs are dominated by counting noise.  When the floor would discard
#: every slope (tiny tables), the unfloored slopes are used instead.
MIN_SLOPE_SUPPORT_PAIRS = 64


class DegenerateTable(DataError):
    """All pairwise distances are zero; the estimate is fixed at 0."""


@dataclass
class CorrelationCurve:
    """Radii, correlation integrals, raw log-log slopes, and sample size.

    ``GR[k]`` is the slope between radii ``k`` and ``k+1``; entries where
    either correlation integral is zero are NaN (undefined in log space).
    """

    Rs: np.ndarray
    Crs: np.ndarray
    GR: np.ndarray
    n: int

    @property
    def pair_count(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass
class GateDecision:
    """The redundancy gate: raw dims, intrinsic estimate, and both verdicts."""

    R: int
    I: float
    drr: float
    simple_by_drr: bool
    simple_by_agrawal: bool


def correlation_curve(
    t: Table, radii_count: int = 40, sample_cap: int = 512, seed: int = 1
) -> CorrelationCurve:
    """Correlation integrals of pairwise row distances at log-spaced radii.

    Rows are subsampled without replacement to ``sample_cap`` using
    ``seed``.  Radii span [max(smallest nonzero distance, 1e-9), largest
    distance].  ``Crs[k]`` is the fraction of pairs strictly closer than
    ``Rs[k]``.
    """
    if radii_count < 4:
        raise ValueError("radii_count must be >= 4")
    if not t.x:
        raise DataError("no independent columns")
    n = len(t.rows)
    if n < 2:
        raise DataError("insufficient rows")
    rng = np.random.default_rng(seed)
    take = min(n, sample_cap)
    subset = np.sort(rng.choice(n, size=take, replace=False)) if take < n else None
    d = t.pairwise_x_dists(subset)
    if d.size == 0:
        raise DataError("insufficient rows")
    dmax = float(d.max())
    positive = d[d > 0]
    if positive.size == 0:
        raise DegenerateTable("degenerate table")
    dmin = float(positive.min())
    lo = max(dmin, 1e-9)
    Rs = np.geomspace(lo, dmax, radii_count)
    sorted_d = np.sort(d)
    Crs = np.searchsorted(sorted_d, Rs, side="left") / d.size
    GR = np.full(radii_count - 1, np.nan)
    log_rs = np.log(Rs)
    for k in range(1, radii_count):
        if Crs[k - 1] > 0 and Crs[k] > 0 and log_rs[k] > log_rs[k - 1]:
            GR[k - 1] = (np.log(Crs[k]) - np.log(Crs[k - 1])) / (log_rs[k] - log_rs[k - 1])
    return CorrelationCurve(Rs=Rs, Crs=Crs, GR=GR, n=int(take))


def intrinsic_dimension(c: CorrelationCurve, smooth_window: int = 3) -> float:
    """Maximum smoothed log-log slope of the correlation curve.

    Slopes whose correlation integrals are zero are skipped, as are slopes
    supported by too few pairs (see ``MIN_SLOPE_SUPPORT_PAIRS``).  The
    surviving slopes are smoothed with a centered moving average of width
    ``smooth_window`` (edges truncated) and the maximum is returned.
    Returns 0 with a warning when no slope is defined.
    """
    if smooth_window < 1 or smooth_window % 2 == 0:
        raise ValueError("smooth_window must be odd and >= 1")
    npairs = c.pair_count
    floor = MIN_SLOPE_SUPPORT_PAIRS / npairs if npairs else 0.0
    supported = [
        g
        for k, g in enumerate(c.GR)
        if np.isfinite(g) and c.Crs[k] > floor and c.Crs[k + 1] > floor
    ]
    if not supported:
        supported = [g for g in c.GR if np.isfinite(g)]
    if not supported:
        warnings.warn("correlation curve has no defined slopes; reporting 0")
        return 0.0
    vals = np.asarray(supported)
    half = smooth_window // 2
    smoothed = np.array(
        [vals[max(0, i - half): i + half + 1].mean() for i in range(len(vals))]
    )
    return float(smoothed.max())


def gate_decision(I: float, R: int) -> GateDecision:
    """Both gate verdicts for an intrinsic estimate against raw dims.

    The reduction-ratio test is evaluated in exact form (3I < 2R is
    algebraically ``1 - I/R > 1/3``) so boundary cases are not decided by
    division rounding.
    """
    drr = 1.0 - I / R
    return GateDecision(
        R=R,
        I=I,
        drr=drr,
        simple_by_drr=3.0 * I < 2.0 * R,
        simple_by_agrawal=I <= 4.0,
    )


def recommend(
    t: Table,
    radii_count: int = 40,
    sample_cap: int = 512,
    seed: int = 1,
    smooth_window: int = 3,
) -> GateDecision:
    """The gate decision for a table; degenerate tables count as I = 0."""
    if not t.x:
        raise DataError("no independent columns")
    R = len(t.x)
    try:
        curve = correlation_curve(t, radii_count, sample_cap, seed)
    except DegenerateTable:
        return GateDecision(R=R, I=0.0, drr=1.0, simple_by_drr=True, simple_by_agrawal=True)
    I = intrinsic_dimension(curve, smooth_window)
    return gate_decision(I, R)
