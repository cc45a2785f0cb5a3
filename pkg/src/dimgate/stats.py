"""Nonparametric comparison of result samples.

``cliffs_delta`` measures how often one sample's values beat another's;
``scott_knott`` clusters named samples into statistically distinct rank
groups by recursive best-split partitioning, accepting a split only when
the two halves differ by at least a small Cliff's-delta effect.
"""
from dataclasses import dataclass
from statistics import fmean

import numpy as np

from .table import DataError

SMALL_EFFECT = 0.147


@dataclass
class Sample:
    """A named batch of result values (e.g. one treatment's scores)."""

    label: str
    values: list[float]


@dataclass
class RankedSample:
    """One sample after ranking: same-rank samples are indistinguishable."""

    rank: int
    label: str
    median: float
    iqr: float
    values: list[float]


def cliffs_delta(xs, ys) -> float:
    """How often xs exceeds ys, minus the reverse, in [-1, 1].

    0 means the samples interleave evenly; +1 means every x beats every y.
    """
    xs = list(xs)
    ys = list(ys)
    if not xs or not ys:
        raise DataError("cliffs_delta needs non-empty samples")
    gt = lt = 0
    for x in xs:
        for y in ys:
            if x > y:
                gt += 1
            elif x < y:
                lt += 1
    return (gt - lt) / (len(xs) * len(ys))


def _values(samples: list[Sample]) -> list[float]:
    return [v for s in samples for v in s.values]


def _split(samples: list[Sample]) -> list[list[Sample]]:
    """Recursively partition a median-sorted sample list into rank groups."""
    if len(samples) <= 1:
        return [samples]
    all_vals = _values(samples)
    mean_all = fmean(all_vals)
    n_all = len(all_vals)
    best_e = -1.0
    best_i = 1
    for i in range(1, len(samples)):
        l1 = _values(samples[:i])
        l2 = _values(samples[i:])
        e = (len(l1) / n_all) * (fmean(l1) - mean_all) ** 2 \
            + (len(l2) / n_all) * (fmean(l2) - mean_all) ** 2
        if e > best_e:
            best_e = e
            best_i = i
    l1 = _values(samples[:best_i])
    l2 = _values(samples[best_i:])
    if abs(cliffs_delta(l1, l2)) >= SMALL_EFFECT:
        return _split(samples[:best_i]) + _split(samples[best_i:])
    return [samples]


def scott_knott(samples: list[Sample], larger_better: bool = False) -> list[RankedSample]:
    """Cluster samples into contiguous ranks, rank 1 being the best group.

    Samples are ordered best-median-first (ties broken by label), then
    recursively split wherever the between-group variance is largest,
    keeping a split only if the halves differ by a non-negligible
    Cliff's delta.  Every sample in a group shares the group's rank.
    """
    if not samples:
        raise DataError("no samples to rank")
    for s in samples:
        if not s.values:
            raise DataError(f"empty sample '{s.label}'")
    medians = {s.label: float(np.median(s.values)) for s in samples}
    if larger_better:
        ordered = sorted(samples, key=lambda s: (-medians[s.label], s.label))
    else:
        ordered = sorted(samples, key=lambda s: (medians[s.label], s.label))
    out: list[RankedSample] = []
    for rank, group in enumerate(_split(ordered), start=1):
        for s in group:
            vals = np.asarray(s.values, dtype=np.float64)
            iqr = float(np.percentile(vals, 75) - np.percentile(vals, 25))
            out.append(RankedSample(rank=rank, label=s.label,
                                    median=medians[s.label], iqr=iqr,
                                    values=list(s.values)))
    return out
