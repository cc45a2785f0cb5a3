"""Two-class likelihood model over labeled rows, and the acquisition score.

The model is a naive Bayes classifier with two classes ("best" vs "rest"):
Gaussian densities over normalized numeric columns and m-estimate
frequencies over symbolic columns, with Laplace-style priors.  The
acquisition score turns the two class likelihoods into a preference for
which unlabeled row to evaluate next, steered by ``q``: 0 favors rows the
model is confident are best (exploit), 1 favors rows the model cannot yet
separate (explore), and values in between blend the two.
"""
import math
from dataclasses import dataclass

from .table import EPS, DataError, Row, Table, norm

SCORE_CAP = 1e30
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass
class _ColumnStats:
    """Per-class statistics for one independent column."""

    mean: float | None = None  # numeric columns
    sd: float | None = None
    freq: dict | None = None  # symbolic columns


@dataclass
class _ClassSide:
    count: int
    cols: dict  # column index -> _ColumnStats


@dataclass
class ClassStats:
    """Trained per-class per-column statistics over independent columns."""

    best: _ClassSide
    rest: _ClassSide
    table: Table

    def side(self, c: str) -> _ClassSide:
        if c == "best":
            return self.best
        if c == "rest":
            return self.rest
        raise ValueError(f"unknown class '{c}'")


def _train_side(rows: list[Row], t: Table) -> _ClassSide:
    cols = {}
    for i in t.x:
        col = t.columns[i]
        if col.kind == "numeric":
            vals = [norm(col, r.cells[i]) for r in rows if r.cells[i] is not None]
            if vals:
                mean = sum(vals) / len(vals)
                var = sum((v - mean) ** 2 for v in vals) / len(vals)
                cols[i] = _ColumnStats(mean=mean, sd=math.sqrt(var))
            else:
                cols[i] = _ColumnStats()
        else:
            freq: dict = {}
            for r in rows:
                v = r.cells[i]
                if v is not None:
                    freq[v] = freq.get(v, 0) + 1
            cols[i] = _ColumnStats(freq=freq)
    return _ClassSide(count=len(rows), cols=cols)


def train(best: list[Row], rest: list[Row], t: Table) -> ClassStats:
    """Fit per-class statistics over the independent columns.

    Missing cells are skipped.  Both classes must be non-empty.
    """
    if not best or not rest:
        raise DataError("empty class")
    return ClassStats(best=_train_side(best, t), rest=_train_side(rest, t), table=t)


def loglike(s: ClassStats, row: Row, c: str, M: int, k: int = 1, m: int = 2) -> float:
    """Log prior plus per-column log likelihood of the row under class ``c``.

    The prior is (count + k)/(M + 2k).  Numeric columns contribute a
    Gaussian density at the normalized cell (class standard deviation
    floored additively); symbolic columns an m-estimate frequency.
    Densities are floored at 1e-32 before the log; missing cells
    contribute nothing.
    """
    side = s.side(c)
    prior = (side.count + k) / (M + 2 * k)
    total = math.log(prior)
    for i in s.table.x:
        v = row.cells[i]
        if v is None:
            continue
        col = s.table.columns[i]
        st = side.cols[i]
        if col.kind == "numeric":
            if st.mean is None:
                continue  # no observed values for this column in this class
            sd = st.sd + EPS
            z = (norm(col, v) - st.mean) / sd
            like = math.exp(-0.5 * z * z) / (sd * _SQRT_2PI)
        else:
            count = st.freq.get(v, 0)
            like = (count + m * prior) / (side.count + m)
        total += math.log(max(like, 1e-32))
    return total


def likelihood_pair(s: ClassStats, row: Row, M: int, k: int = 1, m: int = 2):
    """Normalized (b, r) likelihoods of the row; they sum to 1."""
    lb = loglike(s, row, "best", M, k, m)
    lr = loglike(s, row, "rest", M, k, m)
    top = max(lb, lr)
    eb = math.exp(lb - top)
    er = math.exp(lr - top)
    z = eb + er
    return eb / z, er / z


def acquire(b: float, r: float, q: float) -> float:
    """Preference score (b + r*q) / |b*q - r + eps|, capped at 1e30."""
    score = (b + r * q) / abs(b * q - r + EPS)
    return min(score, SCORE_CAP)
