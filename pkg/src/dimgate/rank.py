"""Multi-objective row comparison and the distance-to-heaven score.

Rows are compared with a continuous indicator: jumping from ``a`` to ``b``
is scored by the summed exponential of per-goal normalized differences,
and ``a`` beats ``b`` when leaving ``a`` loses more than leaving ``b``.
A full ordering of rows then scores each row by its zero-based position
divided by the ranking size ("distance to heaven"; the best row scores 0).
"""
import math
from functools import cmp_to_key

from .table import DataError, Row, Table, norm


class GoalView:
    """Direction weights and lazily normalized objectives for goal columns.

    Objective values are computed per row on demand (and memoized), so
    constructing the view never touches any row's goal cells.
    """

    def __init__(self, t: Table):
        if not t.y:
            raise DataError("no goal columns")
        for i in t.y:
            if t.columns[i].kind != "numeric":
                raise DataError(f"symbolic goal column '{t.columns[i].name}'")
        self.table = t
        self.goal_idx = list(t.y)
        self.w = [t.columns[i].w for i in t.y]
        self.n = len(t.y)
        self._memo: dict[int, tuple] = {}

    def objectives(self, row: Row) -> tuple:
        """The row's normalized goal values, in goal-column order."""
        key = id(row)
        got = self._memo.get(key)
        if got is not None:
            return got
        vals = []
        for i in self.goal_idx:
            v = row.cells[i]
            if v is None or (isinstance(v, float) and math.isnan(v)):
                raise DataError("unlabeled row in ranking")
            vals.append(norm(self.table.columns[i], v))
        out = tuple(vals)
        self._memo[key] = out
        return out


def zitzler_loss(a: Row, b: Row, g: GoalView) -> float:
    """Mean exponential loss of jumping from row ``a`` to row ``b``."""
    oa = g.objectives(a)
    ob = g.objectives(b)
    n = g.n
    s = 0.0
    for w, xa, xb in zip(g.w, oa, ob):
        s -= math.exp(w * (xa - xb) / n)
    return s / n

def better(a: Row, b: Row, g: GoalView) -> bool:
    """True iff jumping away from ``a`` loses more than jumping away from ``b``."""
    return zitzler_loss(a, b, g) < zitzler_loss(b, a, g)


def rank_rows(rows: list[Row], g: GoalView) -> list[Row]:
    """Rows sorted best-first; ties keep their original input order."""

    def cmp(i: int, j: int) -> int:
        if better(rows[i], rows[j], g):
            return -1
        if better(rows[j], rows[i], g):
            return 1
        return 0

    order = sorted(range(len(rows)), key=cmp_to_key(cmp))
    return [rows[i] for i in order]


def d2h(i: int, size: int) -> float:
    """Distance to heaven of the row at zero-based position ``i`` of ``size``."""
    if size < 1:
        raise ValueError("ranking size must be >= 1")
    if not (0 <= i < size):
        raise ValueError("rank position out of range")
    return i / size


class GlobalRanking:
    """The full-table ranking and each row's distance-to-heaven score."""

    def __init__(self, t: Table, g: GoalView | None = None):
        self.goal_view = g if g is not None else GoalView(t)
        self.order = rank_rows(t.rows, self.goal_view)
        self.size = len(self.order)
        self._pos = {id(row): k for k, row in enumerate(self.order)}
        self._row_by_index = {id(row): i for i, row in enumerate(t.rows)}

    def d2h_of(self, row: Row) -> float:
        return d2h(self._pos[id(row)], self.size)
