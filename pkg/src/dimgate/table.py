"""Tabular datasets: typed columns, normalization, and row distance.

File convention (CSV, UTF-8, LF or CRLF, no quoting — cells must not
contain commas):

* the first record is the header;
* a column whose name ends in ``+`` is a goal to maximize, ``-`` a goal to
  minimize; every other column is an independent decision column;
* a column whose name starts with an uppercase letter is numeric, anything
  else is symbolic;
* the cell token ``?`` is a missing value.

Whitespace around cells is stripped on ingest.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .kernels import pairwise_condensed, point_dists

EPS = 1e-32


class DataError(Exception):
    """A dataset violates the format or an operation's preconditions."""


class ParseError(DataError):
    """The character stream could not be parsed as a table."""


@dataclass
class Column:
    """One typed, roled column, with the observed numeric range."""

    name: str
    kind: str  # "numeric" | "symbolic"
    role: str  # "independent" | "goal"
    w: int  # +1 maximize, -1 minimize, 0 non-goal
    lo: float | None = None
    hi: float | None = None


@dataclass
class Row:
    """One record; ``labeled`` means its goal cells are revealed."""

    cells: list
    labeled: bool = False


def column_from_name(name: str) -> Column:
    """Type and role a column purely from its header string."""
    if name.endswith("+"):
        role, w = "goal", 1
    elif name.endswith("-"):
        role, w = "goal", -1
    else:
        role, w = "independent", 0
    kind = "numeric" if name[:1].isupper() else "symbolic"
    return Column(name=name, kind=kind, role=role, w=w)


class Table:
    """Columns plus rows, with independent/goal index lists ``x`` and ``y``."""

    def __init__(self, columns: list[Column], rows: list[Row]):
        self.columns = columns
        self.rows = rows
        self.x = [i for i, c in enumerate(columns) if c.role == "independent"]
        self.y = [i for i, c in enumerate(columns) if c.role == "goal"]
        self._refresh_ranges()
        self._encoded = None

    def _refresh_ranges(self):
        for i, col in enumerate(self.columns):
            if col.kind != "numeric":
                continue
            vals = [r.cells[i] for r in self.rows if r.cells[i] is not None]
            col.lo = min(vals) if vals else None
            col.hi = max(vals) if vals else None

    def encoded(self):
        """Packed independent-column matrices for the distance kernels.

        Returns ``(num, sym, codebooks)``: normalized numerics as float64
        with NaN for missing, symbol codes as int32 with -1 for missing,
        and the per-symbolic-column code dictionaries (first-appearance
        order).  Cached; the cache assumes independent cells are immutable
        after load.
        """
        if self._encoded is None:
            num_cols = [i for i in self.x if self.columns[i].kind == "numeric"]
            sym_cols = [i for i in self.x if self.columns[i].kind == "symbolic"]
            n = len(self.rows)
            num = np.full((n, len(num_cols)), np.nan, dtype=np.float64)
            for j, ci in enumerate(num_cols):
                col = self.columns[ci]
                for r, row in enumerate(self.rows):
                    v = row.cells[ci]
                    if v is not None:
                        num[r, j] = norm(col, v)
            sym = np.full((n, len(sym_cols)), -1, dtype=np.int32)
            codebooks = []
            for j, ci in enumerate(sym_cols):
                codes: dict = {}
                for r, row in enumerate(self.rows):
                    v = row.cells[ci]
                    if v is None:
                        continue
                    if v not in codes:
                        codes[v] = len(codes)
                    sym[r, j] = codes[v]
                codebooks.append(codes)
            self._encoded = (num, sym, codebooks)
        return self._encoded

    def pairwise_x_dists(self, subset=None):
        """Condensed pairwise row distances over independent columns."""
        num, sym, _ = self.encoded()
        if subset is not None:
            num, sym = num[subset], sym[subset]
        return pairwise_condensed(np.ascontiguousarray(num), np.ascontiguousarray(sym))

    def x_dists_from(self, qnum, qsym):
        """Distances from an encoded query point to every row."""
        num, sym, _ = self.encoded()
        return point_dists(qnum, qsym, num, sym)


def load_table(source) -> Table:
    """Parse a table from a path or character stream in the CSV convention."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        with open(source, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ParseError("line 1: missing header")
    names = [tok.strip() for tok in lines[0].split(",")]
    columns = [column_from_name(name) for name in names]
    k = len(columns)
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        toks = [tok.strip() for tok in line.split(",")]
        if len(toks) != k:
            raise ParseError(f"line {lineno}: expected {k} cells, got {len(toks)}")
        cells = []
        for col, tok in zip(columns, toks):
            if tok == "?":
                cells.append(None)
            elif col.kind == "numeric":
                try:
                    cells.append(float(tok))
                except ValueError:
                    raise ParseError(
                        f"line {lineno}: column '{col.name}': non-numeric value '{tok}'"
                    ) from None
            else:
                cells.append(tok)
        rows.append(Row(cells=cells))
    return Table(columns, rows)


def format_cell(v) -> str:
    """Render one cell the way ``load_table`` will read it back."""
    if v is None:
        return "?"
    if isinstance(v, float) and v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return str(v)


def emit_table(t: Table) -> str:
    """Serialize a table to the CSV convention (inverse of ``load_table``)."""
    out = [",".join(c.name for c in t.columns)]
    for row in t.rows:
        out.append(",".join(format_cell(v) for v in row.cells))
    return "\n".join(out) + "\n"


def norm(col: Column, v: float) -> float:
    """Map a raw numeric cell onto [0, 1] by the column's observed range.

    Degenerate ranges (hi == lo, or no observed values) map to 0.5;
    out-of-range values (e.g. synthetic mutants) are clamped.
    """
    if col.lo is None or col.hi == col.lo:
        return 0.5
    z = (v - col.lo) / (col.hi - col.lo + EPS)
    if z < 0.0:
        return 0.0
    if z > 1.0:
        return 1.0
    return z


def xdist(a: Row, b: Row, t: Table) -> float:
    """Distance in [0, 1] between two rows over the independent columns.

    Numeric columns disagree by |norm(a) - norm(b)|; symbolic columns 0/1;
    a missing cell against a known one counts the maximum disagreement the
    known value allows; two missing cells count 1.  The Euclidean total is
    divided by sqrt(#independent columns).
    """
    if not t.x:
        raise DataError("no independent columns")
    acc = 0.0
    for i in t.x:
        col = t.columns[i]
        va, vb = a.cells[i], b.cells[i]
        if col.kind == "numeric":
            if va is None and vb is None:
                term = 1.0
            elif va is None:
                nv = norm(col, vb)
                term = max(nv, 1.0 - nv)
            elif vb is None:
                nv = norm(col, va)
                term = max(nv, 1.0 - nv)
            else:
                term = abs(norm(col, va) - norm(col, vb))
        else:
            if va is None or vb is None:
                term = 1.0
            else:
                term = 0.0 if va == vb else 1.0
        acc += term * term
    return math.sqrt(acc / len(t.x))
