"""Shared table-building helpers for the test suite."""
import io

import numpy as np

from dimgate import Table, load_table


def mk(text: str) -> Table:
    """Load a table from an inline CSV string (leading newline tolerated)."""
    return load_table(io.StringIO(text.strip() + "\n"))


def csv_of(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(str(v) for v in row))
    return "\n".join(lines) + "\n"


def uniform_cloud(n: int, dims: int, seed: int, goal: bool = True) -> str:
    """CSV text for n points uniform in the unit ``dims``-cube.

    With ``goal`` a minimized distance-to-corner column is appended so the
    table is rankable.
    """
    rng = np.random.default_rng(seed)
    pts = rng.random((n, dims))
    header = ",".join(f"P{j + 1}" for j in range(dims))
    rows = []
    for p in pts:
        cells = [repr(float(v)) for v in p]
        if goal:
            cells.append(repr(float(np.sqrt((p ** 2).sum()))))
        rows.append(cells)
    if goal:
        header += ",Dist-"
    return csv_of(header, rows)


def manifold_cloud(n: int, latent: int, ambient: int, seed: int) -> str:
    """CSV text for a ``latent``-dimensional surface in ``ambient`` columns.

    Every column is a smooth injective-ish function of the latent
    coordinates, so the cloud's effective dimensionality stays near
    ``latent`` while the header advertises ``ambient`` columns.  A
    minimized goal column measures distance to a fixed latent point.
    """
    rng = np.random.default_rng(seed)
    z = rng.random((n, latent))
    mix = rng.normal(size=(latent, ambient))
    phase = rng.random(ambient) * 2 * np.pi
    cols = np.tanh(z @ mix + np.sin(2 * np.pi * z @ mix + phase))
    target = rng.random(latent)
    goal = np.sqrt(((z - target) ** 2).sum(axis=1))
    header = ",".join(f"C{j + 1}" for j in range(ambient)) + ",Gap-"
    rows = [[repr(float(v)) for v in row] + [repr(float(g))]
            for row, g in zip(cols, goal)]
    return csv_of(header, rows)
