"""Correlation-dimension estimation and the redundancy gate."""
import warnings

import numpy as np
import pytest

from dimgate import (DegenerateTable, correlation_curve, gate_decision,
                     intrinsic_dimension, recommend)
from helpers import mk, uniform_cloud


def test_curve_shapes_and_monotonicity():
    t = mk(uniform_cloud(200, 2, seed=3, goal=False))
    c = correlation_curve(t, radii_count=40, sample_cap=512, seed=1)
    assert len(c.Rs) == 40
    assert len(c.Crs) == 40
    assert len(c.GR) == 39
    assert all(r > 0 for r in c.Rs)
    assert all(b >= a for a, b in zip(c.Rs, c.Rs[1:]))
    assert all(0.0 <= v <= 1.0 for v in c.Crs)
    assert all(b >= a for a, b in zip(c.Crs, c.Crs[1:]))
    assert c.n == 200


def test_curve_subsamples_to_cap():
    t = mk(uniform_cloud(300, 1, seed=5, goal=False))
    c = correlation_curve(t, sample_cap=128, seed=1)
    assert c.n == 128
    assert c.pair_count == 128 * 127 // 2


def test_curve_is_seed_deterministic():
    t = mk(uniform_cloud(300, 2, seed=6, goal=False))
    a = correlation_curve(t, sample_cap=100, seed=9)
    b = correlation_curve(t, sample_cap=100, seed=9)
    assert np.array_equal(a.Crs, b.Crs)


def test_curve_validations():
    t = mk(uniform_cloud(50, 1, seed=1, goal=False))
    with pytest.raises(ValueError):
        correlation_curve(t, radii_count=3)
    from dimgate import DataError
    with pytest.raises(DataError):
        correlation_curve(mk("Age\n1"))  # single row


def test_degenerate_table_raises_then_gates_simple():
    t = mk("Age,name\n5,x\n5,x\n5,x")
    with pytest.raises(DegenerateTable):
        correlation_curve(t)
    gate = recommend(t)
    assert gate.I == 0.0
    assert gate.drr == 1.0
    assert gate.simple_by_drr and gate.simple_by_agrawal


@pytest.mark.parametrize("dims,lo,hi", [(1, 0.7, 1.3), (2, 1.6, 2.4), (3, 2.4, 3.6)])
def test_dimension_recovers_uniform_clouds(dims, lo, hi):
    t = mk(uniform_cloud(400, dims, seed=11, goal=False))
    c = correlation_curve(t, seed=1)
    i = intrinsic_dimension(c)
    assert lo <= i <= hi


def test_dimension_requires_odd_window():
    t = mk(uniform_cloud(64, 1, seed=2, goal=False))
    c = correlation_curve(t)
    with pytest.raises(ValueError):
        intrinsic_dimension(c, smooth_window=2)


def test_all_undefined_slopes_warn_and_return_zero():
    # two distinct points: every radius bucket holds 0% or 100% of one pair
    t = mk("Age\n0\n1\n0\n1")
    c = correlation_curve(t)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        i = intrinsic_dimension(c)
    assert i == 0.0
    assert any("slope" in str(w.message).lower() for w in caught)


def test_gate_boundary_is_exact():
    g = gate_decision(4.0, 6)
    assert g.drr == pytest.approx(1 / 3)
    assert not g.simple_by_drr  # 1 - 4/6 is NOT > 1/3
    assert g.simple_by_agrawal  # 4 <= 4


def test_gate_verdicts():
    assert gate_decision(2.0, 4).simple_by_drr  # drr = 0.5
    assert not gate_decision(3.5, 4).simple_by_drr  # drr = 0.125
    g = gate_decision(5.0, 20)
    assert g.simple_by_drr  # drr = 0.75
    assert not g.simple_by_agrawal  # 5 > 4
    assert gate_decision(4.0, 20).simple_by_agrawal


def test_recommend_counts_independent_columns():
    t = mk(uniform_cloud(100, 3, seed=4))  # 3 independent + 1 goal
    gate = recommend(t)
    assert gate.R == 3
