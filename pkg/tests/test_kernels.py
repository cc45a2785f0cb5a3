"""Distance-kernel backends: agreement, missing-cell rules, ordering."""
import numpy as np
import pytest

from dimgate import kernels
from dimgate.kernels import numpy_impl
from helpers import mk


def _random_encoding(seed, n=60, kn=3, ks=2, missing=0.2):
    rng = np.random.default_rng(seed)
    num = rng.random((n, kn))
    num[rng.random((n, kn)) < missing] = np.nan
    sym = rng.integers(0, 3, size=(n, ks)).astype(np.int32)
    sym[rng.random((n, ks)) < missing] = -1
    return np.ascontiguousarray(num), np.ascontiguousarray(sym)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_backends_agree_pairwise(seed):
    num, sym = _random_encoding(seed)
    a = numpy_impl.pairwise_condensed(num, sym)
    b = kernels.pairwise_condensed(num, sym)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


@pytest.mark.parametrize("seed", [4, 5])
def test_backends_agree_point(seed):
    num, sym = _random_encoding(seed)
    q_num, q_sym = num[0].copy(), sym[0].copy()
    a = numpy_impl.point_dists(q_num, q_sym, num, sym)
    b = kernels.point_dists(q_num, q_sym, num, sym)
    np.testing.assert_allclose(a, b, rtol=0, atol=1e-12)


def test_condensed_order_matches_pair_enumeration():
    num = np.array([[0.0], [0.25], [0.5], [1.0]])
    sym = np.zeros((4, 0), dtype=np.int32)
    d = kernels.pairwise_condensed(num, sym)
    expect = [abs(a - b) for i, a in enumerate(num[:, 0])
              for b in num[i + 1:, 0]]
    np.testing.assert_allclose(d, expect)


def test_numeric_missing_rules():
    # one numeric column: known 0.75 vs missing -> max(v, 1-v) = 0.75
    num = np.array([[0.75], [np.nan], [np.nan]])
    sym = np.zeros((3, 0), dtype=np.int32)
    d = kernels.pairwise_condensed(num, sym)
    assert d[0] == pytest.approx(0.75)  # known vs missing
    assert d[2] == pytest.approx(1.0)  # missing vs missing


def test_symbolic_missing_always_mismatches():
    num = np.zeros((3, 0), dtype=np.float64)
    sym = np.array([[0], [-1], [-1]], dtype=np.int32)
    d = kernels.pairwise_condensed(num, sym)
    assert list(d) == [1.0, 1.0, 1.0]


def test_distance_is_root_mean_square_of_terms():
    num = np.array([[0.0, 0.0], [1.0, 1.0]])
    sym = np.zeros((2, 0), dtype=np.int32)
    d = kernels.pairwise_condensed(num, sym)
    assert d[0] == pytest.approx(1.0)
    num2 = np.array([[0.0, 0.0], [1.0, 0.0]])
    d2 = kernels.pairwise_condensed(num2, sym)
    assert d2[0] == pytest.approx(np.sqrt(0.5))


def test_mixed_kinds_average_over_all_columns():
    num = np.array([[0.0], [1.0]])
    sym = np.array([[0], [0]], dtype=np.int32)
    d = kernels.pairwise_condensed(np.ascontiguousarray(num),
                                   np.ascontiguousarray(sym))
    assert d[0] == pytest.approx(np.sqrt(1.0 / 2.0))


def test_table_pairwise_uses_independent_columns_only():
    t = mk("Age,Weight-\n0,100\n10,900")
    d = t.pairwise_x_dists()
    assert d.shape == (1,)
    assert d[0] == pytest.approx(1.0)


def test_backend_flag_is_reported():
    assert kernels.BACKEND in ("native", "python")
