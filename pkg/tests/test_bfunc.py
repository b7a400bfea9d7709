import math

import pytest
from hypothesis import given, settings, strategies as st

from gilbreath.bfunc import BTable, b_diffs, b_histogram, compute_b, moments, restrict, weighted_moments


def _from_golden(prefix):
    import numpy as np
    values = np.zeros(max(prefix) + 1, dtype=np.int64)
    for n, b in prefix.items():
        values[n] = b or 0
    return BTable(len(values), values)


def test_b_prefix_golden(golden, small):
    _, b, _ = small(400)
    assert b[1] is None
    for n, expect in golden["b_prefix"].items():
        assert b[n] == expect, n


def test_matches_naive(naive, small):
    _, B, _ = naive(200)
    _, b, _ = small(200)
    assert all(b[n] == B[n] for n in range(1, 200))


def test_column_index_errors(small):
    _, b, _ = small(50)
    for n in (0, 50):
        with pytest.raises(IndexError):
            b[n]


def test_provisional_flags_short_columns(small):
    _, b, _ = small(300)
    flags = b.provisional
    assert not flags[:2].any()
    assert flags[299] and not flags[100]


def test_histogram_and_diffs_from_golden_prefix(golden):
    b = _from_golden(golden["b_prefix"])
    hist = b_histogram(b, 270)
    assert sum(hist.values()) == 269
    assert list(hist) == list(range(1, max(hist) + 1))
    diffs, (neg, zero, pos) = b_diffs(b, 269)
    assert sum(diffs.values()) == neg + zero + pos == 268
    assert sum(c for k, c in diffs.items() if k < 0) == neg
    assert diffs[0] == zero
    seq = [golden["b_prefix"][n] for n in range(2, 271)]
    assert neg == sum(1 for x, y in zip(seq, seq[1:]) if y < x)
    assert pos == sum(1 for x, y in zip(seq, seq[1:]) if y > x)


def test_max_n_bounds(small):
    _, b, _ = small(50)
    with pytest.raises(ValueError):
        b_histogram(b, 1)
    with pytest.raises(ValueError):
        b_histogram(b, 50)
    with pytest.raises(ValueError):
        b_diffs(b, 49)
    b_diffs(b, 48)


def test_value_histogram_shape(golden):
    s = moments(golden["b_hist"])
    assert s.count == 69
    assert s.gamma1 == pytest.approx(1.532, abs=1e-3)
    assert s.gamma2 == pytest.approx(1.050, abs=1e-3)


def test_difference_histogram_shape(golden):
    full = moments(golden["b_diffs"])
    assert full.count == 137
    assert full.gamma1 == pytest.approx(7.654, abs=1e-3)
    assert full.gamma2 == pytest.approx(64.76, abs=1e-2)
    central = moments(restrict(golden["b_diffs"], -25, 25))
    assert central.count == 51
    assert central.gamma1 == pytest.approx(4.472, abs=1e-3)
    assert central.gamma2 == pytest.approx(21.33, abs=1e-2)


def test_shape_moments_by_hand():
    # frequencies 1, 2, 6: mean 3, deviations -2, -1, 3
    s = moments({0: 1, 1: 2, 2: 6})
    m2, m3, m4 = 14 / 3, 18 / 3, 98 / 3
    s2 = m2 * 3 / 2
    assert s.mean == 3 and s.variance == pytest.approx(7)
    assert s.gamma1 == pytest.approx(m3 / s2**1.5)
    assert s.gamma2 == pytest.approx(m4 / s2**2 - 3)


def test_missing_keys_count_as_empty_bins():
    assert moments({0: 4, 3: 1}) == moments({0: 4, 1: 0, 2: 0, 3: 1})


def test_degenerate_histograms():
    with pytest.raises(ValueError):
        moments({})
    with pytest.raises(ValueError):
        moments({5: 3})
    with pytest.raises(ValueError):
        moments({1: 2, 2: 2})
    with pytest.raises(ValueError):
        weighted_moments({4: 10})


def test_weighted_two_point():
    s = weighted_moments({-1: 5, 1: 5})
    assert (s.mean, s.variance, s.gamma1, s.gamma2, s.count) == (0.0, 1.0, 0.0, -2.0, 10)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 1000), min_size=3, max_size=40), st.integers(-50, 50))
def test_shape_moments_ignore_location(freqs, shift):
    if len(set(freqs)) < 2:
        return
    a = moments(dict(enumerate(freqs)))
    b = moments({k + shift: v for k, v in enumerate(freqs)})
    assert a == b


@settings(max_examples=50, deadline=None)
@given(st.dictionaries(st.integers(-30, 30), st.integers(1, 50), min_size=2, max_size=20), st.integers(-9, 9))
def test_weighted_moments_shift(hist, shift):
    a = weighted_moments(hist)
    b = weighted_moments({k + shift: v for k, v in hist.items()})
    assert b.mean == pytest.approx(a.mean + shift)
    assert b.variance == pytest.approx(a.variance)
    assert b.gamma1 == pytest.approx(a.gamma1, abs=1e-9)
    assert b.gamma2 == pytest.approx(a.gamma2, abs=1e-9)
    assert math.isfinite(a.gamma2)


def test_compute_b_defaults_to_first_row(small):
    t, b, _ = small(24)
    for n in range(2, 24):
        deepest = max(m for m in range(1, 25 - n) if t[m, n] > 2)
        assert b[n] == deepest
    assert compute_b(t).values.tolist() == b.values.tolist()
