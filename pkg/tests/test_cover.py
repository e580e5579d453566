"""Interval covers: construction, location, products, invariants."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import mapper_stitch as ms


def test_zero_overlap_partition():
    cov = ms.build_cover([0.0, 10.0], 5, 0.0)
    bounds = [(iv.lo, iv.hi) for iv in cov.intervals]
    assert bounds == [(0, 2), (2, 4), (4, 6), (6, 8), (8, 10)]


def test_closed_form_length():
    cov = ms.build_cover([0.0, 1.0], 2, 0.5)
    assert cov.length == pytest.approx(2 / 3, abs=1e-12)
    assert cov.intervals[0].lo == 0.0
    assert cov.intervals[0].hi == pytest.approx(2 / 3, abs=1e-12)
    assert cov.intervals[1].lo == pytest.approx(1 / 3, abs=1e-12)
    assert cov.intervals[1].hi == 1.0


def test_single_interval():
    cov = ms.build_cover([0.0, 1.0], 1, 0.3)
    assert cov.resolution == 1
    assert (cov.intervals[0].lo, cov.intervals[0].hi) == (0.0, 1.0)


def test_degenerate_range_widens():
    cov = ms.build_cover([2.0, 2.0, 2.0], 4, 0.2)
    assert cov.resolution == 1
    assert cov.intervals[0].lo == pytest.approx(2.0 - 1e-9)
    assert cov.intervals[0].hi == pytest.approx(2.0 + 1e-9)
    assert ms.locate(cov, 2.0) == {0}


def test_build_cover_errors():
    with pytest.raises(ValueError):
        ms.build_cover([], 3, 0.1)
    with pytest.raises(ValueError):
        ms.build_cover([0, 1], 0, 0.1)
    with pytest.raises(ValueError):
        ms.build_cover([0, 1], 3, 1.0)
    with pytest.raises(ValueError):
        ms.build_cover([0, np.nan], 3, 0.1)


def test_locate_shared_endpoint():
    cov = ms.build_cover([0.0, 4.0], 2, 0.0)
    assert ms.locate(cov, 2.0) == {0, 1}
    assert ms.locate(cov, -1.0) == set()
    assert ms.locate(cov, 0.0) == {0}


def test_locate_overlap_interior():
    cov = ms.build_cover([0.0, 1.0], 2, 0.5)
    assert ms.locate(cov, 0.5) == {0, 1}


def test_product_cells():
    a = ms.build_cover([0.0, 1.0], 3, 0.1)
    b = ms.build_cover([0.0, 1.0], 3, 0.1)
    prod = ms.product(a, b)
    assert len(prod.cells) == 9
    single = ms.product(ms.build_cover([0, 1], 1, 0.0),
                        ms.build_cover([2, 3], 1, 0.0))
    assert single.cells == [(0, 0)]
    iva, ivb = single.cell_bounds(0, 0)
    assert (iva.lo, iva.hi, ivb.lo, ivb.hi) == (0.0, 1.0, 2.0, 3.0)


def test_product_membership_is_conjunction():
    a = ms.build_cover([0.0, 1.0], 2, 0.5)
    b = ms.build_cover([0.0, 4.0], 2, 0.0)
    prod = ms.product(a, b)
    for x, y in [(0.5, 2.0), (0.1, 0.0), (0.9, 3.7)]:
        for i, j in prod.cells:
            iva, ivb = prod.cell_bounds(i, j)
            member = iva.contains(x) and ivb.contains(y)
            assert member == (i in ms.locate(a, x) and j in ms.locate(b, y))


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=40),
    st.integers(1, 12),
    st.floats(0.0, 0.95),
)
def test_cover_invariants(values, n, p):
    values = np.asarray(values)
    cov = ms.build_cover(values, n, p)
    # coverage: every input value lands in at least one interval
    for v in values:
        assert ms.locate(cov, float(v)), f"value {v} not covered"
    if cov.resolution == 1:
        return
    length = cov.length
    lows = [iv.lo for iv in cov.intervals]
    assert all(b > a for a, b in zip(lows, lows[1:])), "lows must increase"
    scale = max(1.0, abs(cov.range[0]), abs(cov.range[1]))
    for a, b in zip(cov.intervals, cov.intervals[1:]):
        overlap = a.hi - b.lo
        assert overlap == pytest.approx(p * length, abs=1e-12 * scale)
        assert b.hi - a.hi > 0
    if p < 0.5:
        for a, b in zip(cov.intervals, cov.intervals[2:]):
            assert a.hi <= b.lo + 1e-12 * scale, "non-consecutive must be disjoint"
