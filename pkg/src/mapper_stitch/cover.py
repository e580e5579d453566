"""Uniform overlapping interval covers and their products.

With range R = max - min, resolution n, and overlap fraction p in [0, 1),
interval length is l = R / (n - (n-1)p) and interval i spans
[min + i*l*(1-p), min + i*l*(1-p) + l], so consecutive intervals overlap by
exactly p*l. Intervals are closed on both ends; boundary values belong to
both neighbors. A degenerate range (max == min) yields a single interval
widened by 1e-9 on each side rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEGENERATE_EPS = 1e-9


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    index: int

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class Cover:
    intervals: tuple[Interval, ...]
    resolution: int
    overlap: float
    range: tuple[float, float]

    @property
    def length(self) -> float:
        return self.intervals[0].hi - self.intervals[0].lo

    def bounds(self) -> np.ndarray:
        """(n, 2) array of interval [lo, hi] pairs."""
        return np.array([[iv.lo, iv.hi] for iv in self.intervals])


@dataclass(frozen=True)
class ProductCover:
    first: Cover
    second: Cover

    @property
    def cells(self) -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.first.resolution)
            for j in range(self.second.resolution)
        ]

    def cell_bounds(self, i: int, j: int):
        return self.first.intervals[i], self.second.intervals[j]


def build_cover(values, n: int, p: float) -> Cover:
    """Cover of the value range with n uniform intervals at overlap p."""
    values = np.asarray(values, dtype=np.float64)
    if values.size == 0:
        raise ValueError("cannot build a cover over empty values")
    if not np.all(np.isfinite(values)):
        raise ValueError("filter values contain non-finite entries")
    if n < 1:
        raise ValueError("resolution n must be >= 1")
    if not 0.0 <= p < 1.0:
        raise ValueError("overlap p must lie in [0, 1)")
    vmin = float(values.min())
    vmax = float(values.max())
    if vmax == vmin:
        iv = Interval(vmin - DEGENERATE_EPS, vmin + DEGENERATE_EPS, 0)
        return Cover((iv,), 1, p, (vmin, vmax))
    length = (vmax - vmin) / (n - (n - 1) * p)
    step = length * (1.0 - p)
    intervals = []
    for i in range(n):
        lo = vmin + i * step
        hi = lo + length
        if i == 0:
            lo = vmin
        if i == n - 1:
            hi = vmax  # clamp against fp rounding so max is always covered
        intervals.append(Interval(lo, hi, i))
    return Cover(tuple(intervals), n, p, (vmin, vmax))


def locate(cover: Cover, value: float) -> set[int]:
    """Indices of all intervals containing value (closed at both ends)."""
    return {iv.index for iv in cover.intervals if iv.lo <= value <= iv.hi}


def product(a: Cover, b: Cover) -> ProductCover:
    return ProductCover(a, b)


def membership_masks(cover: Cover, values) -> list[np.ndarray]:
    """Boolean membership mask per interval for a vector of filter values."""
    values = np.asarray(values, dtype=np.float64)
    return [(values >= iv.lo) & (values <= iv.hi) for iv in cover.intervals]
