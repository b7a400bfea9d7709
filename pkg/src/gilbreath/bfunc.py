"""B(n): the deepest row of column n holding a value greater than 2."""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from gilbreath.triangle import DiffTriangle

DEFAULT_MARGIN = 100


@dataclass(frozen=True, eq=False)
class BTable:
    """values[n] = B(n) for 1 <= n <= S-1, with 0 marking an absent entry."""

    bound: int
    values: np.ndarray
    stable_margin: int = DEFAULT_MARGIN

    def __getitem__(self, n: int) -> int | None:
        if not 1 <= n < self.bound:
            raise IndexError(f"column {n} outside 1..{self.bound - 1}")
        v = int(self.values[n])
        return v or None

    @property
    def columns(self) -> np.ndarray:
        return np.arange(1, self.bound)

    @property
    def provisional(self) -> np.ndarray:
        """True where the column ends fewer than stable_margin rows below B(n)."""
        n = np.arange(self.bound)
        flag = (self.values > 0) & (self.bound - n - self.values < self.stable_margin)
        flag[0] = False
        return flag


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    gamma1: float
    gamma2: float
    count: int


def compute_b(t: DiffTriangle, stable_margin: int = DEFAULT_MARGIN) -> BTable:
    values = np.zeros(t.bound, dtype=np.int64)
    values[2:] = 1  # d(1, n) = p_n > 2
    sel = (t.exc_n >= 2) & (t.exc_v > 2)
    np.maximum.at(values, t.exc_n[sel], t.exc_m[sel])
    values.flags.writeable = False
    return BTable(t.bound, values, stable_margin)


def _check_max_n(b: BTable, max_n: int, reach: int) -> None:
    if not 2 <= max_n <= b.bound - reach:
        raise ValueError(f"max_n must lie in 2..{b.bound - reach}, got {max_n}")


def b_histogram(b: BTable, max_n: int) -> dict[int, int]:
    """{k: #{2 <= n <= max_n : B(n) = k}} for k = 1..max B, zero counts included."""
    _check_max_n(b, max_n, 1)
    tally = np.bincount(b.values[2 : max_n + 1])
    return {k: int(tally[k]) for k in range(1, len(tally))}


def b_diffs(b: BTable, max_n: int) -> tuple[dict[int, int], tuple[int, int, int]]:
    """Tally of B(n+1) - B(n) over 2 <= n <= max_n.

    The histogram spans -(M-1)..M-1 where M is the largest B involved.  The
    triple counts differences (< 0, == 0, > 0).
    """
    _check_max_n(b, max_n, 2)
    seq = b.values[2 : max_n + 2]
    d = np.diff(seq)
    span = int(seq.max()) - 1
    tally = np.bincount(d + span, minlength=2 * span + 1)
    hist = {k - span: int(tally[k]) for k in range(2 * span + 1)}
    return hist, (int((d < 0).sum()), int((d == 0).sum()), int((d > 0).sum()))


def restrict(histogram: Mapping[int, int], lo: int, hi: int) -> dict[int, int]:
    return {k: histogram.get(k, 0) for k in range(lo, hi + 1)}


def moments(histogram: Mapping[int, int]) -> MomentSummary:
    """Shape of a bar chart: moments of the bin frequencies.

    Bins run over every integer between the smallest and largest key, empty
    ones counted as zero.  Central moments are population moments, scaled by
    the Bessel-corrected standard deviation:
    gamma1 = m3 / s**3 and gamma2 = m4 / s**4 - 3.
    """
    if not histogram:
        raise ValueError("empty histogram")
    lo, hi = min(histogram), max(histogram)
    freq = np.array([histogram.get(k, 0) for k in range(lo, hi + 1)], dtype=np.float64)
    k = len(freq)
    if k < 2:
        raise ValueError("need at least two bins")
    mean = math.fsum(freq) / k
    dev = freq - mean
    m2 = math.fsum(dev**2) / k
    if m2 == 0:
        raise ValueError("all bins equal; shape moments undefined")
    s2 = m2 * k / (k - 1)
    m3 = math.fsum(dev**3) / k
    m4 = math.fsum(dev**4) / k
    return MomentSummary(mean, s2, m3 / s2**1.5, m4 / s2**2 - 3.0, k)


def weighted_moments(histogram: Mapping[int, int]) -> MomentSummary:
    """Population moments of the values, each weighted by its count."""
    keys = np.array(list(histogram), dtype=np.float64)
    w = np.array(list(histogram.values()), dtype=np.float64)
    total = w.sum()
    if total < 2:
        raise ValueError("need a total count of at least 2")
    mean = float((w * keys).sum() / total)
    dev = keys - mean
    m2 = float((w * dev**2).sum() / total)
    if m2 == 0:
        raise ValueError("single-valued distribution; moments undefined")
    m3 = float((w * dev**3).sum() / total)
    m4 = float((w * dev**4).sum() / total)
    return MomentSummary(mean, m2, m3 / m2**1.5, m4 / m2**2 - 3.0, int(total))
