"""Pattern frequencies against the equiprobable model.

Each of the 2**l patterns should occur about E = N / 2**l times, the counts
spread binomially with standard deviation sigma' = 2**-l sqrt((2**l - 1) N).
The goodness of fit compares cumulative tallies O_j = #{n_i < E + j sigma'}
against 2**l Phi(j) for j = -2, -1, 0, 1, 2 and a tail point, with Yates'
continuity correction.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from gilbreath.census import HORIZONTAL, ORIENTATIONS, PatternCensus

# The tail term of the cumulative sum is taken at j = 3, which reproduces the
# published chi-square values; pass math.inf for the literal limit.
TAIL_POINT = 3.0
DEGREES_OF_FREEDOM = 5
_STEPS = (-2, -1, 0, 1, 2)


def phi(x: float) -> float:
    """Standard normal CDF."""
    if x == math.inf:
        return 1.0
    if x == -math.inf:
        return 0.0
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def sigma_expected(length: int, n: int) -> float:
    return 2.0**-length * math.sqrt((2**length - 1) * n)


def sigma_observed(counts: Sequence[int]) -> float:
    """Sample standard deviation (divisor k - 1)."""
    k = len(counts)
    if k < 2:
        raise ValueError("need at least two counts")
    mean = math.fsum(counts) / k
    return math.sqrt(math.fsum((c - mean) ** 2 for c in counts) / (k - 1))


def _edges(expected: float, sigma: float) -> list[float]:
    return [expected + j * sigma for j in _STEPS]


def deviation_bins(counts: Sequence[int], expected: float, sigma: float) -> tuple[int, ...]:
    """Counts falling in (-inf,-2s'), [-2s',-s'), [-s',0), [0,s'), [s',2s'), [2s',inf) around E."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    bins = [0] * 6
    edges = _edges(expected, sigma)
    for c in counts:
        bins[sum(1 for e in edges if c >= e)] += 1
    return tuple(bins)


def chi_square_yates(counts: Sequence[int], length: int, n: int | None = None,
                     tail: float = TAIL_POINT) -> float:
    if n is None:
        n = sum(counts)
    if n <= 0:
        raise ValueError("N must be positive")
    k = 2**length
    expected = n / k
    sigma = sigma_expected(length, n)
    chi2 = 0.0
    for j in (*_STEPS, tail):
        if j == math.inf:
            observed = len(counts)
        else:
            edge = expected + j * sigma
            observed = sum(1 for c in counts if c < edge)
        e = k * phi(j)
        chi2 += (abs(observed - e) - 0.5) ** 2 / e
    return chi2


def _gamma_series(a: float, x: float) -> float:
    # lower regularized P(a, x), valid for x < a + 1
    term = total = 1.0 / a
    ap = a
    for _ in range(10_000):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * 1e-16:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cfrac(a: float, x: float) -> float:
    # upper regularized Q(a, x) by modified Lentz, valid for x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        d = tiny if abs(d) < tiny else d
        c = b + an / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x)."""
    if a <= 0:
        raise ValueError("a must be positive")
    if x < 0:
        raise ValueError("x must be non-negative")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _gamma_series(a, x)
    return _gamma_cfrac(a, x)


def chi2_p_value(chi2: float, df: int) -> float:
    """Upper tail of the chi-square distribution."""
    if df < 1:
        raise ValueError("df must be at least 1")
    if chi2 < 0:
        raise ValueError("chi2 must be non-negative")
    return min(1.0, max(0.0, gamma_q(df / 2.0, chi2 / 2.0)))


@dataclass(frozen=True)
class DeviationSummary:
    length: int
    orientation: str  # "" when both orientations coincide (l = 1)
    n: int
    expected_mean: float
    sigma_expected: float
    sigma_observed: float
    bins: tuple[int, ...]

    @property
    def ratio(self) -> float:
        return self.sigma_observed / self.sigma_expected


@dataclass(frozen=True)
class ChiSquareRow:
    length: int
    orientation: str
    chi2: float
    p_value: float


@dataclass(frozen=True)
class ChiSquareReport:
    rows: tuple[ChiSquareRow, ...]
    total: float
    total_p_value: float
    df: int
    total_df: int


def summarize(census: PatternCensus, orientation: str | None = None) -> DeviationSummary:
    counts = census.ordered_counts()
    n = census.total
    expected = n / 2**census.length
    sp = sigma_expected(census.length, n)
    return DeviationSummary(
        length=census.length,
        orientation=census.orientation if orientation is None else orientation,
        n=n,
        expected_mean=expected,
        sigma_expected=sp,
        sigma_observed=sigma_observed(counts),
        bins=deviation_bins(counts, expected, sp),
    )


def full_report(censuses: Mapping[tuple[int, str], PatternCensus],
                tail: float = TAIL_POINT) -> tuple[list[DeviationSummary], ChiSquareReport]:
    """Per-test deviation summaries and chi-square results.

    Length 1 is a single test (both orientations see the same cells); each
    longer length contributes a horizontal and a vertical test.
    """
    lmax = max(l for l, _ in censuses)
    tests: list[tuple[PatternCensus, str]] = [(censuses[1, HORIZONTAL], "")]
    for l in range(2, lmax + 1):
        tests.extend((censuses[l, o], o) for o in ORIENTATIONS)

    summaries, rows = [], []
    for census, orient in tests:
        summaries.append(summarize(census, orient))
        chi2 = chi_square_yates(census.ordered_counts(), census.length, census.total, tail)
        rows.append(ChiSquareRow(census.length, orient, chi2, chi2_p_value(chi2, DEGREES_OF_FREEDOM)))
    total = math.fsum(r.chi2 for r in rows)
    total_df = DEGREES_OF_FREEDOM * len(rows)
    report = ChiSquareReport(tuple(rows), total, chi2_p_value(total, total_df), DEGREES_OF_FREEDOM, total_df)
    return summaries, report
