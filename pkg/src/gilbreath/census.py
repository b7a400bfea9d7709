"""Frequencies of {0,2} patterns along rows and down columns of the stabilized region."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from gilbreath import _kernels
from gilbreath.bfunc import BTable
from gilbreath.triangle import DiffTriangle

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
ORIENTATIONS = (HORIZONTAL, VERTICAL)
DEFAULT_LMAX = 6
LMAX_CEILING = 20


class EligibilityMask:
    """Cells (m, n) with n >= 2, m + n <= S and m > B(n)."""

    def __init__(self, triangle: DiffTriangle, btable: BTable):
        if triangle.bound != btable.bound:
            raise ValueError(f"triangle bound {triangle.bound} != B table bound {btable.bound}")
        self.triangle = triangle
        self.btable = btable
        self.bound = triangle.bound
        # column 1 gets a sentinel that keeps it out of every row
        bvals = btable.values.copy()
        bvals[:2] = self.bound
        self.bvals = np.append(bvals, self.bound)

    def eligible(self, m: int, n: int) -> bool:
        return n >= 2 and m >= 1 and m + n <= self.bound and m > self.bvals[n]

    def column_depths(self) -> np.ndarray:
        """Eligible cell count per column, indexed by n (entries 0 and 1 are 0)."""
        n = np.arange(self.bound)
        depth = np.maximum(self.bound - n - self.bvals[: self.bound], 0)
        depth[:2] = 0
        return depth


def eligible_totals(mask: EligibilityMask) -> tuple[int, int, int]:
    """(cells, zeros, twos) over the eligible region."""
    total = int(mask.column_depths().sum())
    t = mask.triangle
    twos = 0
    for m in range(2, mask.bound):
        width = mask.bound - m
        elig = mask.bvals[1 : width + 1] < m
        if elig.any():
            twos += int(t.row_bits(m)[elig].sum())
    return total, total - twos, twos


def pattern_string(code: int, length: int) -> str:
    """First cell of the window is bit 0 and the leftmost character."""
    return "".join("2" if (code >> k) & 1 else "0" for k in range(length))


@lru_cache(maxsize=None)
def lexicographic_codes(length: int) -> tuple[int, ...]:
    return tuple(sorted(range(1 << length), key=lambda c: pattern_string(c, length)))


@dataclass(frozen=True, eq=False)
class PatternCensus:
    length: int
    orientation: str
    counts: np.ndarray

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    N = total

    def items(self) -> list[tuple[str, int]]:
        return [(pattern_string(c, self.length), int(self.counts[c])) for c in lexicographic_codes(self.length)]

    def as_dict(self) -> dict[str, int]:
        return dict(self.items())

    def ordered_counts(self) -> list[int]:
        return [c for _, c in self.items()]

    def __getitem__(self, pattern: str) -> int:
        if len(pattern) != self.length or set(pattern) - {"0", "2"}:
            raise KeyError(pattern)
        code = sum(1 << k for k, ch in enumerate(pattern) if ch == "2")
        return int(self.counts[code])


def _chunks(bound: int, parts: int) -> list[tuple[int, int]]:
    """Split rows 2..S-1 into contiguous ranges of roughly equal cell counts."""
    rows = np.arange(2, bound)
    if parts <= 1 or len(rows) <= parts:
        return [(2, bound)]
    weight = np.cumsum(bound - rows)
    cuts = np.searchsorted(weight, weight[-1] * np.arange(1, parts) / parts) + 2
    edges = [2, *sorted(set(int(c) for c in cuts) - {2, bound}), bound]
    return list(zip(edges[:-1], edges[1:]))


def census_counts(mask: EligibilityMask, lmax: int = DEFAULT_LMAX, workers: int = 1) -> np.ndarray:
    """Raw int64 counts[orientation, l, code] for every l <= lmax."""
    if not 1 <= lmax <= LMAX_CEILING:
        raise ValueError(f"lmax must lie in 1..{LMAX_CEILING}, got {lmax}")
    t = mask.triangle
    run = _kernels.census_rows

    def job(span):
        return run(t.planes, t.offsets, mask.bvals, mask.bound, lmax, span[0], span[1])

    spans = _chunks(mask.bound, workers)
    if workers <= 1 or len(spans) == 1:
        parts = [job(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, spans))
    raw = np.zeros((2, lmax + 1, 1 << lmax), dtype=np.int64)
    for p in parts:
        raw += p
    # kernels key windows by last cell in bit 0; flip to first cell in bit 0
    rev = _kernels.reversal_table(lmax)
    total = np.zeros_like(raw)
    for l in range(1, lmax + 1):
        width = 1 << l
        total[:, l, rev[l, :width]] = raw[:, l, :width]
    return total


def count_all(mask: EligibilityMask, lmax: int = DEFAULT_LMAX, workers: int = 1) -> dict[tuple[int, str], PatternCensus]:
    raw = census_counts(mask, lmax, workers)
    out = {}
    for l in range(1, lmax + 1):
        for o, orient in enumerate(ORIENTATIONS):
            out[l, orient] = PatternCensus(l, orient, raw[o, l, : 1 << l].copy())
    return out


def count_patterns(mask: EligibilityMask, length: int, orientation: str,
                   lmax: int = DEFAULT_LMAX, workers: int = 1) -> PatternCensus:
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}, got {orientation!r}")
    if not 1 <= length <= lmax:
        raise ValueError(f"length must lie in 1..{lmax}, got {length}")
    return count_all(mask, length, workers)[length, orientation]


def round_sig(x: float, digits: int) -> float:
    return float(f"{x:.{digits}g}")


def format_sig(x: float, digits: int) -> str:
    """Fixed significant figures, trailing zeros kept (1.55910, 50.0000)."""
    s = f"{x:#.{digits}g}"
    return s.rstrip(".") if "e" not in s else s


def percentages(census: PatternCensus, digits: int = 6) -> dict[str, float]:
    n = census.total
    if n == 0:
        raise ZeroDivisionError("census is empty")
    return {p: round_sig(100.0 * c / n, digits) for p, c in census.items()}
