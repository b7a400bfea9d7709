"""The region m + n <= S of the iterated absolute-difference triangle over the primes.

Row 1 is kept as integers (the primes).  Every later row is one bit per cell
(0 -> value 0, 1 -> value 2) plus a sparse exception list holding every cell
whose value is neither 0 nor 2, including the whole first column.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np

from gilbreath import _kernels
from gilbreath.primes import PrimeTable, first_k_primes

DEFAULT_BOUND = 30151
SNAPSHOT_MAGIC = b"GILB1"


def row_offsets(bound: int) -> np.ndarray:
    """offsets[m] = first byte of row m in the plane buffer (rows 2..S-1)."""
    offsets = np.zeros(bound + 1, dtype=np.int64)
    if bound > 2:
        widths = bound - np.arange(2, bound, dtype=np.int64)
        offsets[3:] = np.cumsum((widths + 7) >> 3)
    return offsets


@dataclass(frozen=True, eq=False)
class DiffTriangle:
    bound: int
    first_row: np.ndarray
    planes: np.ndarray
    offsets: np.ndarray
    exc_m: np.ndarray
    exc_n: np.ndarray
    exc_v: np.ndarray

    @property
    def element_count(self) -> int:
        return self.bound * (self.bound - 1) // 2

    @property
    def exception_count(self) -> int:
        return len(self.exc_m)

    @cached_property
    def _keys(self) -> np.ndarray:
        return self.exc_m * (self.bound + 1) + self.exc_n

    def row_bits(self, m: int) -> np.ndarray:
        width = self.bound - m
        return np.unpackbits(self.planes[self.offsets[m] : self.offsets[m + 1]], count=width, bitorder="little")

    def row(self, m: int) -> np.ndarray:
        """Decoded values d(m, 1..S-m)."""
        if not 1 <= m < self.bound:
            raise IndexError(f"row {m} outside 1..{self.bound - 1}")
        if m == 1:
            return self.first_row.copy()
        values = self.row_bits(m).astype(np.int64) * 2
        lo, hi = np.searchsorted(self.exc_m, [m, m + 1])
        values[self.exc_n[lo:hi] - 1] = self.exc_v[lo:hi]
        return values

    def __getitem__(self, mn: tuple[int, int]) -> int:
        return element(self, *mn)


def build(primes: PrimeTable, bound: int = DEFAULT_BOUND) -> DiffTriangle:
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    if primes.limit < bound - 1:
        raise ValueError(f"need {bound - 1} primes for bound {bound}, table holds {primes.limit}")
    offsets = row_offsets(bound)
    planes = np.zeros(int(offsets[-1]), dtype=np.uint8)
    first = primes.values[: bound - 1].astype(np.int64)

    exc = []
    row = first
    packed = None
    stable_from = bound
    for m in range(2, bound):
        width = bound - m
        if packed is None:
            row = np.abs(np.diff(row))
            odd = np.flatnonzero((row != 0) & (row != 2))
            if odd.size:
                exc.append((np.full(odd.size, m, dtype=np.int64), odd + 1, row[odd]))
            bits = np.packbits(row == 2, bitorder="little")
            # closed under the recurrence from here: col 1 stays 1, the rest stays in {0, 2}
            if odd.size == 1 and odd[0] == 0 and row[0] == 1:
                packed = bits
                stable_from = m + 1
        else:
            packed = _kernels.xor_step(packed, width)
            bits = packed
        planes[offsets[m] : offsets[m] + len(bits)] = bits

    if stable_from < bound:
        tail = np.arange(stable_from, bound, dtype=np.int64)
        exc.append((tail, np.ones_like(tail), np.ones_like(tail)))
    if exc:
        exc_m, exc_n, exc_v = (np.concatenate(parts) for parts in zip(*exc))
    else:
        exc_m = exc_n = exc_v = np.empty(0, dtype=np.int64)
    return DiffTriangle(bound, first, planes, offsets, exc_m, exc_n, exc_v)


def element(t: DiffTriangle, m: int, n: int) -> int:
    if m < 1 or n < 1 or m + n > t.bound:
        raise IndexError(f"({m}, {n}) outside the region m + n <= {t.bound}")
    if m == 1:
        return int(t.first_row[n - 1])
    key = m * (t.bound + 1) + n
    keys = t._keys
    i = int(np.searchsorted(keys, key))
    if i < len(keys) and keys[i] == key:
        return int(t.exc_v[i])
    pos = n - 1
    return 2 * ((int(t.planes[t.offsets[m] + (pos >> 3)]) >> (pos & 7)) & 1)


def first_column(t: DiffTriangle) -> np.ndarray:
    """d(m, 1) for m = 2..S-1."""
    ms = np.arange(2, t.bound)
    col = 2 * (t.planes[t.offsets[ms]] & 1).astype(np.int64)
    sel = t.exc_n == 1
    col[t.exc_m[sel] - 2] = t.exc_v[sel]
    return col


def verify_gilbreath(t: DiffTriangle) -> tuple[bool, int | None]:
    """(True, None) iff d(m, 1) = 1 for every 2 <= m <= S-1, else (False, first bad row)."""
    bad = np.flatnonzero(first_column(t) != 1)
    if bad.size:
        return False, int(bad[0]) + 2
    return True, None


def max_exception_row(t: DiffTriangle) -> int:
    """Largest m holding a value > 2 in some column n >= 2; 0 if there is none."""
    sel = (t.exc_n >= 2) & (t.exc_v > 2)
    deepest = int(t.exc_m[sel].max()) if sel.any() else 0
    if deepest == 0 and t.bound >= 3:
        # row 1 holds p_n >= 3 for n >= 2
        deepest = 1
    return deepest


def save_snapshot(t: DiffTriangle, path: str | Path) -> None:
    triples = np.stack([t.exc_m, t.exc_n, t.exc_v], axis=1).astype("<u4")
    with open(path, "wb") as fh:
        fh.write(SNAPSHOT_MAGIC + b" %d\n" % t.bound)
        fh.write(t.planes.tobytes())
        fh.write(b"EXC %d\n" % len(triples))
        fh.write(triples.tobytes())


def load_snapshot(path: str | Path, primes: PrimeTable | None = None) -> DiffTriangle:
    data = Path(path).read_bytes()
    head, _, rest = data.partition(b"\n")
    magic, _, bound_txt = head.partition(b" ")
    if magic != SNAPSHOT_MAGIC:
        raise ValueError(f"{path}: not a triangle snapshot")
    bound = int(bound_txt)
    offsets = row_offsets(bound)
    nplane = int(offsets[-1])
    planes = np.frombuffer(rest[:nplane], dtype=np.uint8).copy()
    exc_head, _, body = rest[nplane:].partition(b"\n")
    tag, _, count_txt = exc_head.partition(b" ")
    if tag != b"EXC" or len(planes) != nplane:
        raise ValueError(f"{path}: truncated snapshot")
    count = int(count_txt)
    if len(body) != count * struct.calcsize("<III"):
        raise ValueError(f"{path}: exception section has wrong length")
    triples = np.frombuffer(body, dtype="<u4").reshape(count, 3).astype(np.int64)
    if primes is None:
        primes = first_k_primes(bound - 1)
    first = primes.values[: bound - 1].astype(np.int64)
    return DiffTriangle(bound, first, planes, offsets,
                        triples[:, 0].copy(), triples[:, 1].copy(), triples[:, 2].copy())
