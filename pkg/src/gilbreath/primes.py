"""First-k primes via a segmented sieve of Eratosthenes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SEGMENT = 1 << 18


def _base_primes(limit: int) -> np.ndarray:
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime)


def sieve_upto(limit: int, segment: int = SEGMENT) -> np.ndarray:
    """All primes <= limit, sieved in fixed-size windows."""
    if limit < 2:
        return np.empty(0, dtype=np.uint32)
    base = _base_primes(math.isqrt(limit))
    chunks = []
    for low in range(0, limit + 1, segment):
        high = min(low + segment, limit + 1)
        mask = np.ones(high - low, dtype=bool)
        if low < 2:
            mask[: 2 - low] = False
        for p in base:
            p = int(p)
            if p * p >= high:
                break
            start = max(p * p, -(-low // p) * p)
            mask[start - low :: p] = False
        chunks.append(np.flatnonzero(mask) + low)
    return np.concatenate(chunks).astype(np.uint32)


def _bound_for(k: int) -> int:
    # p_k <= k (ln k + ln ln k) for k >= 6
    if k < 6:
        return 13
    return int(k * (math.log(k) + math.log(math.log(k)))) + 1


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """The first ``limit`` primes; position 1 holds 2."""

    values: np.ndarray
    limit: int

    def __len__(self) -> int:
        return self.limit

    def __getitem__(self, n: int) -> int:
        return nth_prime(self, n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeTable):
            return NotImplemented
        return self.limit == other.limit and np.array_equal(self.values, other.values)


def first_k_primes(k: int) -> PrimeTable:
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    bound = _bound_for(k)
    while True:
        found = sieve_upto(bound)
        if len(found) >= k:
            break
        bound = int(bound * 1.25) + 1
    values = found[:k].copy()
    values.flags.writeable = False
    return PrimeTable(values=values, limit=k)


def nth_prime(table: PrimeTable, n: int) -> int:
    if not 1 <= n <= table.limit:
        raise IndexError(f"prime index {n} outside 1..{table.limit}")
    return int(table.values[n - 1])


def save_table(table: PrimeTable, path: str | Path) -> None:
    lines = [f"# primes k={table.limit}"]
    lines.extend(str(int(p)) for p in table.values)
    Path(path).write_text("\n".join(lines) + "\n")


def load_table(path: str | Path) -> PrimeTable:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("# primes k="):
            raise ValueError(f"{path}: not a prime cache file")
        k = int(header.split("=", 1)[1])
        values = np.loadtxt(fh, dtype=np.uint32, ndmin=1)
    if len(values) != k:
        raise ValueError(f"{path}: header says k={k} but file holds {len(values)} primes")
    values.flags.writeable = False
    return PrimeTable(values=values, limit=k)
