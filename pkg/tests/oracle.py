"""Naive reference pipeline: full integer matrix, direct definitions, no packing.

Deliberately shares no code with the package.
"""

from __future__ import annotations

import math
import statistics
from collections import Counter
from itertools import product


def trial_division_primes(k):
    out = []
    c = 2
    while len(out) < k:
        if all(c % p for p in out if p * p <= c):
            out.append(c)
        c += 1
    return out


def matrix(bound):
    """D[m][n] (1-based) for every m + n <= bound."""
    p = trial_division_primes(bound - 1)
    D = [None, [None] + p]
    for m in range(2, bound):
        prev = D[m - 1]
        D.append([None] + [abs(prev[n] - prev[n + 1]) for n in range(1, bound - m + 1)])
    return D


def b_values(D, bound):
    """B[n] = largest m with D[m][n] > 2, None for column 1."""
    B = {1: None}
    for n in range(2, bound):
        B[n] = max(m for m in range(1, bound - n + 1) if D[m][n] > 2)
    return B


def eligible(B, bound, m, n):
    return n >= 2 and m >= 1 and m + n <= bound and m > B[n]


def totals(D, B, bound):
    cells = [D[m][n] for n in range(2, bound) for m in range(1, bound - n + 1) if eligible(B, bound, m, n)]
    return len(cells), cells.count(0), cells.count(2)


def census(D, B, bound, length, orientation):
    counts = Counter({"".join(p): 0 for p in product("02", repeat=length)})
    for m in range(1, bound):
        for n in range(1, bound - m + 1):
            if orientation == "horizontal":
                cells = [(m, n + k) for k in range(length)]
            else:
                cells = [(m + k, n) for k in range(length)]
            if all(eligible(B, bound, a, b) for a, b in cells):
                counts["".join(str(D[a][b]) for a, b in cells)] += 1
    return dict(sorted(counts.items()))


def statistics_for(counts, length, tail=3.0):
    """E, sigma', sigma, bins, chi2 by direct evaluation."""
    values = list(counts.values())
    k = 2**length
    N = sum(values)
    E = N / k
    sp = math.sqrt(N * 2.0**-length * (1 - 2.0**-length))
    sigma = statistics.stdev(values)
    z = [(v - E) / sp for v in values]
    edges = [-2, -1, 0, 1, 2]
    bins = [0] * 6
    for x in z:
        i = 0
        while i < 5 and x >= edges[i]:
            i += 1
        bins[i] += 1
    nd = statistics.NormalDist()
    chi2 = 0.0
    for j in (-2, -1, 0, 1, 2, tail):
        O = len(values) if math.isinf(j) else sum(1 for v in values if v < E + j * sp)
        e = k * (1.0 if math.isinf(j) else nd.cdf(j))
        chi2 += (abs(O - e) - 0.5) ** 2 / e
    return {"N": N, "E": E, "sigma_expected": sp, "sigma": sigma, "bins": tuple(bins), "chi2": chi2}


def pipeline(bound, lmax=6):
    D = matrix(bound)
    B = b_values(D, bound)
    cens = {(l, o): census(D, B, bound, l, o) for l in range(1, lmax + 1) for o in ("horizontal", "vertical")}
    return D, B, cens
