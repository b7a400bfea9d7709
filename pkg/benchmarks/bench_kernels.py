"""Time the numba and numpy kernels on the same triangle.

    python3 benchmarks/bench_kernels.py --bound 6000 --repeat 3
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from gilbreath import _kernels
from gilbreath.bfunc import compute_b
from gilbreath.census import EligibilityMask
from gilbreath.primes import first_k_primes
from gilbreath.triangle import build


def _best(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--bound", type=int, default=6000)
    ap.add_argument("--lmax", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    t = build(first_k_primes(args.bound - 1), args.bound)
    mask = EligibilityMask(t, compute_b(t))
    census_args = (t.planes, t.offsets, mask.bvals, mask.bound, args.lmax, 2, mask.bound)
    row = t.planes[t.offsets[2] : t.offsets[3]]
    nbits = args.bound - 3

    kernels = {"numpy": (_kernels.census_rows_numpy, _kernels.xor_step_numpy)}
    if _kernels.HAVE_NUMBA:
        kernels["numba"] = (_kernels.census_rows_numba, _kernels.xor_step_numba)
        _kernels.census_rows_numba(t.planes, t.offsets, mask.bvals, mask.bound, args.lmax, 2, 10)
        _kernels.xor_step_numba(row, nbits)  # compile outside the timing

    print(f"bound {args.bound}, {t.element_count} cells, lmax {args.lmax}")
    results = {}
    for name, (census_fn, xor_fn) in kernels.items():
        tc, counts = _best(lambda: census_fn(*census_args), args.repeat)
        tx, _ = _best(lambda: [xor_fn(row, nbits) for _ in range(1000)], args.repeat)
        results[name] = counts
        print(f"{name:6s} census_rows {tc:8.3f} s   xor_step x1000 {tx:8.4f} s")
    if len(results) == 2:
        assert np.array_equal(results["numpy"], results["numba"])
        print("outputs identical")


if __name__ == "__main__":
    main()
