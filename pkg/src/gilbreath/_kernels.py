"""Hot loops over the packed bit-plane.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy version
with identical output.  The numba path is used when numba imports and the
environment variable ``GILBREATH_DISABLE_NUMBA`` is unset (or "0").

Bit-plane layout: row ``m`` (m >= 2) holds ``S - m`` bits, cell ``n`` at bit
``n - 1``, little-endian within each byte, starting at ``planes[offsets[m]]``.
Bit 1 means value 2, bit 0 means value 0 (or an exception entry).
"""

from __future__ import annotations

import os

import numpy as np

HORIZONTAL, VERTICAL = 0, 1


def _numba_requested() -> bool:
    return os.environ.get("GILBREATH_DISABLE_NUMBA", "0").strip().lower() in ("", "0", "false", "no")


try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and _numba_requested()


def reversal_table(lmax: int) -> np.ndarray:
    """rev[l, c] = c with its low l bits reversed."""
    rev = np.zeros((lmax + 1, 1 << lmax), dtype=np.int64)
    for l in range(1, lmax + 1):
        for c in range(1 << l):
            r = 0
            for k in range(l):
                if (c >> k) & 1:
                    r |= 1 << (l - 1 - k)
            rev[l, c] = r
    return rev


# ---------------------------------------------------------------- xor step


def xor_step_numpy(prev: np.ndarray, nbits: int) -> np.ndarray:
    """Next two-valued row from the previous packed one.

    Valid once every cell with n >= 2 is 0 or 2: then |a - b| = 2 (a xor b).
    Column 1 stays an exception (value 1), so its bit is cleared.
    """
    nbytes = (nbits + 7) >> 3
    src = prev.astype(np.uint16)
    carry = np.zeros(nbytes, dtype=np.uint16)
    tail = src[1 : nbytes + 1]
    carry[: len(tail)] = tail
    out = (src[:nbytes] ^ ((src[:nbytes] >> 1) | ((carry << 7) & 0xFF))).astype(np.uint8)
    out[0] &= 0xFE
    if nbits & 7:
        out[-1] &= (1 << (nbits & 7)) - 1
    return out


def _xor_step_loop(prev, nbits):
    nbytes = (nbits + 7) >> 3
    out = np.empty(nbytes, dtype=np.uint8)
    last = prev.shape[0] - 1
    for i in range(nbytes):
        cur = np.int64(prev[i])
        nxt = np.int64(prev[i + 1]) if i < last else np.int64(0)
        out[i] = (cur ^ ((cur >> 1) | ((nxt << 7) & 0xFF))) & 0xFF
    out[0] &= 0xFE
    if nbits & 7:
        out[nbytes - 1] &= (1 << (nbits & 7)) - 1
    return out


# ---------------------------------------------------------------- census


def census_rows_numpy(planes, offsets, bvals, bound, lmax, m_lo, m_hi):
    """Pattern counts for windows ending in rows m_lo <= m < m_hi.

    Returns int64 counts[orientation, l, code] where code holds the last cell
    of the window in bit 0 (see ``reversal_table``).
    """
    counts = np.zeros((2, lmax + 1, 1 << lmax), dtype=np.int64)
    full = (1 << lmax) - 1
    hist = np.zeros(bound + 1, dtype=np.int64)
    start = max(2, m_lo - (lmax - 1))
    for m in range(start, m_hi):
        width = bound - m
        if width <= 0:
            break
        bits = np.unpackbits(planes[offsets[m] : offsets[m + 1]], count=width, bitorder="little").astype(np.int64)
        cols = hist[1 : width + 1]
        cols <<= 1
        cols |= bits
        cols &= full
        if m < m_lo:
            continue
        bcol = bvals[1 : width + 1]
        elig = bcol < m
        elig[0] = False
        # run[i]: consecutive eligible cells ending at i
        idx = np.arange(width)
        last_gap = np.maximum.accumulate(np.where(elig, -1, idx))
        run = np.where(elig, idx - last_gap, 0)
        roll = np.zeros(width, dtype=np.int64)
        for k in range(min(lmax, width)):
            roll[k:] |= bits[: width - k] << k
        vrun = np.where(elig, m - bcol, 0)
        for l in range(1, lmax + 1):
            mask = (1 << l) - 1
            sel = run >= l
            counts[HORIZONTAL, l] += np.bincount(roll[sel] & mask, minlength=1 << lmax)
            sel = vrun >= l
            counts[VERTICAL, l] += np.bincount(cols[sel] & mask, minlength=1 << lmax)
    return counts


def _census_rows_loop(planes, offsets, bvals, bound, lmax, m_lo, m_hi):
    counts = np.zeros((2, lmax + 1, 1 << lmax), dtype=np.int64)
    full = (1 << lmax) - 1
    hist = np.zeros(bound + 1, dtype=np.int64)
    start = max(2, m_lo - (lmax - 1))
    for m in range(start, m_hi):
        width = bound - m
        if width <= 0:
            break
        base = offsets[m]
        counting = m >= m_lo
        run = 0
        roll = 0
        for n in range(1, width + 1):
            bit = (np.int64(planes[base + ((n - 1) >> 3)]) >> ((n - 1) & 7)) & 1
            hv = ((hist[n] << 1) | bit) & full
            hist[n] = hv
            if not counting:
                continue
            if n >= 2 and bvals[n] < m:
                run += 1
                roll = ((roll << 1) | bit) & full
                top = run if run < lmax else lmax
                for l in range(1, top + 1):
                    counts[0, l, roll & ((1 << l) - 1)] += 1
                vrun = m - bvals[n]
                top = vrun if vrun < lmax else lmax
                for l in range(1, top + 1):
                    counts[1, l, hv & ((1 << l) - 1)] += 1
            else:
                run = 0
                roll = 0
    return counts


if HAVE_NUMBA:
    xor_step_numba = numba.njit(cache=True, nogil=True)(_xor_step_loop)
    census_rows_numba = numba.njit(cache=True, nogil=True)(_census_rows_loop)
else:  # pragma: no cover
    xor_step_numba = None
    census_rows_numba = None

if USE_NUMBA:
    xor_step = xor_step_numba
    census_rows = census_rows_numba
else:
    xor_step = xor_step_numpy
    census_rows = census_rows_numpy


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
