"""Pipeline orchestration and table writers."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from gilbreath import bfunc, census, primes, stats, triangle
from gilbreath.census import format_sig

log = logging.getLogger(__name__)

CACHE_ENV = "GILBREATH_CACHE"
MAX_BYTES_ENV = "GILBREATH_MAX_BYTES"
DEFAULT_MAX_BYTES = 1 << 30
TABLE1_ROWS, TABLE1_COLS = 70, 23
CENTRAL_SPAN = 25
BIN_LABELS = ("(-inf;-2s)", "[-2s;-s)", "[-s;0)", "[0;s)", "[s;2s)", "[2s;inf)")


class ConfigError(ValueError):
    pass


def default_max_n(bound: int, margin: int = bfunc.DEFAULT_MARGIN) -> int:
    guarded = bound - 1 - margin
    return guarded if guarded >= 2 else max(1, bound - 2)


@dataclass
class RunConfig:
    bound: int = triangle.DEFAULT_BOUND
    max_n: int | None = None
    lmax: int = census.DEFAULT_LMAX
    out: Path = Path(".")
    cache: Path | None = field(default_factory=lambda: Path(os.environ[CACHE_ENV]) if os.environ.get(CACHE_ENV) else None)
    workers: int = 1
    fmt: str = "csv"
    stable_margin: int = bfunc.DEFAULT_MARGIN

    def __post_init__(self):
        if self.max_n is None and self.bound >= 3:
            self.max_n = default_max_n(self.bound, self.stable_margin)
        self.out = Path(self.out)
        if self.cache is not None:
            self.cache = Path(self.cache)

    def validate(self) -> "RunConfig":
        if self.bound < 3:
            raise ConfigError(f"--bound must be at least 3, got {self.bound}")
        if not 1 <= self.max_n <= self.bound - 2:
            raise ConfigError(f"--max-n must lie in 1..{self.bound - 2}, got {self.max_n}")
        if not 1 <= self.lmax <= census.LMAX_CEILING:
            raise ConfigError(f"--lmax must lie in 1..{census.LMAX_CEILING}, got {self.lmax}")
        if self.workers < 1:
            raise ConfigError(f"--workers must be positive, got {self.workers}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"--format must be csv or json, got {self.fmt}")
        limit = int(os.environ.get(MAX_BYTES_ENV, DEFAULT_MAX_BYTES))
        need = estimated_bytes(self.bound)
        if need > limit:
            raise ConfigError(f"bound {self.bound} needs about {need >> 20} MiB, above the {limit >> 20} MiB guard ({MAX_BYTES_ENV})")
        return self


def estimated_bytes(bound: int) -> int:
    # packed rows plus the two integer rows alive during construction
    return bound * bound // 16 + 32 * bound


class Pipeline:
    """Lazily computed stages for one configuration."""

    def __init__(self, config: RunConfig):
        self.config = config.validate()

    @cached_property
    def prime_table(self) -> primes.PrimeTable:
        k = self.config.bound - 1
        cached = self._cache_path(f"primes_k{k}.txt")
        if cached is not None and cached.exists():
            log.info("loading primes from %s", cached)
            return primes.load_table(cached)
        table = primes.first_k_primes(k)
        if cached is not None:
            primes.save_table(table, cached)
        return table

    @cached_property
    def diff_triangle(self) -> triangle.DiffTriangle:
        cached = self._cache_path(f"triangle_S{self.config.bound}.gilb")
        if cached is not None and cached.exists():
            log.info("loading triangle snapshot from %s", cached)
            return triangle.load_snapshot(cached, self.prime_table)
        t = triangle.build(self.prime_table, self.config.bound)
        if cached is not None:
            triangle.save_snapshot(t, cached)
        return t

    @cached_property
    def btable(self) -> bfunc.BTable:
        return bfunc.compute_b(self.diff_triangle, self.config.stable_margin)

    @cached_property
    def mask(self) -> census.EligibilityMask:
        return census.EligibilityMask(self.diff_triangle, self.btable)

    @cached_property
    def censuses(self) -> dict:
        return census.count_all(self.mask, self.config.lmax, self.config.workers)

    @cached_property
    def eligible(self) -> tuple[int, int, int]:
        return census.eligible_totals(self.mask)

    @cached_property
    def statistics(self):
        return stats.full_report(self.censuses)

    def _cache_path(self, name: str) -> Path | None:
        if self.config.cache is None:
            return None
        self.config.cache.mkdir(parents=True, exist_ok=True)
        return self.config.cache / name


# ------------------------------------------------------------------ tables


def table1_rows(t: triangle.DiffTriangle) -> list[list]:
    rows = []
    for m in range(1, min(TABLE1_ROWS, t.bound - 1) + 1):
        rows.append([t[m, n] if m + n <= t.bound else "" for n in range(1, TABLE1_COLS + 1)])
    return rows


def _moment_dict(hist) -> dict | None:
    try:
        s = bfunc.moments(hist)
    except ValueError:
        return None
    return {"mean": s.mean, "variance": s.variance, "gamma1": s.gamma1, "gamma2": s.gamma2, "bins": s.count}


def b_outputs(p: Pipeline) -> dict[str, tuple[list[str], list[list]] | dict]:
    b, max_n = p.btable, p.config.max_n
    bn = (["n", "B"], [[n, b[n] if b[n] is not None else ""] for n in range(1, b.bound)])
    if max_n < 2:
        # no consecutive pair of columns with n >= 2 fits below the bound
        return {"bn": bn}
    hist = bfunc.b_histogram(b, max_n)
    diffs, (less, equal, greater) = bfunc.b_diffs(b, max_n)
    span = min(CENTRAL_SPAN, max(abs(k) for k in diffs))
    moments = {
        "max_n": max_n,
        "b_values": _moment_dict(hist),
        "b_diffs": _moment_dict(diffs),
        "b_diffs_central": _moment_dict(bfunc.restrict(diffs, -span, span)),
        "central_span": span,
        "diff_signs": {"negative": less, "zero": equal, "positive": greater},
    }
    return {
        "bn": bn,
        "b_hist": (["value", "count"], [[k, c] for k, c in hist.items()]),
        "b_diffs": (["value", "count"], [[k, c] for k, c in diffs.items()]),
        "moments": moments,
    }


def census_outputs(p: Pipeline) -> dict[str, tuple[list[str], list[list]]]:
    out = {}
    for (l, orient), c in sorted(p.censuses.items()):
        n = c.total
        rows = [[pat, cnt, format_sig(100.0 * cnt / n, 6) if n else ""] for pat, cnt in c.items()]
        out[f"census_l{l}_{orient}"] = (["pattern", "count", "percentage"], rows)
    total, zeros, twos = p.eligible
    out["eligible_totals"] = (["total", "zeros", "twos"], [[total, zeros, twos]])
    return out


def stats_outputs(p: Pipeline) -> dict[str, tuple[list[str], list[list]]]:
    if any(c.total == 0 for c in p.censuses.values()):
        log.warning("empty census at bound %d; statistics skipped", p.config.bound)
        return {}
    summaries, chi = p.statistics
    t15 = [[s.length, s.orientation, s.n, format_sig(s.sigma_observed, 6),
            format_sig(s.sigma_expected, 6), format_sig(s.ratio, 5)] for s in summaries]
    t16 = [[s.length, s.orientation, *s.bins] for s in summaries]
    t17 = [[r.length, r.orientation, format_sig(r.chi2, 6), format_sig(r.p_value, 5)] for r in chi.rows]
    t17.append(["total", "", format_sig(chi.total, 6), format_sig(chi.total_p_value, 5)])
    return {
        "stats_table15": (["l", "orientation", "N", "sigma", "sigma_expected", "ratio"], t15),
        "bins_table16": (["l", "orientation", *BIN_LABELS], t16),
        "chi2_table17": (["l", "orientation", "chi2", "p_value"], t17),
    }


def _render(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def write_outputs(outputs: dict, out: Path, fmt: str) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, payload in outputs.items():
        if isinstance(payload, dict):
            path = out / f"{name}.json"
            path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n")
        else:
            path = out / f"{name}.{fmt}"
            path.write_text(_render(*payload, fmt))
        written.append(path)
    return written


def cmd_report(config: RunConfig) -> list[Path]:
    p = Pipeline(config)
    outputs = {"table1": ([str(n) for n in range(1, TABLE1_COLS + 1)], table1_rows(p.diff_triangle))}
    outputs.update(b_outputs(p))
    outputs.update(census_outputs(p))
    outputs.update(stats_outputs(p))
    return write_outputs(outputs, config.out, config.fmt)
