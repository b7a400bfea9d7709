import csv
from pathlib import Path

import pytest

import oracle
from gilbreath.bfunc import compute_b
from gilbreath.census import EligibilityMask
from gilbreath.primes import first_k_primes
from gilbreath.triangle import build

DATA = Path(__file__).parent / "data"


def read_csv(name):
    with open(DATA / name, newline="") as fh:
        return list(csv.DictReader(fh))


@pytest.fixture(scope="session")
def golden():
    return {
        "prefix": [list(map(int, r)) for r in list(csv.reader(open(DATA / "prefix.csv")))[1:]],
        "b_prefix": {int(r["n"]): (int(r["B"]) if r["B"] else None) for r in read_csv("b_prefix.csv")},
        "b_hist": {int(r["value"]): int(r["count"]) for r in read_csv("b_hist.csv")},
        "b_diffs": {int(r["value"]): int(r["count"]) for r in read_csv("b_diffs.csv")},
        "census": read_csv("census.csv"),
        "deviation": read_csv("deviation.csv"),
        "bins": read_csv("bins.csv"),
        "chi2": read_csv("chi2.csv"),
    }


@pytest.fixture(scope="session")
def small():
    """Engine objects at a few small bounds, keyed by S."""
    cache = {}

    def get(bound):
        if bound not in cache:
            t = build(first_k_primes(bound - 1), bound)
            b = compute_b(t)
            cache[bound] = (t, b, EligibilityMask(t, b))
        return cache[bound]

    return get


@pytest.fixture(scope="session")
def naive():
    cache = {}

    def get(bound):
        if bound not in cache:
            cache[bound] = oracle.pipeline(bound)
        return cache[bound]

    return get


# ---------------------------------------------------------------- acceptance summary

_criteria: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _criteria.get(name)
        if prev != "FAIL":
            _criteria[name] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria):
        terminalreporter.write_line(f"{_criteria[name]}  {name}")
