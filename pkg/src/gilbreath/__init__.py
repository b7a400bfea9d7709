"""Gilbreath prime-difference triangle: construction, B(n), pattern census and
pseudorandomness statistics."""

from gilbreath.primes import PrimeTable, first_k_primes, nth_prime
from gilbreath.triangle import DiffTriangle, build, element, max_exception_row, verify_gilbreath
from gilbreath.bfunc import BTable, MomentSummary, b_diffs, b_histogram, compute_b, moments
from gilbreath.census import EligibilityMask, PatternCensus, count_patterns, eligible_totals
from gilbreath.stats import chi2_p_value, chi_square_yates, full_report, phi

__version__ = "0.1.0"

__all__ = [
    "PrimeTable", "first_k_primes", "nth_prime",
    "DiffTriangle", "build", "element", "max_exception_row", "verify_gilbreath",
    "BTable", "MomentSummary", "b_diffs", "b_histogram", "compute_b", "moments",
    "EligibilityMask", "PatternCensus", "count_patterns", "eligible_totals",
    "chi2_p_value", "chi_square_yates", "full_report", "phi",
]
