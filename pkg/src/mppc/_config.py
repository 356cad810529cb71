"""Work budgets, overridable through environment variables."""

import os


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    return int(float(raw))


def pair_budget():
    """Max |A|^2 for quadratic difference/product work (MPPC_PAIR_BUDGET)."""
    return _env_int("MPPC_PAIR_BUDGET", 400_000_000)


def sieve_limit():
    """Largest integer the divisor sieve will tabulate (MPPC_SIEVE_LIMIT)."""
    return _env_int("MPPC_SIEVE_LIMIT", 100_000_000)


def dense_diff_limit():
    """Largest difference span counted in a dense array (MPPC_DENSE_LIMIT)."""
    return _env_int("MPPC_DENSE_LIMIT", 1 << 26)


NAIVE_GCD_MAX = 20_000
BRUTE_PAIR_MAX = 20_000
DEFAULT_BITS = 256
