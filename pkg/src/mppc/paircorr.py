"""Pair correlation R_2(s, alpha, N) and its variance over alpha."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from ._config import BRUTE_PAIR_MAX, DEFAULT_BITS
from .errors import PrecisionError, SizeError
from .pointset import PointSet, alpha_sample, frac_parts
from .sequences import IntegerSequence

# allowance for rounding in the float distance itself
_DIST_SLACK = 2.0 ** -52


@dataclass(frozen=True)
class PairCorrelationResult:
    s: float
    N: int
    pair_count: int
    value: float
    boundary_pairs: int


@dataclass(frozen=True)
class VarianceEstimate:
    s: float
    N: int
    M: int
    mean: float
    variance: float
    target: float
    seed: int
    values: tuple = field(default=(), repr=False)


def _thresholds(pts: PointSet, s: float):
    if s <= 0:
        raise ValueError("s must be positive")
    n = len(pts)
    t = s / n
    if not t > 2.0 * pts.error_bound:
        raise PrecisionError(f"s/N = {t:.3g} is not above twice the point error {pts.error_bound:.3g}")
    tol = 2.0 * pts.error_bound + _DIST_SLACK
    # pairs within tol of the threshold are counted in and reported separately
    hi = t + tol
    lo = np.nextafter(t - tol, -np.inf)
    return n, hi, lo


def _count_fast(xs, thr):
    n = xs.shape[0]
    if thr >= 0.5:
        return n * (n - 1) // 2
    if thr < 0:
        return 0
    return int(_kernels.count_close_pairs(xs, float(thr)))


def pair_correlation(pts: PointSet, s: float) -> PairCorrelationResult:
    """R_2 by a sorted two-pointer sweep on the circle, O(N log N)."""
    if len(pts) == 0:
        raise ValueError("empty point set")
    n, hi, lo = _thresholds(pts, s)
    xs = np.sort(pts.points)
    inside = _count_fast(xs, hi)
    strictly = _count_fast(xs, lo)
    count = 2 * inside
    return PairCorrelationResult(s, n, count, count / n, 2 * (inside - strictly))


def _count_brute(x, thr):
    n = x.shape[0]
    total = 0
    for i in range(n - 1):
        d = np.abs(x[i] - x[i + 1 :])
        total += int(np.count_nonzero(np.minimum(d, 1.0 - d) <= thr))
    return total


def pair_correlation_brute(pts: PointSet, s: float) -> PairCorrelationResult:
    """Direct double loop over all pairs; the reference for the fast path."""
    if len(pts) > BRUTE_PAIR_MAX:
        raise SizeError(f"brute-force pair count limited to N <= {BRUTE_PAIR_MAX}")
    if len(pts) == 0:
        raise ValueError("empty point set")
    n, hi, lo = _thresholds(pts, s)
    x = pts.points
    inside = _count_brute(x, hi)
    strictly = _count_brute(x, lo)
    count = 2 * inside
    return PairCorrelationResult(s, n, count, count / n, 2 * (inside - strictly))


def poisson_target(s: float, n: int) -> float:
    return 2.0 * s * (n - 1) / n


def variance_over_alpha(
    seq: IntegerSequence,
    s: float,
    M: int,
    seed: int,
    bits: int = DEFAULT_BITS,
    workers: int = 1,
) -> VarianceEstimate:
    """Monte Carlo estimate of the integral of (R_2 - 2s(N-1)/N)^2 over alpha in [0, 1).

    Uses the population form (divide by M) since the centring is known.
    Sample i uses alpha_sample(seed, i), so the result does not depend on
    ``workers``.
    """
    if M < 2:
        raise ValueError("M must be >= 2")
    n = len(seq)

    def one(i):
        return pair_correlation(frac_parts(seq, alpha_sample(seed, i, bits)), s).value

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            values = list(pool.map(one, range(M)))
    else:
        values = [one(i) for i in range(M)]
    target = poisson_target(s, n)
    mean = math.fsum(values) / M
    variance = math.fsum((v - target) ** 2 for v in values) / M
    return VarianceEstimate(s, n, M, mean, variance, target, seed, tuple(values))


def ppc_convergence_report(seq, s, n_grid, M, seed, bits=DEFAULT_BITS, workers=1):
    """Variance estimates for each prefix length in ``n_grid``."""
    n_grid = list(n_grid)
    if any(b <= a for a, b in zip(n_grid, n_grid[1:])):
        raise ValueError("N-grid must be strictly increasing")
    return [variance_over_alpha(seq.prefix(n), s, M, seed, bits, workers) for n in n_grid]
