"""Random Euler products with independent uniform circle weights X(p).

Everything here works with the product truncated to primes p <= P.
Quantities that couple a Dirichlet polynomial D(X) = sum f(a) X(a) with the
product require a P-smooth support, which makes the truncated identities
exact rather than approximate:

    E|D(X) zeta_{X,P}(sigma)|^2 = zeta_P(2 sigma) S_f(sigma),
    zeta_P(s) = prod_{p <= P} (1 - p^-s)^-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import is_prime, primes_upto
from .constants import moment_bound_rhs
from .energy import fourth_moment_multiplicative
from .errors import DomainError, QuadratureError, SeriesError, SmoothnessError
from .gcdsums import WeightedSupport, gcd_sum
from .rng import TAG_ANGLE, uniform53

QUAD_START = 16
QUAD_MAX = 1 << 17
QUAD_TOL = 1e-13
AGREE_TOL = 1e-10
_CHUNK = 1 << 21


@dataclass(frozen=True)
class RandomZetaConfig:
    sigma: float
    prime_limit: int
    l: int = 1
    samples: int = 0
    seed: int = 0

    def __post_init__(self):
        if not (0.5 < self.sigma < 1.0):
            raise DomainError(f"sigma must lie in (1/2, 1), got {self.sigma}")
        if self.prime_limit < 2:
            raise DomainError("prime_limit must be >= 2")
        if self.l < 1:
            raise DomainError("l must be >= 1")
        if self.samples < 0:
            raise DomainError("samples must be >= 0")

    @property
    def in_moment_range(self):
        """Whether sigma lies in (1/2, 3/4), where the moment bound is claimed."""
        return 0.5 < self.sigma < 0.75

    def primes(self):
        return primes_upto(self.prime_limit)


@dataclass(frozen=True)
class MomentEstimate:
    exact_log: float | None
    mc_mean: float | None
    mc_stderr: float | None
    samples: int


@dataclass(frozen=True)
class MonteCarloCheck:
    """Monte Carlo mean against an exact reference."""

    mc_estimate: float
    mc_stderr: float
    exact_reference: float
    z_score: float
    samples: int


# ---------------------------------------------------------------- moments

def _series_excess(a2, l):
    """E_l - 1 = sum_{k >= 1} C(l+k-1, k)^2 a^{2k}, elementwise in a2 = p^{-2 sigma}."""
    a2 = np.asarray(a2, dtype=np.float64)
    term = np.ones_like(a2)
    total = np.zeros_like(a2)
    k = 0
    while True:
        k += 1
        ratio = ((l + k - 1) / k) ** 2 * a2
        term = term * ratio
        total = total + term
        if np.all((term <= 1e-17 * total) & (ratio < 1.0)):
            return total
        if k > 100_000:
            raise SeriesError("moment series did not converge")


def _quad_excess(a, l):
    """E_l - 1 by trapezoidal quadrature in theta, doubling nodes until stable.

    The integrand (1 + a^2 - 2a cos t)^-l - 1 is smooth and periodic, so the
    trapezoidal rule converges geometrically.
    """
    a = np.asarray(a, dtype=np.float64)
    out = np.empty_like(a)
    todo = np.arange(a.shape[0])
    n = QUAD_START

    def trap(idx, nodes):
        c = np.cos(2.0 * np.pi * np.arange(nodes) / nodes)
        ai = a[idx, None]
        vals = np.expm1(-l * np.log1p(ai * ai - 2.0 * ai * c[None, :]))
        return vals.mean(axis=1)

    prev = trap(todo, n)
    while todo.size:
        n *= 2
        if n > QUAD_MAX:
            raise QuadratureError(f"trapezoidal refinement stalled at {n // 2} nodes")
        cur = trap(todo, n)
        done = np.abs(cur - prev) <= QUAD_TOL * (1.0 + cur)
        out[todo[done]] = cur[done]
        todo = todo[~done]
        prev = cur[~done]
    return out


def _check_sigma_moment(sigma):
    if not (0.5 < sigma < 1.0):
        raise DomainError(f"sigma must lie in (1/2, 1), got {sigma}")


def log_per_prime_moments(primes, sigma, l):
    """log E_l(p) for each prime, by quadrature, each checked against the series.

    E_l(p) = E|1 - X(p) p^-sigma|^{-2l}. Raises QuadratureError if the two
    evaluations disagree by more than 1e-10 relative.
    """
    _check_sigma_moment(sigma)
    if l < 1:
        raise DomainError("l must be >= 1")
    p = np.asarray(primes, dtype=np.float64)
    a = p ** -sigma
    quad = _quad_excess(a, l)
    series = _series_excess(a * a, l)
    bad = np.abs(quad - series) > AGREE_TOL * (1.0 + series)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        raise QuadratureError(
            f"quadrature {1 + quad[i]!r} and series {1 + series[i]!r} disagree at p={int(p[i])}"
        )
    return np.log1p(quad)


def per_prime_moment(p: int, sigma: float, l: int) -> float:
    """E_l(p) = (1/2pi) int_0^{2pi} (p^{2s} / (p^{2s} + 1 - 2 p^s cos t))^l dt."""
    if not is_prime(int(p)):
        raise DomainError(f"{p} is not prime")
    return float(np.exp(log_per_prime_moments([p], sigma, l)[0]))


def exact_truncated_moment(cfg: RandomZetaConfig) -> float:
    """log E|zeta_{X,P}(sigma)|^{2l} = sum_{p <= P} log E_l(p)."""
    return math.fsum(log_per_prime_moments(cfg.primes(), cfg.sigma, cfg.l).tolist())


def log_zeta_truncated(s: float, prime_limit: int) -> float:
    """log zeta_P(s) = -sum_{p <= P} log(1 - p^-s)."""
    p = primes_upto(prime_limit).astype(np.float64)
    return -math.fsum(np.log1p(-(p ** -s)).tolist())


# --------------------------------------------------------------- sampling

def sample_angles(seed: int, indices, primes) -> np.ndarray:
    """Angles theta[i, j] of X(p_j) in sample indices[i], uniform on [0, 2pi)."""
    idx = np.asarray(indices, dtype=np.uint64)[:, None]
    pr = np.asarray(primes, dtype=np.uint64)[None, :]
    return 2.0 * np.pi * uniform53(seed, idx, pr, TAG_ANGLE)


def zeta_from_angles(theta, primes, sigma):
    a = np.asarray(primes, dtype=np.float64) ** -sigma
    return np.prod(1.0 / (1.0 - a * np.exp(1j * theta)), axis=-1)


def _chunks(start, stop, width):
    step = max(1, _CHUNK // max(1, width))
    for lo in range(start, stop, step):
        yield np.arange(lo, min(stop, lo + step))


def sample_zeta(cfg: RandomZetaConfig, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Samples start..stop-1 of zeta_{X,P}(sigma); sample i depends only on (seed, i)."""
    stop = cfg.samples if stop is None else stop
    primes = cfg.primes()
    parts = [
        zeta_from_angles(sample_angles(cfg.seed, idx, primes), primes, cfg.sigma)
        for idx in _chunks(start, stop, len(primes))
    ]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.complex128)


def smooth_exponents(f: WeightedSupport, primes) -> np.ndarray:
    """Exponent matrix e[a, j] with a = prod_j p_j^e[a, j]; SmoothnessError otherwise."""
    primes = [int(p) for p in primes]
    out = np.zeros((len(f), len(primes)), dtype=np.int64)
    for i, a in enumerate(f.support):
        for j, p in enumerate(primes):
            while a % p == 0:
                a //= p
                out[i, j] += 1
        if a != 1:
            raise SmoothnessError(
                f"support element {f.support[i]} has a prime factor above {primes[-1] if primes else 1}"
            )
    return out


def dirichlet_weight_sum(f: WeightedSupport, theta, primes, exponents=None) -> np.ndarray:
    """D(X) = sum_a f(a) X(a), with X(a) = exp(i sum_p e_p(a) theta_p)."""
    if exponents is None:
        exponents = smooth_exponents(f, primes)
    w = np.asarray(f.weights, dtype=np.float64)
    phase = np.asarray(theta) @ exponents.T.astype(np.float64)
    return np.exp(1j * phase) @ w


def _mc(values, exact):
    n = values.shape[0]
    mean = math.fsum(values.tolist()) / n
    var = math.fsum(((values - mean) ** 2).tolist()) / (n - 1) if n > 1 else 0.0
    stderr = math.sqrt(var / n)
    if stderr > 0:
        z = (mean - exact) / stderr
    else:
        z = 0.0 if math.isclose(mean, exact, rel_tol=1e-12, abs_tol=1e-300) else math.inf
    return MonteCarloCheck(mean, stderr, exact, z, n)


def identity_check(f: WeightedSupport, sigma: float, prime_limit: int, samples: int, seed: int) -> MonteCarloCheck:
    """Monte Carlo E|D(X) zeta_{X,P}(sigma)|^2 against zeta_P(2 sigma) S_f(sigma)."""
    _check_sigma_moment(sigma)
    primes = primes_upto(prime_limit)
    ex = smooth_exponents(f, primes)
    out = []
    for idx in _chunks(0, samples, len(primes)):
        theta = sample_angles(seed, idx, primes)
        d = dirichlet_weight_sum(f, theta, primes, ex)
        z = zeta_from_angles(theta, primes, sigma)
        out.append(np.abs(d * z) ** 2)
    values = np.concatenate(out)
    s_f = gcd_sum(f, sigma).value if len(f) else 0.0
    exact = math.exp(log_zeta_truncated(2.0 * sigma, prime_limit)) * s_f
    return _mc(values, exact)


def fourth_moment_D(f: WeightedSupport, samples: int, seed: int, prime_limit: int) -> MonteCarloCheck:
    """Monte Carlo E|D(X)|^4 against the exact count over ab = cd."""
    primes = primes_upto(prime_limit)
    ex = smooth_exponents(f, primes)
    out = []
    for idx in _chunks(0, samples, len(primes)):
        d = dirichlet_weight_sum(f, sample_angles(seed, idx, primes), primes, ex)
        out.append(np.abs(d) ** 4)
    exact = float(fourth_moment_multiplicative(f))
    return _mc(np.concatenate(out), exact)


def moment_estimate(cfg: RandomZetaConfig) -> MomentEstimate:
    """Exact truncated log-moment, plus a Monte Carlo mean of |zeta|^{2l} when samples > 0.

    The Monte Carlo figure is informational only: |zeta_X|^{2l} is heavy
    tailed for larger l.
    """
    exact = exact_truncated_moment(cfg)
    if cfg.samples == 0:
        return MomentEstimate(exact, None, None, 0)
    vals = np.abs(sample_zeta(cfg)) ** (2 * cfg.l)
    check = _mc(vals, math.exp(exact))
    return MomentEstimate(exact, check.mc_estimate, check.mc_stderr, cfg.samples)


def moment_bound(cfg: RandomZetaConfig) -> dict:
    """Compare the exact truncated log-moment with (l^2 + beta l) log(1/(sigma - 1/2))."""
    lhs = exact_truncated_moment(cfg)
    rhs = moment_bound_rhs(cfg.l, cfg.sigma)
    return {"exact_log": lhs, "bound_rhs": rhs, "margin": rhs - lhs, "pass": lhs <= rhs}
