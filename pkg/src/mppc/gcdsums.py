"""GCD sums S_f(sigma) = sum_{a,b} f(a) f(b) gcd(a,b)^{2 sigma} / (ab)^sigma.

Two evaluation routes that check each other:

* ``gcd_sum_naive``: the double sum over pairs, quadratic in the support.
* ``gcd_sum_sieve``: the Moebius-inverted form
  ``sum_d J(d) * (sum_{d | a} f(a) a^-sigma)^2`` with
  ``J(d) = sum_{e | d} mu(d/e) e^{2 sigma}`` (a generalised Jordan totient),
  near-linear in the total number of divisors of the support.

Weights are nonnegative reals, so every term of both forms is nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from ._config import NAIVE_GCD_MAX, sieve_limit
from .arith import spf_table
from .energy import POSITIVE, representation_function
from .errors import DomainError, ParseError, SieveLimitError, SizeError
from .sequences import IntegerSequence

NAIVE = "naive"
SIEVE = "divisor_sieve"


@dataclass(frozen=True)
class WeightedSupport:
    """Finitely supported f : N -> [0, inf), support sorted ascending."""

    support: tuple
    weights: tuple

    def __post_init__(self):
        pairs = sorted(zip((int(a) for a in self.support), (float(w) for w in self.weights)))
        if len(pairs) != len(self.support) or len(self.support) != len(self.weights):
            raise ValueError("support and weights must have equal length")
        sup = tuple(a for a, _ in pairs)
        wts = tuple(w for _, w in pairs)
        if any(b <= a for a, b in zip(sup, sup[1:])):
            raise ValueError("support elements must be distinct")
        if sup and sup[0] < 1:
            raise ValueError("support elements must be >= 1")
        if any(not (w >= 0.0) or math.isinf(w) for w in wts):
            raise ValueError("weights must be finite and nonnegative")
        object.__setattr__(self, "support", sup)
        object.__setattr__(self, "weights", wts)

    @classmethod
    def from_mapping(cls, mapping):
        items = sorted(mapping.items())
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def ones(cls, values):
        values = list(values)
        return cls(tuple(values), (1.0,) * len(values))

    @classmethod
    def from_representation(cls, rw):
        if rw.domain_tag != POSITIVE:
            raise ValueError("expected positive_differences weights")
        return cls(tuple(int(v) for v in rw.values), tuple(float(c) for c in rw.counts))

    def __len__(self):
        return len(self.support)

    @property
    def l1(self):
        return math.fsum(self.weights)

    @property
    def l2sq(self):
        return math.fsum(w * w for w in self.weights)

    def arrays(self):
        if self.support and self.support[-1] >= (1 << 62):
            raise SizeError("support elements beyond 2^62 are not supported")
        return np.asarray(self.support, dtype=np.int64), np.asarray(self.weights, dtype=np.float64)

    def scaled(self, lam: int) -> "WeightedSupport":
        return WeightedSupport(tuple(lam * a for a in self.support), self.weights)


@dataclass(frozen=True)
class GcdSumValue:
    sigma: float
    value: float
    method: str
    support_size: int


def _check_sigma(sigma):
    if not (0.0 < sigma <= 1.0):
        raise DomainError(f"sigma must lie in (0, 1], got {sigma}")


def gcd_sum_naive(f: WeightedSupport, sigma: float) -> GcdSumValue:
    _check_sigma(sigma)
    if len(f) > NAIVE_GCD_MAX:
        raise SizeError(f"naive GCD sum limited to support size {NAIVE_GCD_MAX}, got {len(f)}")
    if len(f) == 0:
        return GcdSumValue(sigma, 0.0, NAIVE, 0)
    v, w = f.arrays()
    return GcdSumValue(sigma, float(_kernels.gcd_sum_naive(v, w, float(sigma))), NAIVE, len(f))


def gcd_sum_sieve(f: WeightedSupport, sigma: float, limit: int | None = None) -> GcdSumValue:
    _check_sigma(sigma)
    if len(f) == 0:
        return GcdSumValue(sigma, 0.0, SIEVE, 0)
    limit = sieve_limit() if limit is None else limit
    top = f.support[-1]
    if top > limit:
        raise SieveLimitError(f"largest support element {top} exceeds sieve limit {limit}")
    v, w = f.arrays()
    spf = spf_table(top)
    return GcdSumValue(sigma, float(_kernels.gcd_sum_sieve(v, w, float(sigma), spf)), SIEVE, len(f))


def gcd_sum(f: WeightedSupport, sigma: float, method: str = "auto") -> GcdSumValue:
    """Dispatch: ``auto`` prefers the sieve and falls back to the naive sum."""
    if method == NAIVE:
        return gcd_sum_naive(f, sigma)
    if method in (SIEVE, "sieve"):
        return gcd_sum_sieve(f, sigma)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if len(f) == 0 or f.support[-1] <= sieve_limit():
        return gcd_sum_sieve(f, sigma)
    return gcd_sum_naive(f, sigma)


def difference_weights(A: IntegerSequence) -> WeightedSupport:
    """f = r_A restricted to positive differences."""
    return WeightedSupport.from_representation(representation_function(A, POSITIVE))


def difference_set_gcd_sum(A: IntegerSequence, sigma: float = 0.5, method: str = "auto") -> GcdSumValue:
    """S_f(sigma) with f(n) = r_A(n) for n > 0; sigma = 1/2 is the case used for MPPC."""
    return gcd_sum(difference_weights(A), sigma, method)


def load_support(path) -> WeightedSupport:
    """Parse ``value:weight`` lines (``#`` comments and blank lines skipped)."""
    path = Path(path)
    mapping = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        value, sep, weight = line.partition(":")
        try:
            if not sep:
                raise ValueError
            key = int(value)
            mapping[key] = mapping.get(key, 0.0) + float(weight)
        except ValueError:
            raise ParseError(f"{path}:{lineno}: expected value:weight, got {raw!r}", line=lineno) from None
    return WeightedSupport.from_mapping(mapping)
