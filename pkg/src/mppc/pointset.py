"""Certified fractional parts {a_n alpha}.

Terms a_n can be far beyond the range where ``a_n * float(alpha)`` keeps any
fractional digits, so both paths reduce exactly with Python integers and only
then drop to a float. The float is the 53-bit truncation of the exact
reduced value, which keeps every point in [0, 1) and costs at most 2**-53.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._config import DEFAULT_BITS
from .errors import PrecisionError
from .rng import TAG_ALPHA, random_bits
from .sequences import IntegerSequence

FLOAT_BITS = 53
FLOAT_ULP = 2.0 ** -FLOAT_BITS
MAX_POINT_ERROR = 2.0 ** -50


@dataclass(frozen=True)
class RealParameter:
    """The multiplier alpha, reduced mod 1.

    Either an exact rational ``num/den`` or a fixed-point value
    ``fixed / 2**bits``.
    """

    num: int | None = None
    den: int | None = None
    fixed: int | None = None
    bits: int | None = None
    origin: str = "literal"

    def __post_init__(self):
        if self.fixed is None:
            if self.num is None or self.den is None or self.den <= 0:
                raise ValueError("rational alpha needs num and den > 0")
            r = Fraction(self.num, self.den)
            r -= r.numerator // r.denominator
            object.__setattr__(self, "num", r.numerator)
            object.__setattr__(self, "den", r.denominator)
        else:
            if self.bits is None or self.bits < 64:
                raise ValueError("fixed-point alpha needs bits >= 64")
            object.__setattr__(self, "fixed", self.fixed % (1 << self.bits))

    @classmethod
    def rational(cls, value, den=None, origin="literal"):
        r = Fraction(value) if den is None else Fraction(value, den)
        return cls(num=r.numerator, den=r.denominator, origin=origin)

    @classmethod
    def fixed_point(cls, fixed, bits=DEFAULT_BITS, origin="literal"):
        return cls(fixed=int(fixed), bits=int(bits), origin=origin)

    @property
    def is_rational(self):
        return self.fixed is None

    def as_fraction(self) -> Fraction:
        if self.is_rational:
            return Fraction(self.num, self.den)
        return Fraction(self.fixed, 1 << self.bits)

    def __float__(self):
        return float(self.as_fraction())

    def describe(self):
        if self.is_rational:
            return f"{self.num}/{self.den}"
        return f"fixed{self.bits}:{self.fixed:#x}"


@dataclass(frozen=True)
class PointSet:
    """Points in [0, 1) with a per-point absolute error bound."""

    points: np.ndarray
    error_bound: float
    source: tuple = field(default=("", ""))

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64)
        if pts.ndim != 1:
            raise ValueError("points must be one-dimensional")
        if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
            raise ValueError("points must lie in [0, 1)")
        if not self.error_bound < MAX_POINT_ERROR:
            raise PrecisionError(
                f"error bound {self.error_bound:.3g} exceeds 2^-50 needed for statistics"
            )
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return self.points.shape[0]


def frac_parts(seq: IntegerSequence, alpha: RealParameter) -> PointSet:
    terms = seq.terms
    if alpha.is_rational:
        p, q = alpha.num, alpha.den
        exact = True
        ints = []
        for a in terms:
            top = ((a * p) % q) << FLOAT_BITS
            t, rem = divmod(top, q)
            exact = exact and rem == 0
            ints.append(t)
        err = 0.0 if exact else FLOAT_ULP
    else:
        bits = alpha.bits
        a_max = terms[-1] if terms else 1
        if bits < a_max.bit_length() + 64:
            raise PrecisionError(
                f"alpha has {bits} fractional bits, need >= {a_max.bit_length() + 64} for a_N={a_max}"
            )
        mask = (1 << bits) - 1
        shift = bits - FLOAT_BITS
        f = alpha.fixed
        low = (1 << shift) - 1
        exact = True
        ints = []
        for a in terms:
            x = (a * f) & mask
            exact = exact and (x & low) == 0
            ints.append(x >> shift)
        # alpha stands for a real within 2^-bits of fixed/2^bits
        err = a_max * 2.0 ** -bits + (0.0 if exact else FLOAT_ULP)
    pts = np.array(ints, dtype=np.float64) * FLOAT_ULP
    return PointSet(pts, err, (seq.label, alpha.describe()))


def nearest_int_distance(x: float, y: float) -> float:
    """Circle distance ||x - y|| for x, y in [0, 1)."""
    if not (0.0 <= x < 1.0 and 0.0 <= y < 1.0):
        raise ValueError("arguments must lie in [0, 1)")
    d = abs(x - y)
    return min(d, 1.0 - d)


def alpha_sample(seed: int, index: int, bits: int = DEFAULT_BITS) -> RealParameter:
    return RealParameter.fixed_point(random_bits(seed, index, bits, TAG_ALPHA), bits, origin="random")


def sample_alpha(seed: int, count: int, bits: int = DEFAULT_BITS) -> list:
    """``count`` uniform alphas; sample i depends only on (seed, i)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return [alpha_sample(seed, i, bits) for i in range(count)]


def parse_alpha(text: str, bits: int = DEFAULT_BITS) -> RealParameter:
    """Parse ``p/q``, a decimal literal, or ``random:<seed>[:<index>]``."""
    text = text.strip()
    if text.startswith("random:"):
        parts = text.split(":")
        seed = int(parts[1])
        index = int(parts[2]) if len(parts) > 2 else 0
        return alpha_sample(seed, index, bits)
    try:
        return RealParameter.rational(Fraction(text))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse alpha {text!r}") from None
