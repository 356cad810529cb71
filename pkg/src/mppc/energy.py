"""Representation functions, additive energy and related counts."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import _kernels
from ._config import dense_diff_limit, pair_budget
from .errors import PrecisionError, SizeError
from .sequences import IntegerSequence

DIFFERENCES = "differences"
POSITIVE = "positive_differences"
FFT_MAX = 1 << 27


@dataclass(frozen=True)
class RepresentationWeights:
    """r(v) = #{(a, b) in A^2 : a - b = v}, stored as parallel sorted arrays."""

    values: np.ndarray
    counts: np.ndarray
    domain_tag: str = DIFFERENCES

    def __getitem__(self, v):
        i = np.searchsorted(self.values, v)
        if i < len(self.values) and self.values[i] == v:
            return int(self.counts[i])
        return 0

    def __len__(self):
        return len(self.values)

    def items(self):
        return zip((int(v) for v in self.values), (int(c) for c in self.counts))

    def as_dict(self):
        return dict(self.items())

    def total(self):
        return int(np.sum(self.counts, dtype=object)) if len(self.counts) else 0


@dataclass(frozen=True)
class EnergyReport:
    N: int
    energy: int
    lower: int
    upper: int
    normalized: float
    C: float = 0.0

    @property
    def hypothesis_violated(self):
        """True when E(A) (log N)^C exceeds N^3."""
        return self.normalized > 1.0


def _check_budget(n):
    if n * n > pair_budget():
        raise SizeError(f"|A|^2 = {n * n} exceeds the pair budget {pair_budget()}")


def _positive_differences(seq: IntegerSequence):
    _check_budget(len(seq))
    if seq.fits_int64():
        return _kernels.positive_difference_counts(seq.as_array(), dense_diff_limit())
    counter = Counter()
    terms = seq.terms
    for i, a in enumerate(terms):
        for b in terms[i + 1 :]:
            counter[b - a] += 1
    vals = sorted(counter)
    return np.array(vals, dtype=object), np.array([counter[v] for v in vals], dtype=np.int64)


def representation_function(A: IntegerSequence, tag: str = DIFFERENCES) -> RepresentationWeights:
    vals, counts = _positive_differences(A)
    if tag == POSITIVE:
        return RepresentationWeights(vals, counts, POSITIVE)
    if tag != DIFFERENCES:
        raise ValueError(f"unknown domain tag {tag!r}")
    n = len(A)
    zero = np.zeros(1, dtype=vals.dtype)
    all_vals = np.concatenate([-vals[::-1], zero, vals])
    all_counts = np.concatenate([counts[::-1], np.array([n], dtype=np.int64), counts])
    return RepresentationWeights(all_vals, all_counts, DIFFERENCES)


def _sum_squares(counts):
    return sum(int(c) * int(c) for c in counts) if counts.dtype == object else int(
        np.dot(counts.astype(np.int64), counts.astype(np.int64))
    )


def _normalized(energy, n, C):
    if n < 2:
        return float(energy) if C == 0 else 0.0
    return energy * math.log(n) ** C / n ** 3


def additive_energy(A: IntegerSequence, C: float = 0.0) -> EnergyReport:
    """E(A) = sum_v r(v)^2 = N^2 + 2 sum_{v > 0} r(v)^2, exact."""
    n = len(A)
    _, counts = _positive_differences(A)
    energy = n * n + 2 * _sum_squares(counts)
    return EnergyReport(n, energy, n * n, n ** 3, _normalized(energy, n, C), C)


def additive_energy_by_sums(A: IntegerSequence) -> int:
    """#{a + b = c + d} counted through the sum multiset rather than differences."""
    n = len(A)
    _check_budget(n)
    if A.fits_int64():
        a = A.as_array()
        # ordered pairs: off-diagonal sums appear twice
        iu, ju = np.triu_indices(n, k=1)
        sums, c = np.unique(a[iu] + a[ju], return_counts=True)
        counts = dict(zip(sums.tolist(), (2 * c).tolist()))
        for x in (2 * a).tolist():
            counts[x] = counts.get(x, 0) + 1
        return sum(v * v for v in counts.values())
    counter = Counter(x + y for x in A.terms for y in A.terms)
    return sum(v * v for v in counter.values())


def additive_energy_fft(A: IntegerSequence) -> int:
    """E(A) from the autocorrelation of the indicator of A via FFT.

    Only for spans up to 2**27; counts are rounded and must sit within 1/4
    of an integer.
    """
    if not A.terms:
        return 0
    lo, hi = A.terms[0], A.terms[-1]
    span = hi - lo
    if span > FFT_MAX:
        raise SizeError(f"FFT path needs span <= 2^27, got {span}")
    size = 1 << (2 * span + 1).bit_length()
    ind = np.zeros(size, dtype=np.float64)
    ind[np.asarray([t - lo for t in A.terms], dtype=np.int64)] = 1.0
    spec = np.fft.rfft(ind)
    r = np.fft.irfft(spec.real ** 2 + spec.imag ** 2, size)
    rr = np.rint(r)
    if np.max(np.abs(r - rr)) >= 0.25:
        raise PrecisionError("FFT autocorrelation not close enough to integers")
    rr = rr.astype(np.int64)
    return int(np.dot(rr, rr))


def fourth_moment_multiplicative(f) -> int | float:
    """sum over ab = cd of f(a) f(b) f(c) f(d) for positive support.

    ``f`` is a positive-domain :class:`RepresentationWeights`, a mapping
    value -> weight, or anything with ``support`` and ``weights``. Products
    ab are grouped and the per-product weight sums squared. Integer weights
    give an exact integer.
    """
    vals, wts = _support_arrays(f)
    s = len(vals)
    if s == 0:
        return 0
    if s * s > pair_budget():
        raise SizeError(f"support^2 = {s * s} exceeds the pair budget")
    exact = wts.dtype.kind in "iuO"
    if vals.dtype != object and int(vals.max()) < (1 << 31):
        prods = np.multiply.outer(vals.astype(np.int64), vals.astype(np.int64)).ravel()
        if exact:
            w = np.multiply.outer(wts.astype(object), wts.astype(object)).ravel()
        else:
            w = np.multiply.outer(wts, wts).ravel()
        order = np.argsort(prods, kind="stable")
        prods = prods[order]
        w = w[order]
        starts = np.flatnonzero(np.r_[True, prods[1:] != prods[:-1]])
        groups = np.add.reduceat(w, starts)
        if exact:
            return sum(int(g) * int(g) for g in groups)
        return math.fsum(float(g) ** 2 for g in groups)
    acc = {}
    for a, fa in zip(vals.tolist(), wts.tolist()):
        for b, fb in zip(vals.tolist(), wts.tolist()):
            acc[a * b] = acc.get(a * b, 0) + fa * fb
    if exact:
        return sum(int(g) ** 2 for g in acc.values())
    return math.fsum(g * g for g in acc.values())


def _support_arrays(f):
    if isinstance(f, RepresentationWeights):
        if f.domain_tag != POSITIVE:
            raise ValueError("fourth moment needs positive_differences weights")
        return np.asarray(f.values), np.asarray(f.counts)
    if hasattr(f, "support") and hasattr(f, "weights"):
        vals, wts = list(f.support), list(f.weights)
    else:
        items = sorted(dict(f).items())
        vals = [k for k, _ in items]
        wts = [w for _, w in items]
    if any(v < 1 for v in vals):
        raise ValueError("support must be positive")
    vals = np.asarray(vals, dtype=np.int64 if all(v < (1 << 62) for v in vals) else object)
    if all(isinstance(w, (int, np.integer)) for w in wts):
        return vals, np.asarray([int(w) for w in wts], dtype=object)
    return vals, np.asarray(wts, dtype=np.float64)


def energy_growth_profile(seq: IntegerSequence, n_grid, C: float) -> list:
    """Energy reports for each prefix A_N, N in ``n_grid``."""
    return [additive_energy(seq.prefix(n), C) for n in n_grid]
