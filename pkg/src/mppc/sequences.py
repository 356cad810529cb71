"""Strictly increasing integer sequences: generators and file loading."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import mpmath
import numpy as np

from .errors import DomainError, NotIncreasingError, ParseError, PrecisionError

_PRECISION_LADDER = (80, 160, 320, 512)
_INTEGER_GUARD = mpmath.mpf(2) ** -40


@dataclass(frozen=True)
class IntegerSequence:
    """First N terms a_1 < a_2 < ... < a_N of a natural-number sequence."""

    terms: tuple
    label: str = ""

    def __post_init__(self):
        terms = tuple(int(t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        if terms and terms[0] < 1:
            raise ValueError(f"terms must be >= 1, got {terms[0]}")
        for i in range(1, len(terms)):
            if terms[i] <= terms[i - 1]:
                raise NotIncreasingError(
                    f"term {i + 1} ({terms[i]}) does not exceed term {i} ({terms[i - 1]})",
                    index=i + 1,
                )

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def prefix(self, n: int) -> "IntegerSequence":
        if n > len(self.terms):
            raise ValueError(f"prefix {n} longer than sequence ({len(self.terms)})")
        return IntegerSequence(self.terms[:n], f"{self.label}[:{n}]")

    def fits_int64(self) -> bool:
        return not self.terms or self.terms[-1] < (1 << 62)

    def as_array(self) -> np.ndarray:
        """Terms as int64; only valid when :meth:`fits_int64` holds."""
        if not self.fits_int64():
            raise OverflowError("terms exceed the int64 fast path")
        return np.asarray(self.terms, dtype=np.int64)


def gen_power(d: int, n: int) -> IntegerSequence:
    if d < 1:
        raise DomainError("power d must be >= 1")
    return IntegerSequence(tuple(k ** d for k in range(1, n + 1)), f"power(d={d})")


def _nlogk_value(n, k, bits):
    with mpmath.workprec(bits):
        x = mpmath.mpf(n)
        return x * mpmath.power(mpmath.log(x), mpmath.mpf(k))


def nlogk_term(n: int, k: float) -> int:
    """floor(n * (log n)**k), certified by agreement across two precisions.

    The floor is accepted once two working precisions give the same floor and
    the value is not within 2**-40 of an integer; otherwise precision is raised
    up to 512 bits before giving up.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if n == 1:
        return 0
    for lo, hi in zip(_PRECISION_LADDER, _PRECISION_LADDER[1:]):
        v_lo = _nlogk_value(n, k, lo)
        v_hi = _nlogk_value(n, k, hi)
        f_lo = int(mpmath.floor(v_lo))
        f_hi = int(mpmath.floor(v_hi))
        with mpmath.workprec(hi):
            gap = min(v_hi - f_hi, f_hi + 1 - v_hi)
        if f_lo == f_hi and gap > _INTEGER_GUARD:
            return f_hi
    raise PrecisionError(f"cannot certify floor(n (log n)^K) for n={n}, K={k} within 512 bits")


def gen_nlogk(k: float, n: int, start: int | None = None) -> IntegerSequence:
    """N terms of floor(m (log m)^K) for m = start, start+1, ...

    By default the sequence starts at the first m >= 2 from which terms are
    positive and strictly increasing (2 or 3: for m >= 3 the derivative of
    m (log m)^K exceeds 1, so floors strictly increase from there on).
    The chosen start is recorded in the label.
    """
    if k < 1:
        raise DomainError(f"K must be >= 1, got {k}")
    if start is None:
        t2, t3 = nlogk_term(2, k), nlogk_term(3, k)
        start = 2 if 1 <= t2 < t3 else 3
    elif start < 2:
        raise DomainError("start must be >= 2 (the m = 1 term is 0)")
    terms = []
    for m in range(start, start + n):
        t = nlogk_term(m, k)
        if terms and t <= terms[-1]:
            raise NotIncreasingError(f"terms collide at m={m}", index=len(terms) + 1)
        terms.append(t)
    return IntegerSequence(tuple(terms), f"nlogk(K={k},n0={start})")


def load_sequence(path) -> IntegerSequence:
    """Read a sequence file.

    Accepted layouts: one integer per line, or OEIS b-file lines
    ``index value``. A file is read as a b-file when every data line has
    exactly two fields. Blank lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    rows = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        try:
            rows.append((lineno, [int(f) for f in fields]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: not an integer line: {raw!r}", line=lineno) from None
    bfile = bool(rows) and all(len(f) == 2 for _, f in rows)
    values = []
    last_index = None
    for lineno, fields in rows:
        if bfile:
            index, value = fields
            if last_index is not None and index <= last_index:
                raise ParseError(f"{path}:{lineno}: b-file index {index} out of order", line=lineno)
            last_index = index
            fields = [value]
        elif len(fields) != 1:
            raise ParseError(f"{path}:{lineno}: expected one integer, got {len(fields)}", line=lineno)
        if fields[0] < 1:
            raise ParseError(f"{path}:{lineno}: term {fields[0]} is not a natural number", line=lineno)
        values.append(fields[0])
    return IntegerSequence(tuple(values), f"file({path.name})")


def parse_sequence_spec(spec: str, n: int) -> IntegerSequence:
    """Build a sequence from a CLI spec string.

    ``squares``, ``linear``, ``power:<d>``, ``nlogk:<K>``, ``file:<path>``.
    """
    name, _, arg = spec.partition(":")
    if name == "squares":
        return gen_power(2, n)
    if name == "linear":
        return gen_power(1, n)
    if name == "power":
        return gen_power(int(arg), n)
    if name == "nlogk":
        return gen_nlogk(float(Fraction(arg)), n)
    if name == "file":
        seq = load_sequence(arg)
        return seq.prefix(n) if n < len(seq) else seq
    raise ValueError(f"unknown sequence spec {spec!r}")
