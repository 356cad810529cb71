"""Pure Python / numpy versions of the compiled kernels.

Each function has the same signature and the same floating-point predicates
as its counterpart in ``_core.pyx`` so both backends return identical counts.
"""

import math

import numpy as np

_BLOCK = 1 << 22


def count_close_pairs(xs, t):
    """Unordered pairs of the sorted points ``xs`` at circular distance <= t (t < 1/2)."""
    xs = [float(x) for x in xs]
    n = len(xs)
    total = 0
    j = 0
    for i in range(n):
        xi = xs[i]
        if j < i + 1:
            j = i + 1
        while j < n and xs[j] - xi <= t:
            j += 1
        total += j - i - 1
    j = 0
    for i in range(n):
        xi = xs[i]
        while j < i and 1.0 - (xi - xs[j]) <= t:
            j += 1
        total += j
    return total


def positive_difference_counts(a, dense_limit):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if n < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    span = int(a[-1] - a[0])
    rows = max(1, _BLOCK // n)
    if span <= dense_limit:
        counts = np.zeros(span + 1, dtype=np.int64)
        for lo in range(0, n - 1, rows):
            hi = min(n - 1, lo + rows)
            d = a[None, :] - a[lo:hi, None]
            mask = np.arange(n)[None, :] > np.arange(lo, hi)[:, None]
            counts += np.bincount(d[mask], minlength=span + 1)
        vals = np.flatnonzero(counts)
        return vals.astype(np.int64), counts[vals]
    parts = []
    for i in range(n - 1):
        parts.append(a[i + 1:] - a[i])
    diffs = np.concatenate(parts)
    vals, counts = np.unique(diffs, return_counts=True)
    return vals.astype(np.int64), counts.astype(np.int64)


def gcd_sum_naive(v, w, sigma):
    v = np.asarray(v, dtype=np.int64)
    w = np.asarray(w, dtype=np.float64)
    logs = np.log(v.astype(np.float64))
    rows = []
    for i in range(v.shape[0] - 1):
        g = np.gcd(v[i], v[i + 1:]).astype(np.float64)
        terms = w[i] * w[i + 1:] * np.exp(sigma * (2.0 * np.log(g) - logs[i] - logs[i + 1:]))
        rows.append(math.fsum(terms))
    return math.fsum(w * w) + 2.0 * math.fsum(rows)


def _factor(a, spf):
    out = []
    while a > 1:
        p = int(spf[a])
        e = 0
        while a % p == 0:
            a //= p
            e += 1
        out.append((p, e))
    return out


def _jordan(d, s2, spf):
    out = 1.0
    for p, k in _factor(d, spf):
        lp = math.log(p)
        out *= math.exp(s2 * (k - 1) * lp) * math.expm1(s2 * lp)
    return out


def gcd_sum_sieve(v, w, sigma, spf):
    g = {}
    for a, wa in zip(v, w):
        a = int(a)
        if wa == 0.0:
            continue
        t = float(wa) * math.exp(-sigma * math.log(a))
        divs = [1]
        for p, e in _factor(a, spf):
            base = list(divs)
            pk = 1
            for _ in range(e):
                pk *= p
                divs.extend(d * pk for d in base)
        for d in divs:
            g[d] = g.get(d, 0.0) + t
    s2 = 2.0 * sigma
    return math.fsum(_jordan(d, s2, spf) * g[d] * g[d] for d in sorted(g))


def lemma_beta_min(a, cosx, beta):
    a = np.asarray(a, dtype=np.float64)
    c = np.asarray(cosx, dtype=np.float64)
    best, bi, bj = math.inf, 0, 0
    rows = max(1, _BLOCK // max(1, c.shape[0]))
    for lo in range(0, a.shape[0], rows):
        ai = a[lo:lo + rows, None]
        a2 = ai * ai
        h = beta * a2 + 2.0 * ai * c[None, :] + np.log1p(a2 - 2.0 * ai * c[None, :])
        k = int(np.argmin(h))
        i, j = divmod(k, c.shape[0])
        if h[i, j] < best:
            best, bi, bj = float(h[i, j]), lo + i, j
    return best, bi, bj
