"""Prime tables and factorisation helpers."""

import numpy as np

_spf_cache = np.zeros(0, dtype=np.int32)


def spf_table(n):
    """Smallest-prime-factor table for 0..n (entries 0 and 1 are 0 and 1).

    The table is cached and only rebuilt when a larger ``n`` is requested.
    """
    global _spf_cache
    if _spf_cache.shape[0] > n:
        return _spf_cache[: n + 1]
    size = max(n + 1, 2 * _spf_cache.shape[0], 1024)
    spf = np.zeros(size, dtype=np.int32)
    spf[1] = 1
    spf[2::2] = 2
    for p in range(3, int(size ** 0.5) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
    rest = spf == 0
    rest[0] = False
    spf[rest] = np.flatnonzero(rest)
    _spf_cache = spf
    return spf[: n + 1]


def primes_upto(n):
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, int(n ** 0.5) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n):
    """Trial-division factorisation as a {prime: exponent} dict."""
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out
