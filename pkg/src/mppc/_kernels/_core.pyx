# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Signatures mirror ``_fallback``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p, expm1

cnp.import_array()

cdef extern from *:
    int __builtin_ctzll(unsigned long long x) nogil


cdef inline unsigned long long _bgcd(unsigned long long u, unsigned long long v) noexcept nogil:
    cdef int shift
    if u == 0:
        return v
    if v == 0:
        return u
    shift = __builtin_ctzll(u | v)
    u >>= __builtin_ctzll(u)
    while v != 0:
        v >>= __builtin_ctzll(v)
        if u > v:
            u, v = v, u
        v -= u
    return u << shift


cdef inline void _neumaier(double x, double* s, double* c) noexcept nogil:
    cdef double t = s[0] + x
    if (s[0] if s[0] >= 0 else -s[0]) >= (x if x >= 0 else -x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def count_close_pairs(const double[::1] xs, double t):
    cdef Py_ssize_t n = xs.shape[0], i, j
    cdef long long total = 0
    with nogil:
        j = 0
        for i in range(n):
            if j < i + 1:
                j = i + 1
            while j < n and xs[j] - xs[i] <= t:
                j += 1
            total += j - i - 1
        j = 0
        for i in range(n):
            while j < i and 1.0 - (xs[i] - xs[j]) <= t:
                j += 1
            total += j
    return total


def positive_difference_counts(const long long[::1] a, long long dense_limit):
    cdef Py_ssize_t n = a.shape[0], i, j, k
    cdef long long span
    cdef cnp.int32_t[::1] dense
    cdef cnp.int64_t[::1] diffs
    if n < 2:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    span = a[n - 1] - a[0]
    if span <= dense_limit:
        dense_arr = np.zeros(span + 1, dtype=np.int32)
        dense = dense_arr
        with nogil:
            for i in range(n):
                for j in range(i + 1, n):
                    dense[a[j] - a[i]] += 1
        vals = np.flatnonzero(dense_arr)
        return vals.astype(np.int64), dense_arr[vals].astype(np.int64)
    diffs_arr = np.empty(n * (n - 1) // 2, dtype=np.int64)
    diffs = diffs_arr
    k = 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                diffs[k] = a[j] - a[i]
                k += 1
    diffs_arr.sort()
    vals, counts = np.unique(diffs_arr, return_counts=True)
    return vals.astype(np.int64), counts.astype(np.int64)


cdef enum:
    GTAB = 4096


def gcd_sum_naive(const long long[::1] v, const double[::1] w, double sigma):
    cdef Py_ssize_t n = v.shape[0], i, j
    cdef double s_diag = 0.0, c_diag = 0.0, s_off = 0.0, c_off = 0.0
    cdef double xi, term
    cdef unsigned long long g
    cdef double gpow[GTAB]
    # x_i = w_i v_i^-sigma, so a pair contributes x_i x_j g^{2 sigma}
    x_arr = np.asarray(w, dtype=np.float64) * np.exp(-sigma * np.log(np.asarray(v, dtype=np.float64)))
    cdef const double[::1] x = x_arr
    with nogil:
        gpow[0] = 0.0
        for i in range(1, GTAB):
            gpow[i] = exp(2.0 * sigma * log(<double>i))
        for i in range(n):
            _neumaier(w[i] * w[i], &s_diag, &c_diag)
            xi = x[i]
            if xi == 0.0:
                continue
            for j in range(i + 1, n):
                if x[j] == 0.0:
                    continue
                g = _bgcd(<unsigned long long>v[i], <unsigned long long>v[j])
                if g == 1:
                    term = xi * x[j]
                elif g < GTAB:
                    term = xi * x[j] * gpow[g]
                else:
                    term = xi * x[j] * exp(2.0 * sigma * log(<double>g))
                _neumaier(term, &s_off, &c_off)
    return (s_diag + c_diag) + 2.0 * (s_off + c_off)


cdef inline double _jordan(long long d, double s2, const int[::1] spf) noexcept nogil:
    # multiplicative: J(p^k) = p^{s2 (k-1)} (p^{s2} - 1)
    cdef double out = 1.0
    cdef long long p
    cdef int k
    while d > 1:
        p = spf[d]
        k = 0
        while d % p == 0:
            d //= p
            k += 1
        out *= exp(s2 * (k - 1) * log(<double>p)) * expm1(s2 * log(<double>p))
    return out


def gcd_sum_sieve(const long long[::1] v, const double[::1] w, double sigma, const int[::1] spf):
    cdef Py_ssize_t n = v.shape[0], i, q, m, ndiv, start
    cdef long long a, p, maxv = 0, d
    cdef int k, e, nprimes
    cdef double t, gd, s = 0.0, c = 0.0, s2 = 2.0 * sigma
    cdef long long ps[64]
    cdef int es[64]
    cdef long long divs[20000]
    for i in range(n):
        if v[i] > maxv:
            maxv = v[i]
    g_arr = np.zeros(maxv + 1, dtype=np.float64)
    cdef double[::1] g = g_arr
    with nogil:
        for i in range(n):
            if w[i] == 0.0:
                continue
            a = v[i]
            t = w[i] * exp(-sigma * log(<double>a))
            nprimes = 0
            while a > 1:
                p = spf[a]
                e = 0
                while a % p == 0:
                    a //= p
                    e += 1
                ps[nprimes] = p
                es[nprimes] = e
                nprimes += 1
            divs[0] = 1
            ndiv = 1
            for k in range(nprimes):
                start = ndiv
                m = 0
                for e in range(es[k]):
                    for q in range(start):
                        divs[ndiv] = divs[m + q] * ps[k]
                        ndiv += 1
                    m += start
            for q in range(ndiv):
                g[divs[q]] += t
        for d in range(1, maxv + 1):
            gd = g[d]
            if gd != 0.0:
                _neumaier(_jordan(d, s2, spf) * gd * gd, &s, &c)
    return s + c


def lemma_beta_min(const double[::1] a, const double[::1] cosx, double beta):
    cdef Py_ssize_t na = a.shape[0], nx = cosx.shape[0], i, j, bi = 0, bj = 0
    cdef double best = 1e300, h, ai, a2
    with nogil:
        for i in range(na):
            ai = a[i]
            a2 = ai * ai
            for j in range(nx):
                h = beta * a2 + 2.0 * ai * cosx[j] + log1p(a2 - 2.0 * ai * cosx[j])
                if h < best:
                    best = h
                    bi = i
                    bj = j
    return best, bi, bj
