"""Time each hot kernel on the compiled and pure-Python backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import sys
import timeit

import numpy as np

from mppc import _kernels
from mppc.arith import spf_table


def workloads():
    rng = np.random.default_rng(0)
    xs = np.sort(rng.random(200_000))
    diffs = np.unique(rng.integers(1, 4_000_000, 2000)).astype(np.int64)
    v = np.unique(rng.integers(1, 10**6, 1500)).astype(np.int64)
    w = rng.random(v.size)
    spf = spf_table(int(v[-1]))
    a = np.linspace(1e-4, 3**-0.5, 2000)
    cosx = np.cos(np.linspace(0.0, 2 * np.pi, 2000))
    return {
        "count_close_pairs (N=2e5)": lambda k: k.count_close_pairs(xs, 1.0 / xs.size),
        "positive_difference_counts (N=2e3)": lambda k: k.positive_difference_counts(diffs, 1 << 26),
        "gcd_sum_naive (|f|=1.5e3)": lambda k: k.gcd_sum_naive(v, w, 0.5),
        "gcd_sum_sieve (|f|=1.5e3, max 1e6)": lambda k: k.gcd_sum_sieve(v, w, 0.5, spf),
        "lemma_beta_min (2e3 x 2e3)": lambda k: k.lemma_beta_min(a, cosx, 1.7031673999611887),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write results here")
    args = ap.parse_args(argv)
    try:
        backends = {"cython": _kernels.backend("cython")}
    except ImportError:
        print("compiled kernels not built; nothing to compare", file=sys.stderr)
        return 1
    backends["python"] = _kernels.backend("python")

    rows = []
    print(f"{'kernel':40s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in workloads().items():
        t = {b: min(timeit.repeat(lambda: fn(k), number=1, repeat=args.repeat)) for b, k in backends.items()}
        rows.append({"kernel": name, **t, "speedup": t["python"] / t["cython"]})
        print(f"{name:40s} {t['cython']:10.4f} {t['python']:10.4f} {t['python'] / t['cython']:8.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
