"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (a lemma report, a
cross-path disagreement, a Monte Carlo z-score) or a computation raises,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import sys

from . import __version__
from ._config import DEFAULT_BITS
from .errors import MppcError

OK, FAILED, USAGE = 0, 1, 2


# ---------------------------------------------------------------- output

def fmt(value):
    """CSV cell text: exact integers, 17 significant digits for reals."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(format(value, ".17g"))
    if hasattr(value, "item"):
        return _jsonable(value.item())
    return value


def _header_line(args):
    return f"mppc {__version__} {args.command} generated {_dt.datetime.now(_dt.timezone.utc).isoformat()}"


def emit_table(args, columns, rows):
    if args.format == "json":
        payload = {"columns": columns, "rows": [dict(zip(columns, r)) for r in rows]}
        return emit_json(args, payload)
    buf = io.StringIO()
    if not args.suppress_header:
        buf.write("# " + _header_line(args) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    _write(args, buf.getvalue())


def emit_json(args, payload):
    payload = dict(_jsonable(payload))
    if not args.suppress_header:
        payload = {"meta": _header_line(args), **payload}
    _write(args, json.dumps(payload, indent=2, sort_keys=False) + "\n")


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------- commands

def _sequence(args, n=None):
    from .sequences import parse_sequence_spec

    return parse_sequence_spec(args.seq, n if n is not None else max(args.n))


def cmd_seq(args):
    seq = _sequence(args)
    emit_table(args, ["n", "a_n"], [(i + 1, a) for i, a in enumerate(seq.terms)])
    return OK


def cmd_frac(args):
    from .pointset import frac_parts, parse_alpha

    seq = _sequence(args)
    pts = frac_parts(seq, parse_alpha(args.alpha, args.bits))
    rows = [(i + 1, a, float(x), pts.error_bound) for i, (a, x) in enumerate(zip(seq.terms, pts.points))]
    emit_table(args, ["n", "a_n", "point", "error_bound"], rows)
    return OK


def cmd_paircorr(args):
    from .paircorr import pair_correlation, pair_correlation_brute
    from .pointset import frac_parts, parse_alpha

    status = OK
    rows = []
    for n in args.n:
        seq = _sequence(args, n)
        alpha = parse_alpha(args.alpha, args.bits)
        pts = frac_parts(seq, alpha)
        for s in args.s:
            res = pair_correlation(pts, s)
            if args.brute:
                ref = pair_correlation_brute(pts, s)
                if ref.pair_count != res.pair_count:
                    status = FAILED
            rows.append((res.N, res.s, res.pair_count, res.value, res.boundary_pairs, alpha.describe()))
    emit_table(args, ["N", "s", "pair_count", "value", "boundary_pairs", "alpha"], rows)
    return status


def cmd_variance(args):
    from .paircorr import variance_over_alpha

    seq = _sequence(args)
    rows = []
    for n in sorted(args.n):
        for s in args.s:
            v = variance_over_alpha(seq.prefix(n), s, args.m, args.seed, args.bits, args.workers)
            rows.append((v.N, v.s, v.mean, v.target, v.variance, v.M, v.seed))
    emit_table(args, ["N", "s", "mean_R2", "target", "variance", "M", "seed"], rows)
    return OK


def cmd_energy(args):
    from .energy import additive_energy, additive_energy_by_sums, additive_energy_fft

    seq = _sequence(args)
    rows = []
    status = OK
    for n in sorted(args.n):
        rep = additive_energy(seq.prefix(n), args.c)
        if args.check:
            other = additive_energy_fft(seq.prefix(n)) if args.check == "fft" else additive_energy_by_sums(seq.prefix(n))
            if other != rep.energy:
                status = FAILED
        rows.append((rep.N, rep.energy, rep.lower, rep.upper, rep.normalized, rep.C))
    emit_table(args, ["N", "energy", "lower", "upper", "log_ratio", "C"], rows)
    return status


def _support(args):
    from .gcdsums import WeightedSupport, difference_weights, load_support

    if args.support:
        return load_support(args.support)
    if getattr(args, "ones", None):
        return WeightedSupport.ones(range(1, args.ones + 1))
    if args.seq and args.from_differences:
        return difference_weights(_sequence(args))
    raise _Usage("give --support FILE, or --seq/--n with --from-differences")


def cmd_gcdsum(args):
    from .gcdsums import gcd_sum_naive, gcd_sum_sieve, gcd_sum

    f = _support(args)
    rows = []
    status = OK
    for sigma in args.sigma:
        if args.method == "both":
            a, b = gcd_sum_naive(f, sigma), gcd_sum_sieve(f, sigma)
            if abs(a.value - b.value) > 1e-9 * max(abs(a.value), abs(b.value)):
                status = FAILED
            results = [a, b]
        else:
            results = [gcd_sum(f, sigma, args.method)]
        rows.extend((r.sigma, r.value, r.method, r.support_size) for r in results)
    emit_table(args, ["sigma", "value", "method", "support_size"], rows)
    return status


def cmd_zeta_moments(args):
    from .constants import moment_bound_rhs
    from .random_zeta import RandomZetaConfig, moment_estimate

    if args.samples > 0 and args.seed is None:
        raise _Usage("--seed is required when --samples > 0")
    cfg = RandomZetaConfig(args.sigma, args.prime_limit, args.l, args.samples, args.seed or 0)
    est = moment_estimate(cfg)
    rhs = moment_bound_rhs(cfg.l, cfg.sigma)
    applies = cfg.in_moment_range and cfg.l >= 4
    ok = est.exact_log <= rhs
    emit_json(args, {
        "sigma": cfg.sigma, "prime_limit": cfg.prime_limit, "l": cfg.l, "samples": cfg.samples,
        "seed": args.seed, "exact_log": est.exact_log, "mc_mean": est.mc_mean, "mc_stderr": est.mc_stderr,
        "bound_rhs": rhs, "bound_applies": applies, "pass": ok,
    })
    return FAILED if applies and not ok else OK


def cmd_zeta_identity(args):
    from .random_zeta import fourth_moment_D, identity_check

    f = _support(args)
    ident = identity_check(f, args.sigma, args.prime_limit, args.samples, args.seed)
    fourth = fourth_moment_D(f, args.samples, args.seed, args.prime_limit)
    ok = abs(ident.z_score) <= args.z_max and abs(fourth.z_score) <= args.z_max
    emit_json(args, {
        "sigma": args.sigma, "prime_limit": args.prime_limit, "samples": args.samples, "seed": args.seed,
        "support_size": len(f),
        "identity": vars_of(ident), "fourth_moment": vars_of(fourth), "z_max": args.z_max, "pass": ok,
    })
    return OK if ok else FAILED


def vars_of(obj):
    from dataclasses import asdict

    return asdict(obj)


def cmd_verify(args):
    from dataclasses import asdict

    from . import bounds

    target = args.target
    if target == "all":
        payload = bounds.verify_all(include_moments=not args.skip_moments)
    elif target == "constants":
        t = bounds.constants_table()
        ok = abs(t.variance_exponent + 1.0) <= 1e-9
        payload = {"constants": asdict(t), "exponent_chain_ok": ok, "pass": ok}
    else:
        fn = {
            "beta": bounds.verify_lemma_beta_inequality,
            "2alpha": bounds.verify_lemma_2alpha,
            "bessel": bounds.verify_bessel_bound,
            "zeta": bounds.verify_zeta_near_half,
            "moments": bounds.verify_moment_lemma,
        }[target]
        rep = fn()
        payload = {"reports": [rep.to_dict()], "pass": rep.passed}
    emit_json(args, payload)
    return OK if payload["pass"] else FAILED


def cmd_pipeline(args):
    from .gcdsums import difference_set_gcd_sum
    from .paircorr import variance_over_alpha

    seq = _sequence(args)
    rows = []
    for n in sorted(args.n):
        prefix = seq.prefix(n)
        g = difference_set_gcd_sum(prefix, 0.5).value
        for s in args.s:
            v = variance_over_alpha(prefix, s, args.m, args.seed, args.bits, args.workers)
            ratio = v.variance * n ** 3 / (math.log(n) * g) if g > 0 and n > 1 else math.nan
            rows.append((n, s, v.mean, v.target, v.variance, g, ratio, v.M, v.seed))
    emit_table(args, ["N", "s", "mean_R2", "target", "variance", "gcd_sum", "ratio", "M", "seed"], rows)
    return OK


# ---------------------------------------------------------------- parser

class _Usage(Exception):
    pass


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--suppress-header", action="store_true",
                        help="omit the timestamp header so output bytes are fully deterministic")
    common.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker threads (results do not depend on this)")

    seq_opts = argparse.ArgumentParser(add_help=False)
    seq_opts.add_argument("--seq", help="squares | linear | power:<d> | nlogk:<K> | file:<path>")
    seq_opts.add_argument("--n", type=_positive_int, nargs="+", help="prefix length(s) N")

    p = argparse.ArgumentParser(
        prog="mppc",
        description="Pair correlation, additive energy, GCD sums and random Euler product checks.",
        epilog="Environment: MPPC_PAIR_BUDGET (default 4e8), MPPC_SIEVE_LIMIT (default 1e8), "
        "MPPC_DENSE_LIMIT (default 2^26), MPPC_PURE_PYTHON=1 forces the Python kernels.",
    )
    p.add_argument("--version", action="version", version=f"mppc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("seq", parents=[common, seq_opts], help="print a sequence prefix")
    s.set_defaults(func=cmd_seq, need_seq=True)

    s = sub.add_parser("frac", parents=[common, seq_opts], help="fractional parts {a_n alpha}")
    s.add_argument("--alpha", required=True, help="decimal, p/q, or random:<seed>[:<index>]")
    s.add_argument("--bits", type=_positive_int, default=DEFAULT_BITS)
    s.set_defaults(func=cmd_frac, need_seq=True)

    s = sub.add_parser("paircorr", parents=[common, seq_opts], help="pair correlation R_2(s, alpha, N)")
    s.add_argument("--alpha", required=True, help="decimal, p/q, or random:<seed>[:<index>]")
    s.add_argument("--s", type=_positive_float, nargs="+", required=True)
    s.add_argument("--bits", type=_positive_int, default=DEFAULT_BITS)
    s.add_argument("--brute", action="store_true", help="also run the quadratic reference and compare")
    s.set_defaults(func=cmd_paircorr, need_seq=True)

    s = sub.add_parser("variance", parents=[common, seq_opts], help="variance of R_2 over random alpha")
    s.add_argument("--s", type=_positive_float, nargs="+", required=True)
    s.add_argument("--m", type=int, required=True, help="number of alpha samples (>= 2)")
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--bits", type=_positive_int, default=DEFAULT_BITS)
    s.set_defaults(func=cmd_variance, need_seq=True)

    s = sub.add_parser("energy", parents=[common, seq_opts], help="additive energy of prefixes")
    s.add_argument("--c", type=float, default=0.0, help="exponent C in E (log N)^C / N^3")
    s.add_argument("--check", choices=["sums", "fft"], help="cross-check against another route")
    s.set_defaults(func=cmd_energy, need_seq=True)

    s = sub.add_parser("gcdsum", parents=[common, seq_opts], help="GCD sum S_f(sigma)")
    s.add_argument("--support", help="file of value:weight lines")
    s.add_argument("--from-differences", action="store_true", help="f = r_A on positive differences of --seq")
    s.add_argument("--sigma", type=float, nargs="+", default=[0.5])
    s.add_argument("--method", choices=["auto", "naive", "sieve", "both"], default="auto")
    s.set_defaults(func=cmd_gcdsum, need_seq=False)

    s = sub.add_parser("zeta-moments", parents=[common], help="exact truncated 2l-th moment of the random product")
    s.add_argument("--sigma", type=float, required=True)
    s.add_argument("--prime-limit", type=int, required=True)
    s.add_argument("--l", type=_positive_int, default=4)
    s.add_argument("--samples", type=int, default=0)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_zeta_moments, need_seq=False)

    s = sub.add_parser("zeta-identity", parents=[common], help="Monte Carlo check of the moment/GCD-sum identity")
    s.add_argument("--support", help="file of value:weight lines (must be P-smooth)")
    s.add_argument("--ones", type=_positive_int, help="use f = 1 on {1..K}")
    s.add_argument("--sigma", type=float, required=True)
    s.add_argument("--prime-limit", type=int, required=True)
    s.add_argument("--samples", type=_positive_int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--z-max", type=float, default=4.0)
    s.set_defaults(func=cmd_zeta_identity, need_seq=False, seq=None, from_differences=False)

    s = sub.add_parser("verify", parents=[common], help="certify constants and lemma inequalities")
    s.add_argument("target", choices=["all", "constants", "beta", "2alpha", "bessel", "zeta", "moments"])
    s.add_argument("--skip-moments", action="store_true", help="with 'all': skip the prime-product moment check")
    s.set_defaults(func=cmd_verify, need_seq=False)

    s = sub.add_parser("pipeline", parents=[common, seq_opts], help="variance vs difference-set GCD sum table")
    s.add_argument("--s", type=_positive_float, nargs="+", default=[1.0])
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--bits", type=_positive_int, default=DEFAULT_BITS)
    s.set_defaults(func=cmd_pipeline, need_seq=True)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    json_only = args.command in ("zeta-moments", "zeta-identity", "verify")
    if json_only:
        args.format = "json"
    if args.need_seq and (not args.seq or not args.n):
        parser.error(f"{args.command} needs --seq and --n")
    if getattr(args, "m", None) is not None and args.m < 2:
        parser.error("--m must be at least 2")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except MppcError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED
    except OSError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return FAILED
    except ValueError as exc:
        # malformed --seq / --alpha / --support text
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
