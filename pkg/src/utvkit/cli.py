"""Command-line harness: generate matrices, factor them, sweep errors, time runs.

Exit codes: 0 on success, 1 on usage or I/O errors, 2 on numerical-
consistency failures (an emitted curve dipping below the optimal curve, or a
projector-equivalence check exceeding its tolerance).
"""

import argparse
import csv
import sys
import time as _time
from datetime import datetime, timezone

import numpy as np

from .bench import (ErrorCurve, RunRecord, floor_violation, svd_curve,
                    trailing_fro_curve, trailing_spectral_curve,
                    write_error_csv)
from .errors import ConsistencyError
from .matgen import (KINDS, gen_bie, gen_fast_decay, gen_gaussian, gen_kahan,
                     gen_s_shaped)
from .matrix import RngStream, gaussian, read_matrix, write_matrix
from .powerurv import power_urv, power_urv_from_sample, rurv
from .qr import hqrcp, materialize_q
from .randutv import randutv_basic, randutv_boosted, randutv_partial
from .rsvd import projector_gap, rsvd
from .svd import svd_dense

ALGOS = ("svd", "cpqr", "rurv", "powerurv", "randutv", "randutv-os")

PROJECTOR_GAP_TOL = 1e-10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def generate(kind, n, seed, beta=1e-5, theta=1.2):
    """Build one of the named test matrices; returns (matrix, sigma_or_None)."""
    rng = RngStream(seed)
    if kind == "fast":
        return gen_fast_decay(n, beta, rng)
    if kind == "s":
        return gen_s_shaped(n, rng)
    if kind == "bie":
        return gen_bie(n), None
    if kind == "kahan":
        return gen_kahan(n, theta), None
    if kind == "gaussian":
        return gen_gaussian(n, rng), None
    raise ValueError(f"unknown matrix kind {kind!r}")


def run_factorization(a, algo, b, p, q, seed, tol_fro=None, max_rank=None):
    """Run one algorithm and return dense (U, T, V) plus the result object."""
    rng = RngStream(seed)
    if algo == "svd":
        f = svd_dense(a, mode="full")
        t = np.zeros(a.shape)
        np.fill_diagonal(t, f.sigma)
        return f.U, t, f.V, f
    if algo == "cpqr":
        f = hqrcp(a)
        v = np.eye(a.shape[1])[:, f.perm]
        return materialize_q(f.q), f.R, v, f
    if algo == "rurv":
        f = rurv(a, rng)
        return f.U, f.R, f.V, f
    if algo == "powerurv":
        f = power_urv(a, q, rng)
        return f.U, f.R, f.V, f
    if algo == "randutv":
        f = randutv_basic(a, b, q, rng)
        return f.U, f.T, f.V, f
    if algo == "randutv-os":
        if tol_fro is not None or max_rank is not None:
            f = randutv_partial(a, b, q, p, rng, tol_fro=tol_fro, max_rank=max_rank)
        else:
            f = randutv_boosted(a, b, q, p, rng)
        return f.U, f.T, f.V, f
    raise ValueError(f"unknown algorithm {algo!r}")


def _cmd_gen(args):
    a, _ = generate(args.kind, args.n, args.seed, beta=args.beta, theta=args.theta)
    write_matrix(a, args.out)
    print(f"wrote {args.kind} matrix {a.shape[0]}x{a.shape[1]} to {args.out}")
    return 0


def _write_manifest(prefix, algo, b, p, q, seed):
    with open(f"{prefix}.manifest", "w", encoding="ascii") as fh:
        for key, val in (("algo", algo), ("b", b), ("p", p), ("q", q), ("seed", seed)):
            fh.write(f"{key}={val}\n")


def _read_manifest(prefix):
    out = {}
    with open(f"{prefix}.manifest", "r", encoding="ascii") as fh:
        for line in fh:
            key, _, val = line.strip().partition("=")
            out[key] = val
    return out


def _cmd_factor(args):
    a = read_matrix(args.infile)
    u, t, v, _ = run_factorization(a, args.algo, args.b, args.p, args.q,
                                   args.seed, tol_fro=args.tol_fro,
                                   max_rank=args.max_rank)
    write_matrix(u, f"{args.out_prefix}.U.mtx")
    write_matrix(t, f"{args.out_prefix}.T.mtx")
    write_matrix(v, f"{args.out_prefix}.V.mtx")
    _write_manifest(args.out_prefix, args.algo, args.b, args.p, args.q, args.seed)
    print(f"factored {args.infile} with {args.algo}; factors at {args.out_prefix}.*")
    return 0


def _cmd_errors(args):
    a = read_matrix(args.infile)
    manifest = _read_manifest(args.factors)
    algo = manifest.get("algo", "unknown")
    t = read_matrix(f"{args.factors}.T.mtx")
    if t.shape[1] != a.shape[1]:
        raise ValueError(f"stored T is for {t.shape[1]} columns, matrix has {a.shape[1]}")
    opt = svd_curve(svd_dense(a, mode="thin").sigma, norm=args.norm)
    if algo == "svd":
        curve = svd_curve(np.diag(t), norm=args.norm)
    else:
        e = (trailing_fro_curve(t) if args.norm == "fro"
             else trailing_spectral_curve(t))
        curve = ErrorCurve(algo=algo, norm=args.norm,
                           k_values=np.arange(1, t.shape[1]), e_k=e)
    write_error_csv(args.csv, curve, opt)
    gap = floor_violation(curve, opt)
    if gap > 0.0:
        print(f"optimality floor violated by {gap:.3e}", file=sys.stderr)
        return 2
    print(f"wrote {curve.e_k.shape[0]} rows to {args.csv}")
    return 0


def _cmd_check_rsvd(args):
    rng = RngStream(args.seed)
    a = gen_gaussian(args.n, rng)
    g = gaussian(args.n, args.n, rng)
    urv = power_urv_from_sample(a, args.q, g)
    rs = rsvd(a, g, args.ell, args.q)
    u_lead = materialize_q(urv.Uq, ncols=args.ell)
    gap = projector_gap(u_lead, rs.U_rsvd, a)
    print(f"projector gap (n={args.n}, ell={args.ell}, q={args.q}): {gap:.3e}")
    if gap > PROJECTOR_GAP_TOL:
        print(f"gap exceeds tolerance {PROJECTOR_GAP_TOL:.1e}", file=sys.stderr)
        return 2
    return 0


def _cmd_time(args):
    a, _ = generate(args.kind, args.n, args.seed, beta=args.beta, theta=args.theta)
    times = []
    for rep in range(args.reps + 1):
        t0 = _time.perf_counter()
        run_factorization(a, args.algo, args.b, args.p, args.q, args.seed)
        elapsed = _time.perf_counter() - t0
        if rep > 0:  # first rep is warmup
            times.append(elapsed)
    stamp = datetime.now(timezone.utc).isoformat()
    if args.csv:
        with open(args.csv, "w", newline="", encoding="ascii") as fh:
            w = csv.writer(fh)
            w.writerow(RunRecord.FIELDS)
            for elapsed in times:
                rec = RunRecord(kind=args.kind, n=args.n, algo=args.algo,
                                b=args.b, p=args.p, q=args.q, seed=args.seed,
                                wall_time_seconds=elapsed, timestamp=stamp)
                w.writerow(rec.row())
    print(f"{args.algo} n={args.n}: median {np.median(times):.6f} s over {len(times)} reps")
    return 0


def build_parser():
    parser = _Parser(prog="utvkit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a test matrix")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--beta", type=float, default=1e-5)
    g.add_argument("--theta", type=float, default=1.2)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    f = sub.add_parser("factor", help="factor a matrix from file")
    f.add_argument("--algo", choices=ALGOS, required=True)
    f.add_argument("--b", type=int, default=50)
    f.add_argument("--p", type=int, default=0)
    f.add_argument("--q", type=int, default=1)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--in", dest="infile", required=True)
    f.add_argument("--out-prefix", required=True)
    f.add_argument("--tol-fro", type=float, default=None)
    f.add_argument("--max-rank", type=int, default=None)
    f.set_defaults(func=_cmd_factor)

    e = sub.add_parser("errors", help="sweep rank-k errors of stored factors")
    e.add_argument("--in", dest="infile", required=True)
    e.add_argument("--factors", required=True)
    e.add_argument("--norm", choices=("spectral", "fro"), default="spectral")
    e.add_argument("--csv", required=True)
    e.set_defaults(func=_cmd_errors)

    c = sub.add_parser("check-rsvd", help="projector equivalence of powerURV and RSVD")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--ell", type=int, required=True)
    c.add_argument("--q", type=int, default=1)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=_cmd_check_rsvd)

    t = sub.add_parser("time", help="time a factorization")
    t.add_argument("--algo", choices=ALGOS, required=True)
    t.add_argument("--kind", choices=KINDS, default="gaussian")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--beta", type=float, default=1e-5)
    t.add_argument("--theta", type=float, default=1.2)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--b", type=int, default=50)
    t.add_argument("--p", type=int, default=0)
    t.add_argument("--q", type=int, default=1)
    t.add_argument("--reps", type=int, default=3)
    t.add_argument("--csv", default=None)
    t.set_defaults(func=_cmd_time)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ConsistencyError as exc:
        print(f"numerical-consistency failure: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
