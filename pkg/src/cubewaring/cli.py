"""Command-line front end.

Every operation of the library is reachable through a subcommand, with
machine-readable output:

    expsum, series, local, reps, rho, smoothcount, dissect, arcint, vbeta,
    mainterm, lowerbound, table1, moments, verify-all

JSON output follows {command, params, results, diagnostics{tolerances,
guards, runtime_ms}}; CSV output is a plain header + rows table.  Floats
print with 10 significant digits, counts exactly.  Runs are reproducible
for fixed arguments and seed (the runtime_ms diagnostic is the one
necessarily varying field).

Exit codes: 0 success, 2 usage error, 3 cost-guard violation, 4 internal
assertion failure.
"""

import argparse
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import checks, circle, dickman, expsums, guards, localsolve, predict, reps, series


def _fmt(x):
    """10 significant digits for floats, exact ints, recursive containers."""
    if isinstance(x, bool) or isinstance(x, int):
        return x
    if isinstance(x, float):
        return float(f"{x:.10g}")
    if isinstance(x, complex):
        return {"re": _fmt(x.real), "im": _fmt(x.imag)}
    if isinstance(x, dict):
        return {k: _fmt(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_fmt(v) for v in x]
    return x


def _write(args, payload, rows=None):
    """Emit JSON (payload) or CSV (rows = (header, iterable of tuples))."""
    out = sys.stdout
    path = args.output
    if path is not None:
        outdir = os.environ.get("CUBEWARING_OUTDIR")
        if outdir and not os.path.isabs(path):
            path = os.path.join(outdir, path)
        out = open(path, "w")
    try:
        if args.format == "csv" and rows is not None:
            header, data = rows
            out.write(",".join(header) + "\n")
            for row in data:
                out.write(",".join(str(_fmt(v)) for v in row) + "\n")
        else:
            json.dump(_fmt(payload), out, indent=1)
            out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()


def _payload(command, params, results, tolerances=None, guards_used=None, t0=None):
    return {
        "command": command,
        "params": params,
        "results": results,
        "diagnostics": {
            "tolerances": tolerances or {},
            "guards": guards_used or {},
            "runtime_ms": (time.perf_counter() - t0) * 1000.0 if t0 else None,
        },
    }


def _warn_smooth_box(P, eta):
    if eta is not None and math.floor(float(P) ** eta) < 2:
        print(
            f"warning: P^eta = {float(P)**eta:.3f} < 2, smooth set reduces to {{1}}",
            file=sys.stderr,
        )


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_expsum(args, t0):
    kind = args.kind
    if kind == "power":
        v = expsums.power_sum(args.q, args.a, args.k)
    elif kind == "twisted":
        v = expsums.twisted_sum(args.q, args.a, args.b, args.k)
    elif kind == "triple-direct":
        v = expsums.triple_sum_direct(args.q, args.a, args.k, guard_scale=args.guard_scale)
    else:
        v = expsums.triple_sum_fast(args.q, args.a, args.k)
    res = {"re": v.re, "im": v.im, "abs": abs(v.value), "kind": v.kind}
    _write(args, _payload("expsum", vars_of(args), res,
                          guards_used={"triple_direct_max_q": expsums.TRIPLE_DIRECT_MAX_Q}, t0=t0))


def _cmd_series(args, t0):
    if args.op == "term":
        t = series.series_term(args.q, args.n, args.s, args.k, guard_scale=args.guard_scale)
        res = {"q": t.q, "value_re": t.value.real, "value_im": t.value.imag, "abs_term": t.abs_value}
    elif args.op == "sigma":
        sp = series.sigma_p(args.p, args.n, args.s, args.k, L=args.level, guard_scale=args.guard_scale)
        res = {"p": sp.p, "value": sp.value, "tail_estimate": sp.tail_estimate, "terms": list(sp.terms)}
    else:
        r = series.singular_series(args.n, args.s, args.k, Q=args.Q, guard_scale=args.guard_scale)
        res = {
            "partial_sum": r.partial_sum,
            "euler_product": r.euler_product,
            "tail_bound": r.tail_bound,
            "positive": r.positive,
            "imag_max": r.imag_max,
        }
    _write(args, _payload("series", vars_of(args), res,
                          tolerances={"series_real_imag": 1e-6}, t0=t0))


def _cmd_local(args, t0):
    if args.op == "m33":
        rs = localsolve.m33_set(args.p, args.h, guard_scale=args.guard_scale)
        missing = [int(i) for i in range(rs.modulus) if not rs.members[i]]
        res = {"modulus": rs.modulus, "size": int(rs.members.sum()), "missing": missing}
    elif args.op == "count":
        lc = localsolve.local_count(args.p, args.h, args.s, args.n, args.k, guard_scale=args.guard_scale)
        res = {"count": lc.count, "count_star": lc.count_star}
    elif args.op == "orthogonality":
        lhs, rhs, disc = localsolve.orthogonality_check(
            args.p, args.h, args.s, args.n, args.k, guard_scale=args.guard_scale
        )
        res = {"lhs_re": lhs.real, "lhs_im": lhs.imag, "rhs": rhs, "discrepancy": disc}
    elif args.op == "coverage":
        res = {"covers": localsolve.residue_coverage(args.k, args.u, guard_scale=args.guard_scale)}
    elif args.op == "congruence":
        res = {"count": localsolve.congruence_count(args.q, args.P, args.h, args.k, guard_scale=args.guard_scale)}
    else:
        lhs, rhs, rel = localsolve.moment_identity(args.q, args.P, args.h, args.k, guard_scale=args.guard_scale)
        res = {"moment_sum": lhs, "q_times_count": rhs, "relative_gap": rel}
    _write(args, _payload("local", vars_of(args), res, t0=t0))


def _cmd_reps(args, t0):
    if args.mode == "smooth" and args.eta is None:
        args.eta = 0.1
    _warn_smooth_box(args.P, args.eta)
    table = reps.representation_table(
        args.P, args.s, args.k, mode=args.mode, eta=args.eta,
        n_max=args.n_max, guard_scale=args.guard_scale,
    )
    nz = [(int(n), int(c)) for n, c in enumerate(table.counts) if c]
    payload = _payload(
        "reps", vars_of(args),
        {"N": table.N, "mode": table.mode, "nonzero": len(nz),
         "total_mass": int(table.counts.sum()), "counts": nz},
        t0=t0,
    )
    _write(args, payload, rows=(["n", "count"], nz))


def _cmd_rho(args, t0):
    _write(args, _payload("rho", vars_of(args), {"x": args.x, "rho": float(dickman.rho(args.x))},
                          tolerances={"absolute": 1e-8}, t0=t0))


def _cmd_smoothcount(args, t0):
    _warn_smooth_box(args.P, args.eta)
    c = dickman.smooth_progression_count(args.m, args.q, args.r, args.eta, args.P,
                                         guard_scale=args.guard_scale)
    res = {
        "actual": c.actual,
        "predicted": c.predicted,
        "residual_ratio": c.residual_ratio,
        "hypothesis_ok": c.hypothesis_ok,
    }
    _write(args, _payload("smoothcount", vars_of(args), res, t0=t0))


def _cmd_dissect(args, t0):
    dis = circle.dissect(args.regime, args.P, args.k, xi=args.xi, s=args.s,
                         kappa=args.kappa, n=args.n)
    res = dis.to_json()
    res["total_measure"] = dis.total_measure()
    res["disjoint"] = dis.verify_disjoint()
    _write(args, _payload("dissect", vars_of(args), res, t0=t0),
           rows=(["a", "q", "center", "half_width"],
                 [(a.a, a.q, a.center, a.half_width) for a in dis.arcs]))


def _cmd_arcint(args, t0):
    dis = circle.dissect("xi", args.P, args.k, xi=args.xi, s=max(args.s, 3), n=args.n)
    ai = circle.arc_integral(args.P, args.s, args.k, args.n, dis, M=args.M,
                             eta=args.eta, guard_scale=args.guard_scale)
    res = {
        "major_part": ai.major_part,
        "minor_part": ai.minor_part,
        "total": ai.total,
        "major_share": ai.major_share,
        "grid": ai.M,
        "resolved": ai.resolved,
        "richardson_delta": ai.richardson_delta,
    }
    _write(args, _payload("arcint", vars_of(args), res, t0=t0))


def _cmd_vbeta(args, t0):
    res = {}
    if args.method in ("reduced-1d", "both"):
        res["reduced_1d"] = circle.v_beta(args.beta, args.P, args.k, "reduced-1d").value
    if args.method in ("direct-3d", "both"):
        res["direct_3d"] = circle.v_beta(args.beta, args.P, args.k, "direct-3d").value
    if args.method == "both":
        res["difference"] = abs(res["reduced_1d"] - res["direct_3d"])
    _write(args, _payload("vbeta", vars_of(args), res,
                          tolerances={"two_method": 1e-4 * float(args.P) ** 3}, t0=t0))


def _cmd_mainterm(args, t0):
    if args.compare_P is not None:
        rows = predict.comparison_report(
            args.k, args.s, args.compare_P, n_lo=args.n_lo, n_hi=int(args.n),
            eta=args.eta, Q=args.Q, guard_scale=args.guard_scale,
        )
        payload = _payload(
            "mainterm", vars_of(args),
            {"rows": [dict(zip(("n", "R", "main_term", "ratio"), r)) for r in rows]},
            t0=t0,
        )
        _write(args, payload, rows=(["n", "R", "main_term", "ratio"], rows))
        return
    mt = predict.main_term(args.k, args.s, args.n, eta=args.eta, Q=args.Q,
                           guard_scale=args.guard_scale)
    res = {
        "gamma_factor": mt.gamma_factor,
        "smooth_factor": mt.smooth_factor,
        "series_value": mt.series_value,
        "value": mt.value,
    }
    _write(args, _payload("mainterm", vars_of(args), res, t0=t0))


def _cmd_lowerbound(args, t0):
    lb = predict.lower_bound_r(args.k, args.s, args.P, args.eta, args.K, n=args.n,
                               guard_scale=args.guard_scale)
    res = {
        "theta": lb.theta,
        "bound": lb.bound,
        "witness": lb.witness,
        "all_hold": lb.all_hold,
        "checked": lb.checked,
        "worst_margin": lb.worst_margin,
    }
    _write(args, _payload("lowerbound", vars_of(args), res, t0=t0))


def _cmd_table1(args, t0):
    ks = [args.k] if args.k else list(range(2, 8))
    rows = []
    for k in ks:
        ap = predict.table1_params(k)
        rows.append((ap.k, ap.r, ap.h, ap.xi0, ap.p_exp, ap.q_exp, ap.t, ap.s))
    res = {"rows": [dict(zip(("k", "r", "h", "xi0", "p", "q", "t", "s"), r)) for r in rows]}
    _write(args, _payload("table1", vars_of(args), res,
                          tolerances={"t_abs": 1e-3}, t0=t0),
           rows=(["k", "r", "h", "xi0", "p", "q", "t", "s"], rows))


def _cmd_moments(args, t0):
    _warn_smooth_box(args.P, args.eta)
    m = reps.l2_moment(args.P, eta=args.eta, doublings=args.doublings,
                       guard_scale=args.guard_scale)
    res = {
        "sum_of_squares": m.sum_of_squares,
        "fitted_exponent": m.fitted_exponent,
        "points": [{"X": x, "sum": s} for x, s in m.points],
    }
    _write(args, _payload("moments", vars_of(args), res, t0=t0))


def _cmd_verify_all(args, t0):
    names = args.only or None
    if args.workers > 1:
        ordered = [n for n in checks.REGISTRY if not names or any(f in n for f in names)]
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            futs = {n: pool.submit(checks.run, [n], args.seed) for n in ordered}
        results = [futs[n].result()[0] for n in ordered]
    else:
        results = checks.run(names, seed=args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'} {r.name} ({r.runtime_s:.1f}s)", file=sys.stderr)
    payload = _payload(
        "verify-all", vars_of(args),
        {
            "passed": sum(r.passed for r in results),
            "failed": sum(not r.passed for r in results),
            "checks": [
                {"name": r.name, "passed": r.passed, "runtime_s": r.runtime_s, "detail": r.detail}
                for r in results
            ],
        },
        t0=t0,
    )
    _write(args, payload)
    return 0 if all(r.passed for r in results) else 1


def vars_of(args):
    skip = {"func", "output", "format", "workers", "guard_scale", "seed",
            "command", "default_format"}
    return {k: v for k, v in vars(args).items() if k not in skip and v is not None}


# ---------------------------------------------------------------------------
# parser


def _add_common(parser, suppress):
    d = argparse.SUPPRESS if suppress else None
    parser.add_argument("--format", choices=("json", "csv"),
                        default=d if suppress else None)
    parser.add_argument("--output", default=d if suppress else None,
                        help="output file (default stdout)")
    parser.add_argument("--seed", type=int,
                        default=d if suppress else checks.DEFAULT_SEED)
    parser.add_argument("--workers", type=int,
                        default=d if suppress else (os.cpu_count() or 1))
    parser.add_argument("--guard-scale", dest="guard_scale", type=float,
                        default=d if suppress else 1.0,
                        help="multiplier applied to cost guards")


def build_parser():
    p = argparse.ArgumentParser(
        prog="cubewaring",
        description="circle-method computations for k-th powers of sums of three cubes",
    )
    _add_common(p, suppress=False)
    # the same options are accepted after the subcommand (SUPPRESS defaults
    # keep the pre-subcommand values from being clobbered)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    sp = sub.add_parser("expsum", help="complete exponential sums")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--a", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--b", type=int, default=0)
    sp.add_argument("--kind", choices=("power", "twisted", "triple-direct", "triple-fast"),
                    default="triple-fast")
    sp.set_defaults(func=_cmd_expsum)

    sp = sub.add_parser("series", help="S_n(q), local factors, singular series")
    sp.add_argument("--op", choices=("term", "sigma", "singular"), default="singular")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--level", type=int, default=series.DEFAULT_LEVEL)
    sp.add_argument("--Q", type=int, default=series.DEFAULT_Q)
    sp.set_defaults(func=_cmd_series)

    sp = sub.add_parser("local", help="residue sets and local solution counts")
    sp.add_argument("--op", choices=("m33", "count", "orthogonality", "coverage",
                                     "congruence", "moment"), required=True)
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--h", type=int, default=1)
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--u", type=int, default=5)
    sp.add_argument("--q", type=int, default=3)
    sp.add_argument("--P", type=float, default=3.0)
    sp.set_defaults(func=_cmd_local)

    sp = sub.add_parser("reps", help="representation count tables")
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--mode", choices=("weighted", "unweighted", "smooth"), default="weighted")
    sp.add_argument("--n-max", dest="n_max", type=int, default=None)
    sp.set_defaults(func=_cmd_reps, default_format="csv")

    sp = sub.add_parser("rho", help="Dickman rho")
    sp.add_argument("--x", type=float, required=True)
    sp.set_defaults(func=_cmd_rho)

    sp = sub.add_parser("smoothcount", help="smooth numbers in a progression vs prediction")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--P", type=float, required=True)
    sp.set_defaults(func=_cmd_smoothcount)

    sp = sub.add_parser("dissect", help="major-arc dissections")
    sp.add_argument("--regime", choices=("xi", "kappa"), required=True)
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--xi", type=float, default=None)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--kappa", type=float, default=circle.DEFAULT_KAPPA)
    sp.add_argument("--n", type=float, default=None)
    sp.set_defaults(func=_cmd_dissect)

    sp = sub.add_parser("arcint", help="arc-split integral of f^s e(-alpha n)")
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--xi", type=float, default=0.4)
    sp.add_argument("--M", type=int, default=None)
    sp.add_argument("--eta", type=float, default=None)
    sp.set_defaults(func=_cmd_arcint)

    sp = sub.add_parser("vbeta", help="oscillatory integral v(beta)")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--method", choices=("reduced-1d", "direct-3d", "both"), default="both")
    sp.set_defaults(func=_cmd_vbeta)

    sp = sub.add_parser("mainterm", help="assembled main-term prediction")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", type=float, required=True)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--Q", type=int, default=series.DEFAULT_Q)
    sp.add_argument("--compare-P", dest="compare_P", type=float, default=None,
                    help="emit (n, R, main_term, ratio) rows for counts at this P")
    sp.add_argument("--n-lo", dest="n_lo", type=int, default=None)
    sp.set_defaults(func=_cmd_mainterm)

    sp = sub.add_parser("lowerbound", help="multiplicity-free lower bound check")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--eta", type=float, required=True)
    sp.add_argument("--K", type=float, required=True)
    sp.add_argument("--n", type=int, default=None)
    sp.set_defaults(func=_cmd_lowerbound)

    sp = sub.add_parser("table1", help="minimal variable counts for k = 2..7")
    sp.add_argument("--k", type=int, default=None)
    sp.set_defaults(func=_cmd_table1, default_format="csv")

    sp = sub.add_parser("moments", help="squared-weight moments and slope")
    sp.add_argument("--P", type=float, required=True)
    sp.add_argument("--eta", type=float, default=None)
    sp.add_argument("--doublings", type=int, default=3)
    sp.set_defaults(func=_cmd_moments)

    sp = sub.add_parser("verify-all", help="run every registered check")
    sp.add_argument("--only", nargs="*", default=None,
                    help="substring filters selecting checks")
    sp.set_defaults(func=_cmd_verify_all)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = getattr(args, "default_format", "json")
    t0 = time.perf_counter()
    try:
        rc = args.func(args, t0)
    except guards.GuardViolation as exc:
        print(f"guard violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failure: {exc}", file=sys.stderr)
        return 4
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
