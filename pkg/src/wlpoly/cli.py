"""Command-line interface.

Exit codes: 0 on success, 1 for usage and input errors, 2 when a computation
fails (unbounded input, exhausted budget, failed verification).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import io
from .calculus import (
    EmptyPolytope,
    MaximizeDidNotConverge,
    NonCountingWeight,
    bench_grid,
    integrate,
    maximize,
)
from .counter import BudgetExceeded, EnumConfig, count
from .ehrhart import InconsistentSamples, ResidueDependentLeading, ehrhart_qp, transform_weight, weighted_ehrhart_qp
from .lifting import BASES, CUBE, lift
from .polynomial import parse_polynomial
from .polytope import HPolytope, UnboundedError, standardize

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj, args):
    text = json.dumps(obj, indent=2)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _ints(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cfg(args) -> EnumConfig:
    return EnumConfig(order=args.order, fathom=args.fathom, budget=args.budget)


def _load_polytope(args):
    return io.read_polytope(_read(args.polytope), args.format)


def _standard(P):
    """Standard form plus the change needed to carry weights along."""
    if isinstance(P, HPolytope):
        return standardize(P)
    return P, None


def _load_weight(args, P):
    W = io.read_weight(_read(args.weight), P.n, getattr(args, "basis", None))
    if W.n != P.n:
        raise UsageError(f"weight reads {W.n} variables but the polytope has {P.n}")
    return W


def _dec(v: Fraction) -> str:
    return f"{float(v):.10f}"


# -- commands ----------------------------------------------------------------


def cmd_count(args):
    P, _ = _standard(_load_polytope(args))
    res = count(P, _cfg(args), args.jobs)
    _emit({"count": res.count, "nodes": res.nodes_explored, "ms": res.elapsed_ms}, args)


def cmd_lift(args):
    P0 = _load_polytope(args)
    W = _load_weight(args, P0)
    P, change = _standard(P0)
    if change is not None:
        W = transform_weight(change, W)
    lifted = []
    for term in W.terms:
        L = lift(P, term.family)
        lifted.append({"coeff": io.rat_to_json(term.coeff), "polytope": io.polytope_to_json(L.polytope, (L.n, L.m))})
    if len(lifted) == 1 and W.terms[0].coeff == 1:
        out = lifted[0]["polytope"]
    else:
        out = {"terms": lifted}
    _emit(out, args)


def cmd_ehrhart(args):
    P = _load_polytope(args)
    if args.weight:
        W = _load_weight(args, P)
        qp, rep = weighted_ehrhart_qp(P, W, args.period_hint, args.degree_bound, _cfg(args), args.jobs)
    else:
        qp, rep = ehrhart_qp(P, args.period_hint, _cfg(args), args.jobs)
    out = io.qp_to_json(qp)
    out["report"] = io.report_to_json(rep)
    _emit(out, args)


def cmd_integrate(args):
    P = _load_polytope(args)
    if args.poly:
        poly = parse_polynomial(args.poly, P.n)
    elif args.weight:
        poly = _load_weight(args, P).polynomial
        if poly is None:
            raise UsageError("integrate needs a polynomial weight")
    else:
        raise UsageError("give --poly or --weight")
    value = integrate(P, poly, args.basis, _cfg(args), args.jobs)
    _emit({"integral": io.rat_to_json(value), "decimal": _dec(value)}, args)


def cmd_maximize(args):
    P0 = _load_polytope(args)
    W = _load_weight(args, P0)
    P, change = _standard(P0)
    if change is not None:
        W = transform_weight(change, W)
    cert = maximize(P, W, args.kmax, _cfg(args), args.jobs)
    _emit(io.certificate_to_json(cert), args)


def cmd_app(args):
    from .gallery import cores, semigroups, tableaux

    cfg = _cfg(args)
    which = args.app
    if which == "cores":
        s = cores.core_statistics(args.a, args.b, args.basis, cfg)
        out = {"a": args.a, "b": args.b, "count": s["count"], "total_size": io.rat_to_json(s["total_size"]),
               "average": io.rat_to_json(s["average"]),
               "anderson": cores.anderson_count(args.a, args.b),
               "johnson": io.rat_to_json(cores.johnson_average(args.a, args.b))}
        out["ok"] = out["count"] == out["anderson"] and s["average"] == cores.johnson_average(args.a, args.b)
        _emit(out, args)
    elif which == "semigroups":
        rows = semigroups.semigroup_series(args.m, args.gmax, args.gmin, args.basis, cfg)
        if args.csv:
            _semigroup_csv(rows, args)
        else:
            _emit([{k: (io.rat_to_json(v) if isinstance(v, Fraction) else v) for k, v in r.items()} for r in rows], args)
    elif which == "kostka":
        if args.N is not None:
            cert = tableaux.kostka_max(args.lam, args.N, cfg)
            _emit({"lambda": list(args.lam), "N": args.N, **io.certificate_to_json(cert)}, args)
        else:
            if args.alpha is None:
                raise UsageError("kostka needs --alpha or --N")
            _emit({"lambda": list(args.lam), "alpha": list(args.alpha),
                   "kostka": tableaux.kostka(args.lam, args.alpha, cfg)}, args)
    elif which == "rsk":
        _emit(tableaux.rsk_check(args.mu, args.nu, cfg), args)
    elif which == "lr":
        if args.alpha is not None:
            _emit(tableaux.lr_identity_check(args.lam, args.mu, args.alpha, cfg), args)
        else:
            if args.nu is None:
                raise UsageError("lr needs --nu (coefficient) or --alpha (identity check)")
            _emit({"lr": tableaux.lr_coefficient(args.lam, args.mu, args.nu, cfg)}, args)
    elif which == "nl":
        _emit({"newell_littlewood": tableaux.newell_littlewood(args.mu, args.nu, args.lam, cfg)}, args)


def _semigroup_csv(rows, args):
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "g", "count", "total_weight", "average", "average_over_g2",
                    "average_decimal", "average_over_g2_decimal"])
        for r in rows:
            avg, ratio = r["average"], r["average_over_g2"]
            w.writerow([r["m"], r["g"], r["count"], io.rat_to_json(r["total_weight"]),
                        io.rat_to_json(avg) if avg is not None else "",
                        io.rat_to_json(ratio) if ratio is not None else "",
                        _dec(avg) if avg is not None else "", _dec(ratio) if ratio is not None else ""])
    finally:
        if fh is not sys.stdout:
            fh.close()


def cmd_bench(args):
    cells = bench_grid(args.dims, args.degrees, args.weight_kind, args.seed, args.budget_seconds, args.basis, _cfg(args))
    bad = [c for c in cells if c.integral is not None and not c.ok]
    if bad:
        for c in bad:
            print(f"dim {c.dim} degree {c.degree}: got {c.integral}, oracle {c.oracle}", file=sys.stderr)
        raise ComputationFailed("integral does not match its oracle")
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        if args.long:
            w.writerow(["degree", "dim", "integral", "oracle", "match", "seconds"])
            for c in cells:
                w.writerow([c.degree, c.dim, io.rat_to_json(c.integral) if c.integral is not None else "-",
                            io.rat_to_json(c.oracle), c.ok if c.integral is not None else "-",
                            f"{c.seconds:.4f}" if c.seconds is not None else "-"])
        else:
            w.writerow(["degree"] + [f"dim={d}" for d in args.dims])
            for deg in args.degrees:
                row = [deg]
                for d in args.dims:
                    c = next(c for c in cells if c.dim == d and c.degree == deg)
                    row.append(f"{c.seconds:.4f}" if c.seconds is not None else "-")
                w.writerow(row)
    finally:
        if fh is not sys.stdout:
            fh.close()


class ComputationFailed(RuntimeError):
    pass


JOB_COMMANDS = ("count", "lift", "ehrhart", "integrate", "maximize", "bench")


def cmd_job(args):
    """Run a JSON job ``{"command": ..., "args": {...}}``; unknown fields are rejected."""
    try:
        job = json.loads(_read(args.jobfile))
    except json.JSONDecodeError as exc:
        raise io.ParseError(exc.msg, exc.lineno) from None
    io._check_keys(job, {"command", "inputs", "args"}, "job")
    command = job.get("command")
    if command not in JOB_COMMANDS and command != "app":
        raise UsageError(f"unknown job command {command!r}")
    argv = [command] + [str(v) for v in job.get("inputs", [])]
    for key, value in job.get("args", {}).items():
        flag = "--" + key.replace("_", "-")
        if value is True:
            argv.append(flag)
        elif value is False or value is None:
            continue
        else:
            argv += [flag, str(value)]
    return main(argv)


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wlpoly", description="Weighted lattice-point sums through weight lifting polytopes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--order", choices=["connected", "tightest", "input"], default="connected",
                        help="branching variable order")
    common.add_argument("--fathom", action="store_true", help="enable LP fathoming during the search")
    common.add_argument("--budget", type=int, default=50_000_000, help="search node budget")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for root-level branching")
    common.add_argument("-o", "--output", help="write the result here instead of stdout")

    poly_in = _Parser(add_help=False)
    poly_in.add_argument("polytope", help="polytope file (LattE H-representation or JSON)")
    poly_in.add_argument("--format", choices=["auto", "latte", "json"], default="auto")

    s = sub.add_parser("count", parents=[poly_in, common], help="count lattice points")
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("lift", parents=[poly_in, common], help="write the weight lifting polytope(s)")
    s.add_argument("weight", help="weight JSON file")
    s.add_argument("--basis", choices=BASES, default=None)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("ehrhart", parents=[poly_in, common], help="(weighted) Ehrhart quasi-polynomial")
    s.add_argument("--weight", help="weight JSON file")
    s.add_argument("--basis", choices=BASES, default=None)
    s.add_argument("--period-hint", type=int)
    s.add_argument("--degree-bound", type=int, help="weight degree for family weights")
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("integrate", parents=[poly_in, common], help="exact integral of a polynomial")
    s.add_argument("--poly", help="polynomial such as 'x1*x2 + 1/2'")
    s.add_argument("--weight", help="polynomial weight JSON file")
    s.add_argument("--basis", choices=BASES, default=CUBE)
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("maximize", parents=[poly_in, common], help="exact maximum of a counting weight")
    s.add_argument("--weight", required=True, help="weight JSON file")
    s.add_argument("--basis", choices=BASES, default=None)
    s.add_argument("--kmax", type=int, default=40)
    s.set_defaults(func=cmd_maximize)

    app = sub.add_parser("app", help="application polytopes")
    app_sub = app.add_subparsers(dest="app", required=True, parser_class=_Parser)
    a = app_sub.add_parser("cores", parents=[common])
    a.add_argument("--a", type=int, required=True)
    a.add_argument("--b", type=int, required=True)
    a.add_argument("--basis", choices=BASES, default=CUBE)
    a = app_sub.add_parser("semigroups", parents=[common])
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--gmax", type=int, required=True)
    a.add_argument("--gmin", type=int, default=1)
    a.add_argument("--basis", choices=BASES, default=CUBE)
    a.add_argument("--csv", action="store_true")
    a = app_sub.add_parser("kostka", parents=[common])
    a.add_argument("--lam", type=_ints, required=True)
    a.add_argument("--alpha", type=_ints)
    a.add_argument("--N", type=int, help="maximize over compositions with N parts")
    a = app_sub.add_parser("rsk", parents=[common])
    a.add_argument("--mu", type=_ints, required=True)
    a.add_argument("--nu", type=_ints, required=True)
    a = app_sub.add_parser("lr", parents=[common])
    a.add_argument("--lam", type=_ints, required=True)
    a.add_argument("--mu", type=_ints, required=True)
    a.add_argument("--nu", type=_ints)
    a.add_argument("--alpha", type=_ints, help="check the skew Kostka expansion instead")
    a = app_sub.add_parser("nl", parents=[common])
    a.add_argument("--mu", type=_ints, required=True)
    a.add_argument("--nu", type=_ints, required=True)
    a.add_argument("--lam", type=_ints, required=True)
    app.set_defaults(func=cmd_app)

    s = sub.add_parser("bench", parents=[common], help="integration benchmark grid over standard simplices")
    s.add_argument("--dims", type=_ints, default=(1, 2, 3, 4))
    s.add_argument("--degrees", type=_ints, default=(1, 2, 3))
    s.add_argument("--weight-kind", choices=["monomial", "linear-power"], default="monomial")
    s.add_argument("--basis", choices=BASES, default=CUBE)
    s.add_argument("--seed", type=int, default=0, help="seed for the linear-form coefficients")
    s.add_argument("--budget-seconds", type=float, help="cells slower than this print '-'")
    s.add_argument("--long", action="store_true", help="one row per cell with the exact integral")
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("job", help="run a JSON job specification")
    s.add_argument("jobfile")
    s.set_defaults(func=cmd_job)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if hasattr(args, "budget") and args.budget <= 0:
            raise UsageError("--budget must be positive")
        rc = args.func(args)
        return rc if isinstance(rc, int) else EXIT_OK
    except (UsageError, io.ParseError) as exc:
        print(f"wlpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnboundedError, BudgetExceeded, EmptyPolytope, NonCountingWeight, MaximizeDidNotConverge,
            InconsistentSamples, ResidueDependentLeading, ComputationFailed) as exc:
        print(f"wlpoly: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"wlpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
