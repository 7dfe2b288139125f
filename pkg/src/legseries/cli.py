"""Command-line front end.

Commands:

  eval       evaluate a function of the library at given parameters
  verify     verify one catalog identity (two-precision ladder)
  verify-all verify a filtered batch in parallel
  list       list catalog entries
  constants  print the classical constants at the requested precision

Exit codes: 0 all requested verifications passed; 1 any identity failed;
2 usage or I/O error.  Entries tagged "slow" are excluded from verify-all
unless --include-slow is given.  The catalog path can also come from the
LS_CATALOG environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from mpmath import mp

from .context import PrecisionContext
from .catalog import load_catalog, catalog_by_id
from .verify import verify, verify_all, format_report_human, format_reports_json


def _catalog_path(args):
    return args.catalog or os.environ.get("LS_CATALOG") or None


def _add_common(p):
    p.add_argument("--digits", type=int, default=30,
                   help="decimal digits of the final answer (10..10000)")
    p.add_argument("--catalog", default=None, help="catalog file override")
    p.add_argument("--output", choices=("human", "json"), default="human")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legseries",
                                 description="binomial harmonic sum engine")
    sub = ap.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", help="evaluate a library function")
    _add_common(pe)
    pe.add_argument("--family", required=True,
                    choices=("legendre_p", "gamma", "zeta", "beta", "dilog_im",
                             "eta", "eisenstein", "epstein1", "klein_j"))
    pe.add_argument("--nu", default=None, help="degree (rational like -1/2)")
    pe.add_argument("--x", default=None, help="real argument")
    pe.add_argument("--z", default=None, help="complex argument a+bj")
    pe.add_argument("--s", type=int, default=None, help="integer order")
    pe.add_argument("--weight", type=int, default=4, help="Eisenstein weight")

    pv = sub.add_parser("verify", help="verify one identity")
    _add_common(pv)
    pv.add_argument("--id", required=True)

    pa = sub.add_parser("verify-all", help="verify a batch")
    _add_common(pa)
    pa.add_argument("--tag", action="append", default=[],
                    help="require this tag (repeatable)")
    pa.add_argument("--id", action="append", default=[],
                    help="restrict to these ids (repeatable)")
    pa.add_argument("--threads", type=int, default=None,
                    help="worker processes (default: machine parallelism)")
    pa.add_argument("--include-slow", action="store_true")

    pl = sub.add_parser("list", help="list catalog entries")
    _add_common(pl)
    pl.add_argument("--tag", action="append", default=[])

    pc = sub.add_parser("constants", help="print classical constants")
    _add_common(pc)
    return ap


def _cmd_eval(args) -> int:
    digits = args.digits
    ctx = PrecisionContext(digits)
    with ctx.workdps():
        if args.family == "legendre_p":
            from .hypergeo import legendre_p
            nu = Fraction(args.nu)
            x = mp.mpf(args.x)
            val = legendre_p(mp.mpf(nu.numerator) / nu.denominator, x, ctx)
        elif args.family == "gamma":
            from .core import gamma
            val = gamma(Fraction(args.x), ctx)
        elif args.family == "zeta":
            from .core import zeta
            val = zeta(args.s, ctx)
        elif args.family == "beta":
            from .core import dirichlet_beta
            val = dirichlet_beta(args.s, ctx)
        elif args.family == "dilog_im":
            from .core import clausen_cl2
            val = clausen_cl2(mp.mpf(args.x), ctx)
        elif args.family == "eta":
            from .modular import dedekind_eta
            val = dedekind_eta(mp.mpc(args.z), ctx)
        elif args.family == "eisenstein":
            from .modular import eisenstein
            val = eisenstein(args.weight, mp.mpc(args.z), ctx)
        elif args.family == "epstein1":
            from .modular import epstein_zeta_level1
            val = epstein_zeta_level1(mp.mpc(args.z), ctx)
        elif args.family == "klein_j":
            from .modular import klein_j
            val = klein_j(mp.mpc(args.z), ctx)
        else:
            raise ValueError(args.family)
        out = mp.nstr(val, digits)
    if args.output == "json":
        print(json.dumps({"family": args.family, "digits": digits, "value": out}))
    else:
        print(out)
    return 0


def _cmd_verify(args) -> int:
    rep = verify(args.id, args.digits, _catalog_path(args))
    if args.output == "json":
        print(format_reports_json([rep]))
    else:
        print(format_report_human(rep))
    return 0 if rep.passed else 1


def _cmd_verify_all(args) -> int:
    reports = verify_all(tags=args.tag, digits=args.digits,
                         parallelism=args.threads,
                         catalog_path=_catalog_path(args),
                         include_slow=args.include_slow,
                         ids=args.id)
    if args.output == "json":
        print(format_reports_json(reports))
    else:
        for rep in reports:
            print(format_report_human(rep))
        npass = sum(r.passed for r in reports)
        print(f"{npass}/{len(reports)} passed")
    return 0 if all(r.passed for r in reports) else 1


def _cmd_list(args) -> int:
    records = load_catalog(_catalog_path(args))
    rows = []
    for r in records:
        if args.tag and not all(t in r.tags for t in args.tag):
            continue
        rows.append(r)
    if args.output == "json":
        print(json.dumps([{"id": r.id, "family": r.family, "digits": r.default_digits,
                           "tags": list(r.tags), "note": r.note} for r in rows],
                         indent=2, sort_keys=True))
    else:
        for r in rows:
            print(f"{r.id:<28} {r.family:<16} digits={r.default_digits:<5} "
                  f"tags={','.join(r.tags)}")
        print(f"{len(rows)} entries")
    return 0


def _cmd_constants(args) -> int:
    ctx = PrecisionContext(args.digits)
    from .core import pi, catalan, euler_gamma, zeta, dirichlet_beta
    with ctx.workdps():
        vals = {
            "pi": mp.nstr(pi(ctx), args.digits),
            "euler_gamma": mp.nstr(euler_gamma(ctx), args.digits),
            "catalan": mp.nstr(catalan(ctx), args.digits),
            "zeta(3)": mp.nstr(zeta(3, ctx), args.digits),
            "beta(4)": mp.nstr(dirichlet_beta(4, ctx), args.digits),
        }
    if args.output == "json":
        print(json.dumps(vals, indent=2, sort_keys=True))
    else:
        for k, v in vals.items():
            print(f"{k:<12} {v}")
    return 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if not (10 <= args.digits <= 10000):
        print("digits must lie in [10, 10000]", file=sys.stderr)
        return 2
    try:
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "verify-all":
            return _cmd_verify_all(args)
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "constants":
            return _cmd_constants(args)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
