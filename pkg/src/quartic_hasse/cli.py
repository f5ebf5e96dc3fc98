"""Command-line front end.

Exit codes: 0 success, 1 verified negative (inadmissible pair, insoluble
place, empty search, ...), 2 usage error, 3 internal assertion failure.
Because several subcommands take `-h` as the target value of the Thue
equation, per-subcommand help is available via `--help` only.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import jsonio
from .forms import (BinaryQuarticForm, InadmissiblePairError,
                    invariant_pair_admissible, invariants, realize_invariants)


def _jobs_default() -> int:
    try:
        return max(1, int(os.environ.get("QHL_JOBS", "1")))
    except ValueError:
        return 1


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="qhl", description=__doc__)
    top.add_argument("--jobs", type=int, default=_jobs_default(),
                     help="worker cap (default: env QHL_JOBS or 1)")
    top.add_argument("-o", "--output", help="write JSON here instead of stdout")
    sub = top.add_subparsers(dest="cmd", required=True)

    def _sub(*a, **kw):
        p = sub.add_parser(*a, **kw)
        # accept -o/--jobs after the subcommand too; SUPPRESS keeps the
        # top-level value when the option is not repeated there
        p.add_argument("-o", "--output", default=argparse.SUPPRESS)
        p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
        return p

    p = _sub("invariants", help="I, J, D, height, signature")
    p.add_argument("form")

    p = _sub("admissible", help="can (I, J) occur for an integral form")
    p.add_argument("I", type=int)
    p.add_argument("J", type=int)

    p = _sub("split", help="complete splitting mod p")
    p.add_argument("form")
    p.add_argument("-p", type=int, required=True)

    p = _sub("descend", add_help=False,
                       help="descended form at a simple root (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("form")
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-b", required=True, help="root residue or 'inf'")

    p = _sub("family", add_help=False,
                       help="the 64 descended forms (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("form")
    p.add_argument("-P", "--primes", required=True,
                   help="three comma-separated primes, e.g. 5,7,11")

    p = _sub("local", add_help=False,
                       help="local solubility certificates (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("form")
    p.add_argument("-h", dest="h", type=int, required=True)
    p.add_argument("-p", type=int, help="single place; omit for everywhere")

    p = _sub("search", add_help=False,
                       help="primitive solutions in a box (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("form")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-B", type=int, required=True)

    p = _sub("density", add_help=False,
                       help="local densities / mu enclosure (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("-p", type=int)
    p.add_argument("--mu", action="store_true")
    p.add_argument("-h", dest="h", type=int)
    p.add_argument("--cutoff", type=int, default=10_000)
    p.add_argument("--digits", type=int, default=12)

    p = _sub("witness", add_help=False,
                       help="end-to-end construction (--help for usage)")
    p.add_argument("--help", action="help")
    p.add_argument("-h", dest="h", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-B", type=int, default=10_000)
    p.add_argument("--eps", default="1/12")

    return top


def _emit(args, doc: str) -> None:
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(doc + "\n")
    else:
        print(doc)


def _dispatch(args) -> int:
    jobs = max(1, args.jobs)

    if args.cmd == "invariants":
        form = BinaryQuarticForm.parse(args.form)
        _emit(args, jsonio.dumps(invariants(form)))
        return 0

    if args.cmd == "admissible":
        ok = invariant_pair_admissible(args.I, args.J)
        out = {"I": args.I, "J": args.J, "admissible": ok}
        if ok:
            out["form"] = jsonio.to_jsonable(realize_invariants(args.I, args.J))
        _emit(args, jsonio.dumps(out))
        return 0 if ok else 1

    if args.cmd == "split":
        from .modp import splits_completely

        form = BinaryQuarticForm.parse(args.form)
        data = splits_completely(form, args.p)
        _emit(args, jsonio.dumps({"p": args.p, "splits": data is not None,
                                  "split": jsonio.to_jsonable(data) if data else None}))
        return 0 if data else 1

    if args.cmd == "descend":
        from .descent import descend_at

        form = BinaryQuarticForm.parse(args.form)
        b = jsonio.parse_root(args.b)
        out = descend_at(form, args.p, b)
        _emit(args, jsonio.dumps({"p": args.p, "b": args.b,
                                  "descended": jsonio.to_jsonable(out)}))
        return 0

    if args.cmd == "family":
        from .descent import build_family

        form = BinaryQuarticForm.parse(args.form)
        primes = tuple(int(t) for t in args.primes.split(","))
        if len(primes) != 3:
            raise ValueError("need exactly three primes")
        _emit(args, jsonio.dumps(build_family(form, primes)))
        return 0

    if args.cmd == "local":
        from .local import local_everywhere, soluble_over_Zp

        form = BinaryQuarticForm.parse(args.form)
        if args.p is not None:
            cert = soluble_over_Zp(form, args.h, args.p)
            _emit(args, jsonio.dumps({"schema": "local-certificate/v1",
                                      **jsonio.to_jsonable(cert)}))
            return 0 if cert.verdict == "soluble" else 1
        rep = local_everywhere(form, args.h, jobs=jobs)
        _emit(args, jsonio.dumps(rep))
        return 0 if rep.locally_soluble_everywhere else 1

    if args.cmd == "search":
        from .search import primitive_solutions_in_box

        form = BinaryQuarticForm.parse(args.form)
        ss = primitive_solutions_in_box(form, args.m, args.B, jobs=jobs)
        _emit(args, jsonio.dumps(ss))
        return 0 if ss.solutions else 1

    if args.cmd == "density":
        from . import density as dens

        if args.mu:
            if args.h is None:
                raise ValueError("--mu requires -h")
            from .witness import choose_primes

            primes = choose_primes(args.h)
            iv = dens.mu_lower_bound(args.h, primes, cutoff=args.cutoff)
            _emit(args, jsonio.dumps({"h": args.h, "primes": list(primes),
                                      "cutoff": args.cutoff,
                                      "mu": jsonio.to_jsonable(iv)}))
            return 0
        if args.p is None:
            raise ValueError("density needs -p or --mu")
        p = args.p
        out = {"p": p, "lambda": jsonio.encode_fraction(dens.lam(p))}
        out["delta2" if p == 2 else "gamma"] = jsonio.encode_fraction(
            dens.delta2() if p == 2 else dens.gamma(p))
        if p >= 5:
            out["sigma"] = jsonio.encode_fraction(dens.sigma(p))
        _emit(args, jsonio.dumps(out))
        return 0

    if args.cmd == "witness":
        from .witness import verify_theorem

        eps = Fraction(args.eps)
        rep = verify_theorem(args.h, B=args.B, seed=args.seed, eps=eps,
                             jobs=jobs)
        _emit(args, jsonio.dumps(rep))
        ok = (rep.everywhere_locally_soluble is True
              and len(rep.flagged) >= rep.min_flagged_expected)
        return 0 if ok else 1

    raise AssertionError("unhandled subcommand")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _dispatch(args)
    except (ValueError, InadmissiblePairError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
