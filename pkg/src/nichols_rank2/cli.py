"""Command-line interface.

Exit codes: 0 success, 1 verification discrepancy, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .diagram import Diagram
from .finiteness import decide_finite
from .reflection import DEFAULT_CAP, Diverged, NotAllReflections, exchange_graph_dot, orbit
from .sequences import (BoundExceeded, enumerate_aplus, is_aplus_by_matrix, is_aplus_by_reduction,
                        parse_sequence)
from .tables import SEARCH_ORDERS, get_row, rows_for, search, verify_tables

EXIT_OK, EXIT_DISCREPANCY, EXIT_INPUT = 0, 1, 2
VERIFY_PRIMES = (2, 3, 5, 7, 11, 13)


class InputError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _unit_arg(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse label {text!r}: {exc}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _orders(text: str) -> List[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad order list {text!r}") from None
    if not out or min(out) < 1:
        raise argparse.ArgumentTypeError("orders must be positive integers")
    return out


def load_diagram(args) -> Diagram:
    if args.input:
        try:
            with open(args.input) as fh:
                obj = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    else:
        missing = [n for n in ("p", "q11", "q22", "q0") if getattr(args, n) is None]
        if missing:
            raise InputError("need --input or all of --p --q11 --q22 --q0 (missing: "
                             + ", ".join("--" + m for m in missing) + ")")
        obj = {"p": args.p, "torsion": args.torsion, "free_rank": args.free_rank,
               "q11": _unit_arg(args.q11), "q22": _unit_arg(args.q22), "q0": _unit_arg(args.q0)}
    try:
        return Diagram.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"invalid diagram: {exc}") from None


def _add_diagram_args(sp):
    sp.add_argument("--input", help="diagram JSON file")
    sp.add_argument("--p", type=int)
    sp.add_argument("--torsion", type=int, default=1, help="order N of the root of unity z_N")
    sp.add_argument("--free-rank", type=int, default=0)
    sp.add_argument("--q11", help="torsion exponent or unit JSON")
    sp.add_argument("--q22")
    sp.add_argument("--q0")
    sp.add_argument("--cap", type=_positive, default=DEFAULT_CAP)


def cmd_classify(args) -> int:
    d = load_diagram(args)
    v = decide_finite(d, args.cap)
    if args.format == "json":
        print(_dump(v.to_json()))
        return EXIT_OK
    print(f"diagram: {d}")
    print(f"verdict: {v.status}")
    if v.status in ("finite", "infinite"):
        print(f"n: {v.n}")
        print(f"l: {v.l}")
    if v.status == "finite":
        print(f"window: {','.join(map(str, v.sequence))}")
        print(f"positive roots: {v.roots}")
        print(f"points: {len(v.graph)}")
    elif v.status == "infinite":
        print(f"reason: {v.reason}")
    elif v.status == "inconclusive":
        print(f"cap: {v.cap}")
    return EXIT_OK


def cmd_orbit(args) -> int:
    d = load_diagram(args)
    try:
        g = orbit(d, args.cap)
    except (NotAllReflections, Diverged) as exc:
        raise InputError(f"no finite orbit: {exc}") from None
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(exchange_graph_dot(g))
    print(_dump(g.to_json()))
    return EXIT_OK


def cmd_aplus(args) -> int:
    if args.action == "check":
        try:
            seq = parse_sequence(args.value)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        member = is_aplus_by_matrix(seq)
        assert member == is_aplus_by_reduction(seq)
        print("member" if member else "non-member")
        return EXIT_OK
    try:
        n = int(args.value)
        seqs = sorted(enumerate_aplus(n), reverse=True)
    except (ValueError, BoundExceeded) as exc:
        raise InputError(str(exc)) from None
    for s in seqs:
        print(",".join(map(str, s)))
    print(f"# {len(seqs)} sequences of length {n}")
    return EXIT_OK


def cmd_search(args) -> int:
    orders = args.orders or list(SEARCH_ORDERS.get(args.p, ()))
    if not orders:
        raise InputError(f"no default orders for p={args.p}; pass --orders")
    try:
        rep = search(args.p, orders, jobs=args.jobs, check_roots=args.check_roots)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.format == "json":
        print(_dump(rep.to_json()))
    else:
        print(f"p={rep.p} orders={','.join(map(str, rep.orders))} scanned={rep.scanned} "
              f"finite={len(rep.finite)}")
        for name in ("unmatched_finite", "instances_not_found", "inconsistent", "root_mismatches"):
            items = getattr(rep, name)
            print(f"{name}: {len(items)}")
            for it in items:
                print(f"  {it}")
        print("ok" if rep.ok else "DISCREPANCY")
    return EXIT_OK if rep.ok else EXIT_DISCREPANCY


def cmd_verify(args) -> int:
    primes = [args.p] if args.p else list(VERIFY_PRIMES)
    try:
        if args.row is not None:
            for p in primes:
                get_row(p, args.row)
        else:
            for p in primes:
                rows_for(p)
        reports = verify_tables(primes, args.row)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc).strip("'\"")) from None
    bad = [r for r in reports if not r.ok]
    if args.format == "json":
        print(_dump({"schema_version": 1, "reports": [r.to_json() for r in reports],
                     "ok": not bad}))
    else:
        for r in reports:
            vals = ", ".join(f"{k}={v}" for k, v in sorted(r.values.items())) or "-"
            status = "pass" if r.ok else "FAIL " + "; ".join(r.mismatches)
            print(f"p={r.p} row {r.row_id} [{vals}] points={r.points}: {status}")
        print(f"{len(reports) - len(bad)}/{len(reports)} rows pass")
    return EXIT_DISCREPANCY if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nichols-rank2",
                                 description="Finiteness of rank-two Weyl groupoids of diagonal braidings.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="decide finiteness for one diagram")
    _add_diagram_args(sp)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("orbit", help="print the orbit as JSON, optionally write DOT")
    _add_diagram_args(sp)
    sp.add_argument("--dot", metavar="PATH")
    sp.set_defaults(func=cmd_orbit)

    sp = sub.add_parser("aplus", help="check or enumerate A+ sequences")
    sp.add_argument("action", choices=("check", "enum"))
    sp.add_argument("value", help='sequence like "2,1,2,1" for check, length n for enum')
    sp.set_defaults(func=cmd_aplus)

    sp = sub.add_parser("search", help="exhaustive scan over roots of unity")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--orders", type=_orders)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--check-roots", action="store_true")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify-tables", help="check table rows against computed orbits")
    sp.add_argument("--p", type=int)
    sp.add_argument("--row")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
