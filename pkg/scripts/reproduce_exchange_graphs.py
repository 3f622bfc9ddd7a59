"""Recompute n, l, the A+ window and the orbit size for every table row and characteristic.

    python3 scripts/reproduce_exchange_graphs.py [--p 5] [--json out.json]
"""

import argparse
import json
import sys

from nichols_rank2.tables import verify_tables

PRIMES = (2, 3, 5, 7, 11, 13)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, action="append", help="characteristic (repeatable)")
    ap.add_argument("--json", metavar="PATH", help="also write the reports as JSON")
    args = ap.parse_args()

    reports = verify_tables(args.p or PRIMES)
    print(f"{'p':>3} {'row':>5} {'params':<28} {'n':>2} {'l':>3} {'pts':>4}  window")
    for r in reports:
        v = r.verdict
        params = ", ".join(f"{k}={x}" for k, x in sorted(r.values.items())) or "-"
        if v is None or not v.is_finite:
            print(f"{r.p:>3} {r.row_id:>5} {params:<28} FAIL {r.mismatches}")
            continue
        window = ",".join(map(str, v.sequence))
        mark = "" if r.ok else "  <- " + "; ".join(r.mismatches)
        print(f"{r.p:>3} {r.row_id:>5} {params:<28} {v.n:>2} {v.l:>3} {r.points:>4}  ({window}){mark}")
    bad = sum(not r.ok for r in reports)
    print(f"\n{len(reports) - bad}/{len(reports)} row instances agree with the recorded exchange graphs")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump([r.to_json() for r in reports], fh, indent=2, sort_keys=True)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
