"""Exhaustive scan over root-of-unity labels for several characteristics.

Writes one JSON search report per characteristic into --out and prints a summary.

    python3 scripts/run_search.py --jobs 4 --check-roots --out reports/
"""

import argparse
import json
import sys
import time
from pathlib import Path

from nichols_rank2.tables import SEARCH_ORDERS, search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, action="append", choices=sorted(SEARCH_ORDERS))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--check-roots", action="store_true",
                    help="compare brute-force real roots at every finite point")
    ap.add_argument("--out", type=Path, help="directory for search_p<P>.json")
    args = ap.parse_args()

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
    failed = False
    for p in args.p or sorted(SEARCH_ORDERS):
        orders = SEARCH_ORDERS[p]
        t0 = time.perf_counter()
        rep = search(p, orders, jobs=args.jobs, check_roots=args.check_roots)
        dt = time.perf_counter() - t0
        rows = sorted({rec["row"] for rec in rep.finite.values() if rec["row"]},
                      key=lambda r: (int(r.rstrip("'")), r))
        print(f"p={p:<3} N={','.join(map(str, orders)):<32} scanned={rep.scanned:<6} "
              f"finite={len(rep.finite):<5} rows={' '.join(rows)}  "
              f"{'ok' if rep.ok else 'DISCREPANCY'} ({dt:.1f}s)")
        if args.check_roots:
            print(f"       brute-force roots checked at {rep.roots_checked} points, "
                  f"{len(rep.root_mismatches)} mismatches")
        if args.out:
            (args.out / f"search_p{p}.json").write_text(json.dumps(rep.to_json(), indent=2, sort_keys=True))
        failed |= not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
