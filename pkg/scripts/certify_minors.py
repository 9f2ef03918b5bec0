"""Exhaustive grid check that the level combinations vanish only when every 3x3 minor does.

    python scripts/certify_minors.py 4 -1 0 1
    python scripts/certify_minors.py 5 -1 0 1 --budget 20000000
"""
import argparse
import json
import time

from sepinv.harness import grid_minor_certification
from sepinv.reduced import Scheme


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("n", type=int)
    ap.add_argument("values", type=int, nargs="+")
    ap.add_argument("--scheme", choices=["unit", "vandermonde"], default="unit")
    ap.add_argument("--budget", type=int, default=10 ** 7, help="max number of matrices to scan")
    args = ap.parse_args()
    t0 = time.perf_counter()
    rep = grid_minor_certification(args.n, args.values, Scheme.parse(args.scheme), budget=args.budget)
    doc = rep.to_json()
    doc["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps(doc, indent=1))
    raise SystemExit(1 if rep.failures else 0)


if __name__ == "__main__":
    main()
