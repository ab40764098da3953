#!/usr/bin/env python3
"""Tabulate eigenvalues of the averaging operators on the weight-12 cusp
form and confirm the eigenrelation coefficientwise.

Example:
    python3 scripts/hecke_scan.py --p-max 30 --depth 100
"""

import argparse

from hensel import qseries
from hensel.primes import primes_upto


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-max", type=int, default=20)
    ap.add_argument("--depth", type=int, default=100)
    args = ap.parse_args()

    ps = primes_upto(args.p_max)
    f = qseries.delta(max(ps) * args.depth)
    print(f"{'p':>5} {'a_p':>14} {'eigenrelation':>15}")
    bad = 0
    for p in ps:
        ok, lam = qseries.eigencheck(f, p, depth=args.depth)
        bad += not ok
        print(f"{p:>5} {lam:>14} {'exact' if ok else 'BROKEN':>15}")
    print(f"checked through q^{args.depth} each; {len(ps) - bad}/{len(ps)} exact")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
