#!/usr/bin/env python3
"""Sweep the twisted-count identity over a grid and print a timing table.

Example:
    python3 scripts/fl_sweep.py --p-list 3 5 7 --vb-max 3
"""

import argparse
import time

from hensel import orbital
from hensel.primes import smallest_nonresidue


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p-list", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--vb-max", type=int, default=3)
    ap.add_argument("--kappa", type=int, choices=(0, 1), default=1)
    args = ap.parse_args()

    header = f"{'p':>4} {'vb':>4} {'delta':>6} {'twisted':>10} {'closed':>10} {'expected':>10} {'sat':>5} {'method':>8} {'secs':>7}"
    print(header)
    print("-" * len(header))
    bad = 0
    for p in args.p_list:
        d = smallest_nonresidue(p)
        for vb in range(1, args.vb_max + 1):
            t0 = time.perf_counter()
            rep = orbital.verify_fundamental_lemma(p, 1, p**vb, d, kappa=args.kappa)
            secs = time.perf_counter() - t0
            closed = orbital.closed_form_count(p, vb, args.kappa)
            ok = rep.twisted == closed and rep.saturated and (
                args.kappa == 0 or rep.twisted == (-p) ** vb
            )
            bad += not ok
            print(
                f"{p:>4} {vb:>4} {d:>6} {rep.twisted:>10} {closed:>10} "
                f"{str(rep.expected):>10} {str(rep.saturated):>5} "
                f"{rep.method:>8} {secs:>7.3f}"
            )
    print("-" * len(header))
    print("all rows consistent" if not bad else f"{bad} INCONSISTENT ROWS")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
