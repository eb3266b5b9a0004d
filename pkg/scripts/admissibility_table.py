"""Print Xm-Jacobi admissibility verdicts on a rational (alpha, beta) grid.

    python scripts/admissibility_table.py --m 2 --step 1/2
"""

import argparse
from collections import Counter
from fractions import Fraction

from exopoly.xm_jacobi import XmParams, admissible

SYMBOL = {"admissible": "+", "degenerate-degree": "d", "boundary-root": "b", "interior-zero": ".", "out-of-range": " "}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--lo", type=Fraction, default=Fraction(-1))
    ap.add_argument("--hi", type=Fraction, default=Fraction(5))
    ap.add_argument("--step", type=Fraction, default=Fraction(1, 4))
    args = ap.parse_args()

    grid = []
    v = args.lo + args.step
    while v < args.hi:
        grid.append(v)
        v += args.step

    counts = Counter()
    print(f"m = {args.m}; rows beta (top = largest), columns alpha from {grid[0]} to {grid[-1]}")
    print("  " + "  ".join(f"{k}={s!r}" for k, s in SYMBOL.items() if s.strip()))
    for b in reversed(grid):
        row = []
        for a in grid:
            verdict = admissible(XmParams(a, b, args.m)).verdict
            counts[verdict] += 1
            row.append(SYMBOL[verdict])
        print(f"{str(b):>6} {''.join(row)}")
    print(dict(counts))


if __name__ == "__main__":
    main()
