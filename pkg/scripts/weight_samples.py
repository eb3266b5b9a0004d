"""Write CSV samples of the displayed Xm-Jacobi weights and a few polynomials.

    python scripts/weight_samples.py --out samples/
"""

import argparse
import csv
from fractions import Fraction as F
from pathlib import Path

import numpy as np

from exopoly.xm_jacobi import XmParams, xm_poly, xm_weight

TRIPLES = [XmParams(F(1, 3), F(-1, 2), 2), XmParams(F(5, 4), F(1, 2), 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("samples"))
    ap.add_argument("--points", type=int, default=401)
    ap.add_argument("--degrees", type=int, default=4, help="polynomials n = m .. m + degrees - 1")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    # open interval: the weight may blow up at -1
    xs = np.linspace(-1, 1, args.points + 2)[1:-1]
    for prm in TRIPLES:
        W = xm_weight(prm)
        polys = [xm_poly(prm, prm.m + k) for k in range(args.degrees)]
        name = f"xm_{prm.alpha}_{prm.beta}_{prm.m}".replace("/", "-")
        path = args.out / f"{name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["x", "weight"] + [f"P{prm.m + k}" for k in range(args.degrees)])
            for x in xs:
                w.writerow([repr(float(x)), repr(float(W(x)))] + [repr(float(p(float(x)))) for p in polys])
        print(path)


if __name__ == "__main__":
    main()
