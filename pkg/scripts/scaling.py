"""Time the incidence fill with d = n/2, rho = 2 and fit the growth exponent.

Usage:
    python scripts/scaling.py [--ns 10 20 40 80 100] [--repeat 3]
"""

import argparse
import math
import time

from frcodes.constructions import fill_incidence
from frcodes.core import FRParams, validate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ns", type=int, nargs="+", default=[10, 20, 40, 60, 80, 100])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    pts = []
    for n in args.ns:
        d = n // 2
        if (n * d) % 2:
            print(f"skip n={n}: n*d odd")
            continue
        params = FRParams(n, n * d // 2, d, 2)
        best = math.inf
        for _ in range(args.repeat):
            t = time.perf_counter()
            m = fill_incidence(params)
            best = min(best, time.perf_counter() - t)
        ok = validate(m, params).valid
        pts.append((n, best))
        print(f"n={n:4d} theta={params.theta:5d}  {best * 1e3:9.2f} ms  valid={ok}")

    for (n0, t0), (n1, t1) in zip(pts, pts[1:]):
        print(f"exponent {n0}->{n1}: {math.log(t1 / t0) / math.log(n1 / n0):.2f}")


if __name__ == "__main__":
    main()
