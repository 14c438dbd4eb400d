#!/usr/bin/env python3
"""H_2^Q of F_p[t]/(1 + t + ... + t^(n-1)) against floor((n-1)/2) copies of Z/p,
with wall-clock time per case.

    python3 scripts/phi_family.py --max-order 27
"""

import argparse
import time
from math import gcd

from sympy import primerange

from qhk.config import Limits
from qhk.verify import verify_phi


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=27)
    args = ap.parse_args()
    limits = Limits(max_homology_order=args.max_order)
    failed = 0
    print(f"{'p':>3} {'n':>3} {'order':>6} {'H2Q':<16} {'expected':<16} {'status':<6} seconds")
    for p in primerange(2, args.max_order + 1):
        n = 2
        while p ** (n - 1) <= args.max_order:
            if gcd(n, p) == 1:
                t0 = time.perf_counter()
                r = verify_phi(p, n, limits)
                dt = time.perf_counter() - t0
                failed += not r.passed
                print(f"{p:>3} {n:>3} {p ** (n - 1):>6} {r.data['h2_quandle']:<16} "
                      f"{r.data['expected']:<16} {r.status:<6} {dt:.2f}")
            n += 1
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
