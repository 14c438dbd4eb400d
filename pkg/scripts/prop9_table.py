#!/usr/bin/env python3
"""Order p^2 table: every connected Alexander structure on (Z/p)^2 and Z/p^2,
with det t, the chain-level H_2^Q and the det-classifier prediction.

    python3 scripts/prop9_table.py 2 3 5
"""

import sys

from qhk.alexander import automorphisms, connected_specs, is_special, order_p2_prediction
from qhk.homology import h2_quandle
from qhk.linalg import require_prime
from qhk.quandle import alexander


def table(p: int) -> int:
    require_prime(p)
    mismatches = 0
    for factors in ((p, p), (p * p,)):
        specs = connected_specs(factors)
        print(f"# factors {list(factors)}: {len(automorphisms(factors))} automorphisms, "
              f"{len(specs)} connected")
        for spec in specs:
            got = h2_quandle(alexander(spec))
            want = order_p2_prediction(spec)
            mismatches += got != want
            flag = "" if got == want else "  MISMATCH"
            print(f"t={[list(r) for r in spec.t]}  special={is_special(spec, p)}  H2Q={got}{flag}")
    return mismatches


def main(argv: list[str]) -> int:
    primes = [int(a) for a in argv] or [2, 3]
    bad = sum(table(p) for p in primes)
    print(f"# {bad} mismatches")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
