#!/usr/bin/env python3
"""Census of small quandles, optionally across worker processes.

Rows come back in parameter order whatever the completion order.

    python3 scripts/census.py --max-order 8 --jobs 4 --format csv
"""

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from qhk.cli import CENSUS_COLUMNS, census_row, render_rows
from qhk.config import default_limits
from qhk.corpus import FAMILIES, family


def _row(entry):
    return census_row(entry, default_limits())


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--families", default=",".join(FAMILIES))
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--format", choices=("table", "json", "csv"), default="table")
    args = ap.parse_args()
    names = [f for f in args.families.split(",") if f]
    entries = [e for name in names for e in family(name, args.max_order)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_row, entries, chunksize=4))
    else:
        rows = [_row(e) for e in entries]
    sys.stdout.write(render_rows(rows, CENSUS_COLUMNS, args.format,
                                 {"max_order": args.max_order, "families": names}))
    return 1 if any(r["error"] for r in rows) else 0


if __name__ == "__main__":
    raise SystemExit(main())
