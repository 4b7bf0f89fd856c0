"""Regenerate a published count table from scratch and diff it.

Runs the full pipeline (enumerate pieces and specials, classify, apply
the composition recurrences and the vertical-sum convolution) and
compares every cell against the bundled golden table.

    python3 scripts/reproduce_tables.py --family modular --max-n 20
    python3 scripts/reproduce_tables.py --family distributive --max-n 30
"""

from __future__ import annotations

import argparse
import sys
import time

from vilat.counting import aggregate, compose_counts, vertical_sum_totals
from vilat.families import Family
from vilat.generate import GenConfig, GenMode, generate
from vilat.tables import CSV_HEADER, golden_counts, write_count_csv
from vilat.verify import count_listing


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="modular", choices=["modular", "distributive"])
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--out", help="also write the recomputed table as CSV")
    args = ap.parse_args()

    family = Family(args.family)
    golden = golden_counts(family)
    if args.max_n > golden.max_n:
        ap.error(f"golden table stops at {golden.max_n}")

    t0 = time.monotonic()
    listing: list = []
    cfg = GenConfig(
        family=family,
        mode=GenMode.PIECES_AND_SPECIALS,
        max_n=args.max_n,
        length_bound_pruning=family is Family.DISTRIBUTIVE,
    )
    summary = generate(cfg, listing.append)
    t_gen = time.monotonic() - t0

    table = count_listing(listing)
    compose_counts(table, args.max_n)
    aggregate(table, args.max_n)
    vertical_sum_totals(table, args.max_n)
    t_all = time.monotonic() - t0

    cols = CSV_HEADER.split(",")[1:]
    mismatches = 0
    for n in range(1, args.max_n + 1):
        diffs = [
            f"{c}: {table.value(n, c)} != {golden.value(n, c)}"
            for c in cols
            if table.value(n, c) != golden.value(n, c)
        ]
        status = "ok" if not diffs else "MISMATCH " + "; ".join(diffs)
        print(f"n={n:3d}  vi={table.value(n, 'vi'):>12}  all={table.value(n, 'all'):>14}  {status}")
        mismatches += bool(diffs)

    print(
        f"\n{summary.total} lattices generated in {t_gen:.1f}s, "
        f"full pipeline {t_all:.1f}s, {mismatches} mismatched rows"
    )
    if args.out:
        write_count_csv(args.out, table, args.max_n)
        print(f"wrote {args.out}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
