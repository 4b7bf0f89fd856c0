"""Growth diagnostics: consecutive-size ratios and bound comparisons.

Prints vi(n)/vi(n-1) for the tail of a golden table next to the
certified exponential base, then locates where the Steiner-system
construction for modular lattices starts giving a nontrivial bound.

    python3 scripts/growth_report.py
    python3 scripts/growth_report.py --tail 15
"""

from __future__ import annotations

import argparse
import sys

from vilat.counting import growth_ratios, steiner_admissible_k, steiner_bound
from vilat.families import Family
from vilat.tables import golden_cert, golden_counts


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--tail", type=int, default=10, help="ratio rows to show")
    args = ap.parse_args()

    for family in (Family.MODULAR, Family.DISTRIBUTIVE):
        base = float(golden_cert(family).base)
        print(f"{family.value} (certified base {base}):")
        rows = [r for r in growth_ratios(golden_counts(family)) if r[1] is not None]
        for n, r_vi, r_excl in rows[-args.tail:]:
            print(
                f"  n={n:3d}  vi ratio {float(r_vi):.6f}  "
                f"excl. compositions {float(r_excl):.6f}"
            )
        print()

    print("Steiner-based bound for modular lattices, ln f(n) >= n ln(0.3286 n^(1/8)):")
    for n in (100, 1000, 7356, 7357, 10000):
        k = steiner_admissible_k(n)
        print(f"  n={n:6d}  admissible k={k:4d}  bound exponent {steiner_bound(n):.2f}")
    lo, hi = 100, 10**5
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if steiner_bound(mid) > 0:
            hi = mid
        else:
            lo = mid
    print(f"  bound turns positive at n={hi}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
