"""Check the exponential lower-bound certificates and report margins.

For each family the bundled certificate pins a base b and per-class
constants c so that class counts dominate c * b**n.  The verifier checks
the base window and the induction step in exact rational arithmetic;
this script additionally reports how much slack each part has.

    python3 scripts/certify_bounds.py
    python3 scripts/certify_bounds.py --cert my_cert.toml
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from vilat.counting import CountTable, PIECE_COLUMNS, compose_counts, verify_lower_bound
from vilat.families import Family
from vilat.tables import golden_cert, golden_counts, load_cert


def pieces_of(table: CountTable) -> CountTable:
    out = CountTable()
    for n in table.sizes():
        for col in PIECE_COLUMNS:
            if table.get(n, col) is not None:
                out.set(n, col, table.value(n, col))
    return out


def report(cert, pieces: CountTable) -> bool:
    verdict = verify_lower_bound(cert, pieces)
    for line in verdict.messages:
        print(("  pass: " if verdict.passed else "  FAIL: ") + line)

    work = CountTable()
    for n in pieces.sizes():
        for col in PIECE_COLUMNS:
            work.set(n, col, pieces.value(n, col))
    compose_counts(work, cert.n1)
    for col, c in (("CF", cert.c_cf), ("CS", cert.c_cs), ("CN", cert.c_cn)):
        margin = min(
            Fraction(work.value(n, col)) / (c * cert.base**n)
            for n in range(cert.n0, cert.n1 + 1)
        )
        print(f"  {col}: tightest window ratio count/(c*b^n) = {float(margin):.4f}")
    return verdict.passed


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cert", help="TOML certificate; default is both bundled ones")
    args = ap.parse_args()

    ok = True
    if args.cert:
        cert = load_cert(args.cert)
        print(f"{cert.family}: base {float(cert.base)}")
        ok = report(cert, pieces_of(golden_counts(cert.family)))
    else:
        for family in (Family.MODULAR, Family.DISTRIBUTIVE):
            cert = golden_cert(family)
            print(f"{family.value}: base {float(cert.base)}")
            ok = report(cert, pieces_of(golden_counts(family))) and ok
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
