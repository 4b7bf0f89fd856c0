"""Command-line surface: generation, classification, counting, bounds,
verification, and ratio export."""

from __future__ import annotations

import argparse
import hashlib
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import digraph6
from .counting import (
    aggregate,
    compose_counts,
    growth_ratios,
    verify_lower_bound,
    vertical_sum_totals,
)
from .families import Family
from .generate import GenConfig, GenMode, generate, resume, split_checkpoints
from .tables import (
    CSV_HEADER,
    golden_counts,
    load_cert,
    read_count_csv,
    write_count_csv,
)
from .verify import (
    classified_counts,
    compare_tables,
    count_listing,
    cross_check,
    verify_duality,
)

RATIOS_HEADER = "n,ratio_vi,ratio_vi_excl_compositions"


def _config(args) -> GenConfig:
    return GenConfig(
        family=Family(args.family),
        mode=GenMode(args.mode),
        max_n=args.max_n,
        checkpoint_depth=args.checkpoint_depth,
    )


def _state_records(payload) -> list[bytes]:
    config, state = payload
    records: list[bytes] = []
    resume(config, state, lambda L: records.append(digraph6.encode(L)))
    return records


def _generate_records(args) -> list[bytes]:
    config = _config(args)
    records: list[bytes] = []
    if args.workers > 1 or args.checkpoint_depth > 0:
        states = split_checkpoints(config)
        payloads = [(config, s) for s in states]
        if args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                chunks = list(pool.map(_state_records, payloads))
        else:
            chunks = [_state_records(p) for p in payloads]
        for chunk in chunks:
            records.extend(chunk)
    else:
        generate(config, lambda L: records.append(digraph6.encode(L)))
    records.sort()
    for a, b in zip(records, records[1:]):
        if a == b:
            raise RuntimeError("duplicate record across checkpoints")
    return records


def _cmd_generate(args) -> int:
    records = _generate_records(args)
    if args.out:
        digest = hashlib.sha256()
        with open(args.out, "wb") as fh:
            for r in records:
                fh.write(r)
                fh.write(b"\n")
                digest.update(r)
                digest.update(b"\n")
        with open(args.out + ".manifest", "w") as fh:
            fh.write(f"records {len(records)}\n")
            fh.write(f"sha256 {digest.hexdigest()}\n")
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    else:
        for r in records:
            sys.stdout.write(r.decode("ascii") + "\n")
    return 0


def _cmd_classify(args) -> int:
    table = count_listing(digraph6.read_records(args.infile))
    write_count_csv(args.out, table)
    return 0


def _cmd_count(args) -> int:
    table = read_count_csv(args.pieces)
    compose_counts(table, args.max_n)
    aggregate(table, args.max_n)
    vertical_sum_totals(table, args.max_n)
    write_count_csv(args.out, table, args.max_n)
    return 0


def _cmd_verify(args) -> int:
    if args.check == "duality":
        verdict, _ = verify_duality(digraph6.read_records(args.infile))
    elif args.check == "crosscheck":
        verdict = cross_check(Family(args.family), args.max_n)
    else:
        expected = (
            read_count_csv(args.expected)
            if args.expected
            else golden_counts(args.family)
        )
        direct = classified_counts(Family(args.family), args.max_n)
        compose_counts(direct, args.max_n)
        aggregate(direct, args.max_n)
        vertical_sum_totals(direct, args.max_n)
        cols = CSV_HEADER.split(",")[1:]
        verdict = compare_tables(direct, expected, args.max_n, cols)
    print(("Pass: " if verdict.passed else "Fail: ") + verdict.detail)
    return 0 if verdict.passed else 1


def _cmd_bounds(args) -> int:
    cert = load_cert(args.cert)
    pieces = read_count_csv(args.pieces)
    verdict = verify_lower_bound(cert, pieces)
    for line in verdict.messages:
        print(("Pass: " if verdict.passed else "Fail: ") + line)
    return 0 if verdict.passed else 1


def _cmd_ratios(args) -> int:
    table = read_count_csv(args.table)
    with open(args.out, "w") as fh:
        fh.write(RATIOS_HEADER + "\n")
        for n, r1, r2 in growth_ratios(table):
            cells = [str(n)]
            for r in (r1, r2):
                cells.append("" if r is None else _decimal6(r))
            fh.write(",".join(cells) + "\n")
    return 0


def _decimal6(x: Fraction) -> str:
    scaled = (x * 10**6).__round__()
    return f"{scaled // 10**6}.{scaled % 10**6:06d}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vilat",
        description="Generate, classify and count graded "
        "vertically-indecomposable lattices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    families = [f.value for f in Family]
    modes = [m.value for m in GenMode]

    p = sub.add_parser("generate", help="enumerate lattices into a listing")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--max-n", required=True, type=int)
    p.add_argument("--mode", default=GenMode.PIECES_AND_SPECIALS.value, choices=modes)
    p.add_argument("--checkpoint-depth", type=int, default=0)
    p.add_argument("--out", help="listing path; stdout when omitted")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("classify", help="tally a listing by symmetry type")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("count", help="derive composition counts and totals")
    p.add_argument("--pieces", required=True)
    p.add_argument("--max-n", required=True, type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="run a consistency check")
    p.add_argument("check", choices=["duality", "crosscheck", "tables"])
    p.add_argument("--in", dest="infile")
    p.add_argument("--family", choices=families)
    p.add_argument("--max-n", type=int)
    p.add_argument("--expected")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="check an exponential lower-bound cert")
    p.add_argument("--cert", required=True)
    p.add_argument("--pieces", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("ratios", help="export consecutive-size growth ratios")
    p.add_argument("--table", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_ratios)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        if args.check == "duality" and not args.infile:
            parser.error("verify duality requires --in")
        if args.check in ("crosscheck", "tables") and not (
            args.family and args.max_n
        ):
            parser.error(f"verify {args.check} requires --family and --max-n")
    try:
        return args.func(args)
    except (ValueError, RuntimeError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
