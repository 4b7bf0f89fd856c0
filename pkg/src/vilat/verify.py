"""Consistency harness: duality ledger and generation-vs-recurrence checks.

Dualization is a size-preserving involution on vi-lattices that reverses
rank sequences, maps MA to MC, BF to TF, BS to TS, preserves MF, MX, MH
and special, and permutes compositions.  A complete listing therefore
satisfies exact count identities that catch truncation or classification
bugs without any external reference data.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .classify import classify
from .core import LeveledLattice
from .counting import (
    CLASS_COLUMNS,
    PIECE_COLUMNS,
    CountTable,
    aggregate,
    compose_counts,
)
from .families import Family
from .generate import GenConfig, GenMode, generate


@dataclass
class Verdict:
    passed: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed


_DUAL_PAIRS = (
    ("MA", "MC"),
    ("BF", "TF"),
    ("BS", "TS"),
    ("MF", "MF"),
    ("MX", "MX"),
    ("MH", "MH"),
    ("special", "special"),
)


@dataclass
class DualityLedger:
    """Counts keyed by (symmetry type, rank sequence) for each size."""

    counts: dict[int, dict[tuple[str, tuple[int, ...]], int]] = field(
        default_factory=dict
    )

    def add(self, L: LeveledLattice) -> None:
        key = (classify(L).value, L.rank_sequence)
        per = self.counts.setdefault(L.n, {})
        per[key] = per.get(key, 0) + 1

    def get(self, n: int, label: str, seq: tuple[int, ...]) -> int:
        return self.counts.get(n, {}).get((label, seq), 0)


def verify_duality(lattices: Iterable[LeveledLattice]) -> tuple[Verdict, DualityLedger]:
    """Check the dual-pair identities on a listing assumed complete for
    each size it contains; reports the first mismatch."""
    ledger = DualityLedger()
    for L in lattices:
        ledger.add(L)
    comp_labels = ("CF", "CS", "CN")
    for n in sorted(ledger.counts):
        per = ledger.counts[n]
        # include reversals so a class emptied by a dropped record is
        # still compared against its surviving partner
        seqs = sorted({seq for _, seq in per} | {seq[::-1] for _, seq in per})
        for seq in seqs:
            rev = seq[::-1]
            for a, b in _DUAL_PAIRS:
                if ledger.get(n, a, seq) != ledger.get(n, b, rev):
                    return (
                        Verdict(
                            False,
                            f"n={n}: {a} at {seq} has {ledger.get(n, a, seq)} "
                            f"but {b} at {rev} has {ledger.get(n, b, rev)}",
                        ),
                        ledger,
                    )
            # dualization permutes compositions, so only their total per
            # rank sequence is symmetric
            fwd = sum(ledger.get(n, c, seq) for c in comp_labels)
            bwd = sum(ledger.get(n, c, rev) for c in comp_labels)
            if fwd != bwd:
                return (
                    Verdict(
                        False,
                        f"n={n}: compositions at {seq} total {fwd} "
                        f"but {bwd} at {rev}",
                    ),
                    ledger,
                )
    return Verdict(True, "all dual-pair identities hold"), ledger


def classified_counts(
    family: Family, max_n: int, mode: GenMode = GenMode.ALL_VI_LATTICES
) -> CountTable:
    """Generate and classify, tallying one column per symmetry type."""
    table = CountTable()
    for n in range(1, max_n + 1):
        for col in CLASS_COLUMNS:
            table.set(n, col, 0)
    generate(
        GenConfig(family=family, mode=mode, max_n=max_n),
        lambda L: table.add(L.n, classify(L).value),
    )
    return table


def count_listing(lattices: Iterable[LeveledLattice]) -> CountTable:
    table = CountTable()
    for L in lattices:
        if L.n not in table.rows:
            for col in CLASS_COLUMNS:
                table.set(L.n, col, 0)
        table.add(L.n, classify(L).value)
    return table


def compare_tables(
    direct: CountTable, derived: CountTable, max_n: int, cols=CLASS_COLUMNS
) -> Verdict:
    for n in range(1, max_n + 1):
        for col in cols:
            a, b = direct.value(n, col), derived.value(n, col)
            if a != b:
                return Verdict(False, f"n={n} {col}: {a} != {b}")
    return Verdict(True, f"all columns agree for sizes 1..{max_n}")


def cross_check(family: Family, n_max: int) -> Verdict:
    """Compare per-class direct generation against the recurrence.

    The composition columns of the direct census are recomputed from its
    own piece columns; agreement exercises the generator, the classifier
    and the counting identities at once.
    """
    direct = classified_counts(family, n_max)
    derived = CountTable()
    for n in range(1, n_max + 1):
        for col in PIECE_COLUMNS + ("special",):
            derived.set(n, col, direct.value(n, col))
    compose_counts(derived, n_max)
    aggregate(derived, n_max)
    return compare_tables(direct, derived, n_max)
