"""Lattice family predicates and related structural measures.

On graded lattices the two cover-square conditions take a purely local
form: upper semimodularity says any two elements of a level with a common
lower cover also have a common upper cover, and dually.  The predicates
below use that form after confirming the input really is a lattice.
"""

from __future__ import annotations

from enum import Enum

from .core import LeveledLattice, dual, meet_join_tables


class Family(Enum):
    SEMIMODULAR = "semimodular"
    MODULAR = "modular"
    DISTRIBUTIVE = "distributive"

    def contains(self, L: LeveledLattice) -> bool:
        if self is Family.SEMIMODULAR:
            return is_semimodular(L)
        if self is Family.MODULAR:
            return is_modular(L)
        return is_distributive(L)


def _upper_birkhoff(L: LeveledLattice) -> bool:
    """Pairs covering their meet are covered by their join.

    Gradedness puts any such pair in one level with a shared down cover,
    and makes the unique shared up cover, when present, equal the join.
    """
    for t in range(1, L.rank):
        dc = L.down_covers[t - 1]
        uc = L.up_covers[t]
        for x in range(L.level_sizes[t]):
            for y in range(x + 1, L.level_sizes[t]):
                if dc[x] & dc[y] and not uc[x] & uc[y]:
                    return False
    return True


def is_semimodular(L: LeveledLattice) -> bool:
    meet_join_tables(L)
    return _upper_birkhoff(L)


def is_modular(L: LeveledLattice) -> bool:
    meet_join_tables(L)
    return _upper_birkhoff(L) and _upper_birkhoff(dual(L))


def _has_cover_diamond(L: LeveledLattice) -> bool:
    """A diamond o < a,b,c < i with all five relations covers."""
    for t in range(L.rank - 1):
        for i_local in range(L.level_sizes[t + 2]):
            dd = L.down_covers[t + 1][i_local]
            for o_local in range(L.level_sizes[t]):
                if (L.up_covers[t][o_local] & dd).bit_count() >= 3:
                    return True
    return False


def is_distributive(L: LeveledLattice) -> bool:
    return is_modular(L) and not _has_cover_diamond(L)


def meet_irreducible_count(L: LeveledLattice) -> int:
    """Number of elements with exactly one upper cover."""
    return sum(
        1 for row in L.up_covers for mask in row if mask & (mask - 1) == 0
    )


def consecutive_levels_connected(L: LeveledLattice, t: int) -> bool:
    """Is the bipartite cover graph between levels t and t+1 connected?"""
    if not 0 <= t < L.rank:
        raise ValueError(f"no level pair ({t}, {t + 1}) in a rank-{L.rank} lattice")
    a, b = L.level_sizes[t], L.level_sizes[t + 1]
    row = L.up_covers[t]
    seen_lo = 1
    seen_hi = 0
    frontier = [0]
    while frontier:
        x = frontier.pop()
        m = row[x] & ~seen_hi
        seen_hi |= row[x]
        while m:
            bit = m & -m
            y = bit.bit_length() - 1
            for x2 in range(a):
                if row[x2] >> y & 1 and not seen_lo >> x2 & 1:
                    seen_lo |= 1 << x2
                    frontier.append(x2)
            m ^= bit
    return seen_lo == (1 << a) - 1 and seen_hi == (1 << b) - 1
