"""Symmetry classification of vi-lattices and the two-sum outcome table.

Every vi-lattice falls into exactly one of thirteen classes.  A lattice
with a neck (an interior two-element level) is a composition: CN when it
has three or more coatoms, otherwise CF or CS according to whether its two
coatoms are fixed by every automorphism or swapped by some.  A neckless
lattice of rank >= 3 with two atoms or two coatoms is a piece: middle
pieces (two of each) split into MF/MA/MC/MX/MH by which end swaps the
automorphism group realizes, bottom pieces (>= 3 atoms) into BF/BS by the
coatom pair, top pieces dually into TF/TS by the atom pair.  Everything
else, including all lattices of rank < 3, is special.
"""

from __future__ import annotations

from enum import Enum

from .canon import automorphism_generators
from .core import (
    LeveledLattice,
    MatchOrder,
    atoms,
    coatoms,
    necks,
    is_vertically_decomposable,
    vertical_2sum,
)


class NotViLattice(ValueError):
    """The input is vertically decomposable."""


class NoNeck(ValueError):
    """Decomposition requested on a lattice without a neck."""


class SymmetryType(Enum):
    MF = "MF"
    MA = "MA"
    MC = "MC"
    MX = "MX"
    MH = "MH"
    BF = "BF"
    BS = "BS"
    TF = "TF"
    TS = "TS"
    SPECIAL = "special"
    CF = "CF"
    CS = "CS"
    CN = "CN"

    @property
    def is_piece(self) -> bool:
        return self in _PIECES

    @property
    def is_composition(self) -> bool:
        return self in (SymmetryType.CF, SymmetryType.CS, SymmetryType.CN)


_PIECES = frozenset(
    {
        SymmetryType.MF,
        SymmetryType.MA,
        SymmetryType.MC,
        SymmetryType.MX,
        SymmetryType.MH,
        SymmetryType.BF,
        SymmetryType.BS,
        SymmetryType.TF,
        SymmetryType.TS,
    }
)

PIECE_TYPES = tuple(sorted(_PIECES, key=lambda s: s.value))


def _swaps(g: tuple[int, ...], pair: tuple[int, ...]) -> bool:
    return g[pair[0]] == pair[1]


def classify(L: LeveledLattice) -> SymmetryType:
    """Symmetry class of a vi-lattice; raises NotViLattice otherwise."""
    if is_vertically_decomposable(L):
        raise NotViLattice("lattice has a cut element")
    r = L.rank
    if r < 3:
        return SymmetryType.SPECIAL
    a = L.level_sizes[1]
    c = L.level_sizes[r - 1]
    if necks(L):
        if c >= 3:
            return SymmetryType.CN
        cpair = coatoms(L)
        for g in automorphism_generators(L):
            if _swaps(g, cpair):
                return SymmetryType.CS
        return SymmetryType.CF
    if a == 2 and c == 2:
        apair = atoms(L)
        cpair = coatoms(L)
        # Image of the automorphism group in Z2 x Z2 recording which end
        # pairs get swapped; spanned by the generator images, so the
        # outcome does not depend on the generating set produced.
        span = {(False, False)}
        for g in automorphism_generators(L):
            img = (_swaps(g, apair), _swaps(g, cpair))
            span |= {(x ^ img[0], y ^ img[1]) for (x, y) in span}
        has_a = (True, False) in span
        has_c = (False, True) in span
        has_b = (True, True) in span
        if has_a and (has_c or has_b):
            return SymmetryType.MX
        if has_a:
            return SymmetryType.MA
        if has_c:
            return SymmetryType.MC
        if has_b:
            return SymmetryType.MH
        return SymmetryType.MF
    if a >= 3 and c == 2:
        cpair = coatoms(L)
        for g in automorphism_generators(L):
            if _swaps(g, cpair):
                return SymmetryType.BS
        return SymmetryType.BF
    if a == 2 and c >= 3:
        apair = atoms(L)
        for g in automorphism_generators(L):
            if _swaps(g, apair):
                return SymmetryType.TS
        return SymmetryType.TF
    return SymmetryType.SPECIAL


_LOWER_FIXED = frozenset(
    {SymmetryType.CF, SymmetryType.BF, SymmetryType.MF, SymmetryType.MA}
)
_LOWER_SWAPPED = frozenset(
    {
        SymmetryType.CS,
        SymmetryType.BS,
        SymmetryType.MC,
        SymmetryType.MX,
        SymmetryType.MH,
    }
)
_UPPER_FIXED = frozenset({SymmetryType.MF, SymmetryType.MC, SymmetryType.TF})
_UPPER_OK = frozenset(
    {
        SymmetryType.MF,
        SymmetryType.MA,
        SymmetryType.MC,
        SymmetryType.MX,
        SymmetryType.MH,
        SymmetryType.TF,
        SymmetryType.TS,
    }
)


def two_sum_outcomes(lower: SymmetryType, upper: SymmetryType) -> list[SymmetryType]:
    """Isomorphism classes produced by the two 2-sums of a lower summand of
    class ``lower`` with an upper summand of class ``upper``, with
    multiplicity (two entries when straight and crossed differ).

    A CN lower summand admits no 2-sum (it lacks a coatom pair) and
    yields [].
    """
    if lower is SymmetryType.CN:
        return []
    if lower not in _LOWER_FIXED and lower not in _LOWER_SWAPPED:
        raise ValueError(f"invalid lower summand class {lower.value}")
    if upper not in _UPPER_OK:
        raise ValueError(f"invalid upper summand class {upper.value}")
    if upper in (SymmetryType.TF, SymmetryType.TS):
        out = SymmetryType.CN
    elif upper in (SymmetryType.MC, SymmetryType.MX):
        out = SymmetryType.CS
    elif upper is SymmetryType.MH:
        out = SymmetryType.CS if lower in _LOWER_SWAPPED else SymmetryType.CF
    else:
        out = SymmetryType.CF
    count = 2 if lower in _LOWER_FIXED and upper in _UPPER_FIXED else 1
    return [out] * count


def decompose_at_highest_neck(
    S: LeveledLattice,
) -> tuple[LeveledLattice, LeveledLattice]:
    """Split a composition at its highest neck into (lower, upper).

    The upper part gains a new bottom under the neck pair and is always a
    piece; the lower part gains a new top.  vertical_2sum(lower, upper,
    STRAIGHT) rebuilds S exactly (same element order).
    """
    if is_vertically_decomposable(S):
        raise NotViLattice("lattice has a cut element")
    nk = necks(S)
    if not nk:
        raise NoNeck("lattice has no neck")
    t = nk[-1]
    lower = LeveledLattice(
        S.level_sizes[: t + 1] + (1,),
        S.up_covers[:t] + ((1, 1),),
    )
    upper = LeveledLattice(
        (1,) + S.level_sizes[t:],
        ((3,),) + S.up_covers[t:],
    )
    return lower, upper


def straight_and_crossed(
    lower: LeveledLattice, upper: LeveledLattice
) -> tuple[LeveledLattice, LeveledLattice]:
    """Both 2-sums of a pair, straight first."""
    return (
        vertical_2sum(lower, upper, MatchOrder.STRAIGHT),
        vertical_2sum(lower, upper, MatchOrder.CROSSED),
    )
