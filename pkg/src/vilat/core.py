"""Graded bounded lattices stored level by level.

A lattice is kept as its Hasse diagram sliced into rank levels: a tuple of
level sizes (bottom level first, first and last of size 1) and, for every
non-top element, a bitmask of its covers in the next level up.  Elements are
numbered globally bottom-up, level by level, in mask bit order.  All
operations treat the structure as immutable and return fresh objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

MAX_LEVEL_WIDTH = 63


class LevelWidthError(ValueError):
    """A level exceeds the single-word width cap of 63 elements."""


class NotALattice(ValueError):
    """Join or meet failed for a pair; carries the first offending pair."""

    def __init__(self, pair: tuple[int, int], what: str):
        self.pair = pair
        self.what = what
        super().__init__(f"no unique {what} for element pair {pair}")


class PreconditionViolation(ValueError):
    """Arguments violate an operation's structural preconditions."""


class MatchOrder(Enum):
    """How coatoms of the lower summand are matched to atoms of the upper."""

    STRAIGHT = "straight"
    CROSSED = "crossed"


@dataclass(frozen=True)
class LeveledLattice:
    """Hasse diagram of a graded bounded lattice, sliced into levels.

    ``level_sizes[t]`` is the number of elements of rank t and
    ``up_covers[t][i]`` is the bitmask (over level t+1) of covers of the
    i-th element of level t.  The constructor validates the diagram shape:
    bounded, graded, every non-top element covered, every non-bottom
    element covering something.  It does not check the lattice property;
    see :func:`meet_join_tables`.
    """

    level_sizes: tuple[int, ...]
    up_covers: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        sizes = tuple(self.level_sizes)
        ups = tuple(tuple(row) for row in self.up_covers)
        object.__setattr__(self, "level_sizes", sizes)
        object.__setattr__(self, "up_covers", ups)
        if not sizes or sizes[0] != 1 or sizes[-1] != 1:
            raise ValueError("bottom and top levels must have exactly one element")
        if any(s < 1 for s in sizes):
            raise ValueError("level sizes must be positive")
        if max(sizes) > MAX_LEVEL_WIDTH:
            raise LevelWidthError(f"level wider than {MAX_LEVEL_WIDTH} elements")
        if len(ups) != len(sizes) - 1:
            raise ValueError("need one cover row per non-top level")
        for t, row in enumerate(ups):
            if len(row) != sizes[t]:
                raise ValueError(f"cover row {t} does not match level size")
            full = (1 << sizes[t + 1]) - 1
            seen = 0
            for mask in row:
                if mask <= 0 or mask > full:
                    raise ValueError(f"cover mask out of range at level {t}")
                seen |= mask
            if seen != full:
                raise ValueError(f"uncovered element in level {t + 1}")

    @property
    def n(self) -> int:
        return sum(self.level_sizes)

    @property
    def rank(self) -> int:
        return len(self.level_sizes) - 1

    @property
    def rank_sequence(self) -> tuple[int, ...]:
        return self.level_sizes

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        """Global index of the first element of each level."""
        out = []
        acc = 0
        for s in self.level_sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    @cached_property
    def level_of(self) -> tuple[int, ...]:
        out = []
        for t, s in enumerate(self.level_sizes):
            out.extend([t] * s)
        return tuple(out)

    @cached_property
    def down_covers(self) -> tuple[tuple[int, ...], ...]:
        """Per level t >= 1, bitmasks over level t-1 of covered elements."""
        rows = []
        for t in range(1, len(self.level_sizes)):
            row = [0] * self.level_sizes[t]
            for x, mask in enumerate(self.up_covers[t - 1]):
                m = mask
                while m:
                    b = m & -m
                    row[b.bit_length() - 1] |= 1 << x
                    m ^= b
            rows.append(tuple(row))
        return tuple(rows)

    @cached_property
    def up_sets(self) -> tuple[int, ...]:
        """Inclusive up-set of each element as a global bitmask."""
        n = self.n
        sets = [0] * n
        off = self.offsets
        for t in range(len(self.level_sizes) - 1, -1, -1):
            for i in range(self.level_sizes[t]):
                v = off[t] + i
                acc = 1 << v
                if t < len(self.level_sizes) - 1:
                    m = self.up_covers[t][i]
                    while m:
                        b = m & -m
                        acc |= sets[off[t + 1] + b.bit_length() - 1]
                        m ^= b
                sets[v] = acc
        return tuple(sets)

    @cached_property
    def down_sets(self) -> tuple[int, ...]:
        n = self.n
        sets = [0] * n
        off = self.offsets
        for t in range(len(self.level_sizes)):
            for i in range(self.level_sizes[t]):
                v = off[t] + i
                acc = 1 << v
                if t > 0:
                    m = self.down_covers[t - 1][i]
                    while m:
                        b = m & -m
                        acc |= sets[off[t - 1] + b.bit_length() - 1]
                        m ^= b
                sets[v] = acc
        return tuple(sets)

    @cached_property
    def level_masks(self) -> tuple[int, ...]:
        """Global bitmask of each level's elements."""
        out = []
        for t, s in enumerate(self.level_sizes):
            out.append(((1 << s) - 1) << self.offsets[t])
        return tuple(out)

    def cover_digraph(self) -> tuple[int, frozenset[tuple[int, int]]]:
        """Edges (lower, upper) over global element indices."""
        edges = set()
        off = self.offsets
        for t, row in enumerate(self.up_covers):
            for i, mask in enumerate(row):
                m = mask
                while m:
                    b = m & -m
                    edges.add((off[t] + i, off[t + 1] + b.bit_length() - 1))
                    m ^= b
        return self.n, frozenset(edges)


def atoms(L: LeveledLattice) -> tuple[int, ...]:
    """Global indices of the atoms (level-1 elements); empty for the singleton."""
    if L.rank == 0:
        return ()
    return tuple(range(L.offsets[1], L.offsets[1] + L.level_sizes[1]))


def coatoms(L: LeveledLattice) -> tuple[int, ...]:
    """Global indices of the coatoms; empty for the singleton."""
    if L.rank == 0:
        return ()
    t = L.rank - 1
    return tuple(range(L.offsets[t], L.offsets[t] + L.level_sizes[t]))


def necks(L: LeveledLattice) -> tuple[int, ...]:
    """Levels of size 2 other than the atom and coatom levels, ascending."""
    r = L.rank
    return tuple(t for t in range(2, r - 1) if L.level_sizes[t] == 2)


def is_vertically_decomposable(L: LeveledLattice) -> bool:
    """True iff some interior level is a singleton (a cut element)."""
    return any(s == 1 for s in L.level_sizes[1:-1])


def meet_join_tables(L: LeveledLattice) -> tuple[list[list[int]], list[list[int]]]:
    """Full meet and join tables, or NotALattice with the first bad pair.

    Pairs are scanned in lexicographic order of global indices; for each
    pair the join is checked before the meet.
    """
    n = L.n
    ups = L.up_sets
    downs = L.down_sets
    lmasks = L.level_masks
    lof = L.level_of
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for u in range(n):
        meet[u][u] = join[u][u] = u
        for v in range(u + 1, n):
            s = ups[u] & ups[v]
            low = (s & -s).bit_length() - 1
            cand = s & lmasks[lof[low]]
            if cand != (1 << low) or s != ups[low]:
                raise NotALattice((u, v), "join")
            join[u][v] = join[v][u] = low
            s = downs[u] & downs[v]
            high = s.bit_length() - 1
            cand = s & lmasks[lof[high]]
            if cand != (1 << high) or s != downs[high]:
                raise NotALattice((u, v), "meet")
            meet[u][v] = meet[v][u] = high
    return meet, join


def dual(L: LeveledLattice) -> LeveledLattice:
    """Order dual: levels reversed, covers flipped, element order kept."""
    r = L.rank
    sizes = tuple(reversed(L.level_sizes))
    rows = tuple(L.down_covers[r - 1 - d] for d in range(r))
    return LeveledLattice(sizes, rows)


def vertical_sum(L: LeveledLattice, U: LeveledLattice) -> LeveledLattice:
    """Stack U on top of L, identifying top of L with bottom of U."""
    sizes = L.level_sizes + U.level_sizes[1:]
    rows = L.up_covers + U.up_covers
    return LeveledLattice(sizes, rows)


def vertical_2sum(
    L: LeveledLattice, U: LeveledLattice, order: MatchOrder
) -> LeveledLattice:
    """Glue U onto L along a new neck: drop top of L and bottom of U, then
    identify the two coatoms of L with the two atoms of U.

    STRAIGHT matches coatom k with atom k in element order; CROSSED swaps.
    Requires rank >= 3 on both sides, exactly two coatoms in L and two
    atoms in U.
    """
    if L.rank < 3 or U.rank < 3:
        raise PreconditionViolation("both summands need rank >= 3")
    if L.level_sizes[-2] != 2:
        raise PreconditionViolation("lower summand must have exactly 2 coatoms")
    if U.level_sizes[1] != 2:
        raise PreconditionViolation("upper summand must have exactly 2 atoms")
    sizes = L.level_sizes[:-1] + U.level_sizes[2:]
    atom_rows = U.up_covers[1]
    if order is MatchOrder.STRAIGHT:
        junction = (atom_rows[0], atom_rows[1])
    else:
        junction = (atom_rows[1], atom_rows[0])
    rows = L.up_covers[:-1] + (junction,) + U.up_covers[2:]
    return LeveledLattice(sizes, rows)


def lattice_from_cover_digraph(
    n: int, edges: frozenset[tuple[int, int]] | set[tuple[int, int]]
) -> LeveledLattice:
    """Rebuild a LeveledLattice from a cover digraph with edges (lower, upper).

    The digraph must be the diagram of a graded bounded poset: unique
    source, unique sink, all maximal chains of equal length.  Element order
    within each level follows ascending vertex number.
    """
    if n == 1:
        if edges:
            raise ValueError("singleton digraph cannot have edges")
        return LeveledLattice((1,), ())
    preds: list[list[int]] = [[] for _ in range(n)]
    succs: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise ValueError("edge out of range")
        preds[j].append(i)
        succs[i].append(j)
    sources = [v for v in range(n) if not preds[v]]
    if len(sources) != 1:
        raise ValueError("cover digraph must have a unique bottom")
    rank = [-1] * n
    rank[sources[0]] = 0
    indeg = [len(p) for p in preds]
    queue = [sources[0]]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in succs[v]:
            if rank[w] < rank[v] + 1:
                rank[w] = rank[v] + 1
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if seen != n:
        raise ValueError("cover digraph must be acyclic and connected")
    for i, j in edges:
        if rank[j] != rank[i] + 1:
            raise ValueError("cover digraph is not graded")
    r = max(rank)
    by_level: list[list[int]] = [[] for _ in range(r + 1)]
    for v in range(n):
        by_level[rank[v]].append(v)
    for level in by_level:
        level.sort()
    pos = {}
    for level in by_level:
        for i, v in enumerate(level):
            pos[v] = i
    sizes = tuple(len(level) for level in by_level)
    rows = []
    for t in range(r):
        row = [0] * sizes[t]
        for v in by_level[t]:
            for w in succs[v]:
                row[pos[v]] |= 1 << pos[w]
        rows.append(tuple(row))
    return LeveledLattice(sizes, tuple(rows))
