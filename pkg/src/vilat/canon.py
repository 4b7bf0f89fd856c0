"""Canonical labeling and automorphisms of leveled diagrams.

Isomorphism here always means level-preserving: a bijection mapping each
level onto itself (levels are rank classes, so any order isomorphism of
graded lattices has this shape).  The labeler is a small
individualization-refinement search on the two-colored cover digraph: the
initial ordered partition is the level sequence, refinement splits cells
by cover-degree multisets toward neighbouring levels, and the canonical
form is the least relabeled cover matrix over all leaves explored.
Automorphisms discovered along the way (pairs of leaves with equal form)
are reported as generators and used to prune the search.
"""

from __future__ import annotations

import struct
from functools import lru_cache

from .core import LeveledLattice


@lru_cache(maxsize=1 << 15)
def _canonical_data(
    sizes: tuple[int, ...], prev_rows: tuple[tuple[int, ...], ...]
) -> tuple[tuple, tuple[int, ...], list[tuple[int, ...]]]:
    """Canonicalize a leveled digraph given per-element masks into the
    previous level (``prev_rows[d][i]`` for levels d >= 1; entry 0 ignored).

    Returns (form, labeling, generators) where ``labeling[p]`` is the
    input vertex placed at canonical position p (positions run level by
    level) and generators are vertex permutations of the input.
    """
    depth = len(sizes)
    n = sum(sizes)
    off = []
    acc = 0
    for s in sizes:
        off.append(acc)
        acc += s
    lof = [d for d in range(depth) for _ in range(sizes[d])]
    up = [0] * n
    dn = [0] * n
    for d in range(1, depth):
        row = prev_rows[d]
        for i in range(sizes[d]):
            v = off[d] + i
            m = row[i]
            while m:
                b = m & -m
                w = off[d - 1] + b.bit_length() - 1
                up[v] |= 1 << w
                dn[w] |= 1 << v
                m ^= b

    def refine(cells: list[list[int]], queue: list[list[int]]) -> None:
        while queue:
            sp = queue.pop()
            smask = 0
            for v in sp:
                smask |= 1 << v
            d = lof[sp[0]]
            i = 0
            while i < len(cells):
                cell = cells[i]
                if len(cell) > 1:
                    dc = lof[cell[0]]
                    if dc == d - 1:
                        adj = dn
                    elif dc == d + 1:
                        adj = up
                    else:
                        i += 1
                        continue
                    first = (adj[cell[0]] & smask).bit_count()
                    split = False
                    for v in cell[1:]:
                        if (adj[v] & smask).bit_count() != first:
                            split = True
                            break
                    if split:
                        groups: dict[int, list[int]] = {}
                        for v in cell:
                            groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                        parts = [groups[k] for k in sorted(groups)]
                        cells[i : i + 1] = parts
                        queue.extend(parts)
                        i += len(parts)
                        continue
                i += 1

    best_form: list = [None]
    best_lab: list = [None]
    first_labs: dict = {}
    gens: list[tuple[int, ...]] = []

    def leaf(cells: list[list[int]]) -> None:
        lab = []
        for c in cells:
            lab.extend(c)
        pos_local = [0] * n
        counter = [0] * depth
        for v in lab:
            d = lof[v]
            pos_local[v] = counter[d]
            counter[d] += 1
        flat = []
        for p, v in enumerate(lab):
            d = lof[v]
            if d == 0:
                continue
            m = prev_rows[d][v - off[d]]
            out = 0
            while m:
                b = m & -m
                out |= 1 << pos_local[off[d - 1] + b.bit_length() - 1]
                m ^= b
            flat.append(out)
        form = tuple(flat)
        prev = first_labs.get(form)
        if prev is None:
            first_labs[form] = lab
        else:
            g = [0] * n
            for p in range(n):
                g[prev[p]] = lab[p]
            gt = tuple(g)
            if gt not in _seen_gens:
                _seen_gens.add(gt)
                gens.append(gt)
        if best_form[0] is None or form < best_form[0]:
            best_form[0] = form
            best_lab[0] = lab

    _seen_gens: set = set()
    _clone_cells: set = set()

    def _is_clone(cell: list[int]) -> bool:
        """All members structurally identical (equal adjacency masks).

        Such cells never split under refinement and any within-cell order
        gives the same form, so they are left whole; their transpositions
        are automorphisms outright.
        """
        u0 = cell[0]
        for v in cell[1:]:
            if up[v] != up[u0] or dn[v] != dn[u0]:
                return False
        key = tuple(cell)
        if key not in _clone_cells:
            _clone_cells.add(key)
            for a, b in zip(cell, cell[1:]):
                g = list(range(n))
                g[a], g[b] = b, a
                gt = tuple(g)
                if gt not in _seen_gens:
                    _seen_gens.add(gt)
                    gens.append(gt)
        return True

    def explore(cells: list[list[int]], base: list[int]) -> None:
        target = -1
        tsize = n + 1
        for i, cell in enumerate(cells):
            if 1 < len(cell) < tsize and not _is_clone(cell):
                target = i
                tsize = len(cell)
        if target < 0:
            leaf(cells)
            return
        cell = cells[target]
        explored: list[int] = []
        # Orbit pruning: a sibling equivalent to an explored one under base
        # stabilizing automorphisms found so far yields nothing new.  The
        # orbit partition is rebuilt lazily, only after gens have grown.
        parent: list[int] = []
        stale = True
        gens_seen = 0

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in sorted(cell):
            if explored and gens:
                if stale or gens_seen != len(gens):
                    gens_seen = len(gens)
                    stale = False
                    parent[:] = range(n)
                    for g in gens:
                        ok = True
                        for b in base:
                            if g[b] != b:
                                ok = False
                                break
                        if ok:
                            for x in range(n):
                                rx, ry = find(x), find(g[x])
                                if rx != ry:
                                    parent[rx] = ry
                rv = find(v)
                if any(rv == find(u) for u in explored):
                    continue
            explored.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            refine(child, [child[target], child[target + 1]])
            explore(child, base + [v])

    cells0 = [list(range(off[d], off[d] + sizes[d])) for d in range(depth)]
    refine(cells0, list(cells0))
    explore(cells0, [])
    return (sizes,) + best_form[0], tuple(best_lab[0]), gens


@lru_cache(maxsize=1 << 16)
def _lattice_canon(
    L: LeveledLattice,
) -> tuple[bytes, tuple[int, ...], tuple[tuple[int, ...], ...]]:
    """Canonical bytes, relabeling map and automorphism generators of L.

    The engine walks the diagram top-down (masks toward the level above),
    so lattice levels are reversed on the way in and positions translated
    back to bottom-up global indices on the way out.
    """
    r = L.rank
    sizes = tuple(reversed(L.level_sizes))
    prev_rows: tuple = ((),) + tuple(L.up_covers[r - d] for d in range(1, r + 1))
    _, lab, gens = _canonical_data(sizes, prev_rows)

    eng_off = []
    acc = 0
    for s in sizes:
        eng_off.append(acc)
        acc += s
    to_lat = [0] * L.n
    for d in range(r + 1):
        t = r - d
        for i in range(sizes[d]):
            to_lat[eng_off[d] + i] = L.offsets[t] + i

    relab = [0] * L.n
    counter = [0] * (r + 1)
    for p, v_eng in enumerate(lab):
        v = to_lat[v_eng]
        t = L.level_of[v]
        relab[v] = L.offsets[t] + counter[t]
        counter[t] += 1

    rows = []
    for t in range(r):
        row = [0] * L.level_sizes[t]
        for i, mask in enumerate(L.up_covers[t]):
            ci = relab[L.offsets[t] + i] - L.offsets[t]
            m = mask
            out = 0
            while m:
                b = m & -m
                out |= 1 << (relab[L.offsets[t + 1] + b.bit_length() - 1] - L.offsets[t + 1])
                m ^= b
            row[ci] = out
        rows.append(tuple(row))

    buf = bytearray()
    buf += struct.pack("<H", len(L.level_sizes))
    for s in L.level_sizes:
        buf += struct.pack("<H", s)
    for row in rows:
        for mask in row:
            buf += struct.pack("<Q", mask)

    lat_gens = []
    for g in gens:
        gl = [0] * L.n
        for v_eng in range(L.n):
            gl[to_lat[v_eng]] = to_lat[g[v_eng]]
        lat_gens.append(tuple(gl))
    return bytes(buf), tuple(relab), tuple(lat_gens)


def canonical_form(L: LeveledLattice) -> bytes:
    """Isomorphism-invariant byte string: level sizes, then the relabeled
    cover bitmask rows bottom-up in canonical element order."""
    return _lattice_canon(L)[0]


def automorphism_generators(L: LeveledLattice) -> tuple[tuple[int, ...], ...]:
    """Generators of the automorphism group as global permutations.

    The list may be empty (trivial group) and is not guaranteed minimal.
    """
    return _lattice_canon(L)[2]


def are_isomorphic(a: LeveledLattice, b: LeveledLattice) -> bool:
    if a.level_sizes != b.level_sizes:
        return False
    return canonical_form(a) == canonical_form(b)


def canonical_relabel(L: LeveledLattice) -> LeveledLattice:
    """The canonically labeled copy of L (same form, deterministic order)."""
    relab = _lattice_canon(L)[1]
    rows = []
    for t in range(L.rank):
        row = [0] * L.level_sizes[t]
        for i, mask in enumerate(L.up_covers[t]):
            ci = relab[L.offsets[t] + i] - L.offsets[t]
            m = mask
            out = 0
            while m:
                b = m & -m
                out |= 1 << (relab[L.offsets[t + 1] + b.bit_length() - 1] - L.offsets[t + 1])
                m ^= b
            row[ci] = out
        rows.append(tuple(row))
    return LeveledLattice(L.level_sizes, tuple(rows))
