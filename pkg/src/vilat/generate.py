"""Isomorph-free exhaustive generation of graded vi-lattices.

The search builds each lattice top-down: starting from the top element it
repeatedly appends a complete new level (every element given its covers in
the level above), and may at any point close the structure by adding a
bottom element below the current deepest level.  Interior levels have at
least two elements, so everything emitted is vertically indecomposable.

Correctness rests on incremental filters that are exact for graded
structures: a join-consistency test (each new pair of incomparable
elements must have a unique minimal common upper bound), the upper cover
square for semimodularity, the lower cover square for modularity
(tracked as pairs of the previous level that still need a common lower
cover), and a cover-diamond veto for distributivity.  Isomorph rejection
happens per parent fragment: completed candidate levels are deduplicated
under the parent's automorphisms, which suffices globally because a
fragment chain is determined by the lattice it leads to.  A final
canonical-form check over all emitted lattices guards the output anyway.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterator, TextIO

from .canon import _canonical_data, canonical_form
from .core import MAX_LEVEL_WIDTH, LeveledLattice
from .families import Family


class GenMode(Enum):
    PIECES_AND_SPECIALS = "pieces-and-specials"
    ALL_VI_LATTICES = "all-vi-lattices"


class BudgetExceeded(RuntimeError):
    """A width cap would silently truncate the search; refuse instead."""


_Sink = Callable[[LeveledLattice], None]


@dataclass(frozen=True)
class GenConfig:
    """Search parameters; immutable so runs are reproducible."""

    family: Family
    max_n: int
    mode: GenMode
    length_bound_pruning: bool = False
    checkpoint_depth: int = 0

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if self.checkpoint_depth < 0:
            raise ValueError("checkpoint_depth must be nonnegative")
        if self.length_bound_pruning and self.family is not Family.DISTRIBUTIVE:
            raise ValueError("length bound pruning is only valid for distributive runs")


@dataclass(frozen=True)
class SearchState:
    """A resumable node of the search tree.

    Open states hold a top-down fragment (level sizes starting at the top,
    cover masks toward the level above); closed states hold a finished
    lattice awaiting emission.  Budget and bookkeeping fields are stored
    explicitly and cross-checked on resume.
    """

    sizes: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    closed: bool
    budget_left: int
    mi_count: int
    current_length: int

    @property
    def is_root(self) -> bool:
        return not self.closed and self.sizes == (1,)


@dataclass
class GenSummary:
    per_n: dict[int, int] = field(default_factory=dict)
    fragments: int = 0

    @property
    def total(self) -> int:
        return sum(self.per_n.values())

    def merge(self, other: "GenSummary") -> None:
        for n, c in other.per_n.items():
            self.per_n[n] = self.per_n.get(n, 0) + c
        self.fragments += other.fragments


def length_bound(current_length: int, elements_used: int, max_n: int) -> int:
    """Cap on the final length reachable from a search node, hence on the
    meet-irreducible count of any distributive completion."""
    return current_length + (max_n - elements_used - 1)


def _mi_of_rows(rows: tuple[tuple[int, ...], ...]) -> int:
    return sum(1 for row in rows[1:] for m in row if m & (m - 1) == 0)


class _Frag:
    """A completed-levels prefix of the search, with derived lookups."""

    __slots__ = ("sizes", "rows", "ups", "mi", "n", "offs", "bit_level", "lmasks")

    def __init__(
        self,
        sizes: tuple[int, ...],
        rows: tuple[tuple[int, ...], ...],
        ups: tuple[int, ...],
        mi: int,
    ):
        self.sizes = sizes
        self.rows = rows
        self.ups = ups
        self.mi = mi
        self.n = len(ups)
        offs = []
        acc = 0
        for s in sizes:
            offs.append(acc)
            acc += s
        self.offs = tuple(offs)
        bl: list[int] = []
        for d, s in enumerate(sizes):
            bl.extend([d] * s)
        self.bit_level = tuple(bl)
        self.lmasks = tuple(((1 << s) - 1) << offs[d] for d, s in enumerate(sizes))


def _root() -> _Frag:
    return _Frag((1,), ((),), (1,), 0)


def _frag_from(sizes: tuple[int, ...], rows: tuple[tuple[int, ...], ...]) -> _Frag:
    """Rebuild ancestor masks and bookkeeping from serialized rows."""
    offs = []
    acc = 0
    for s in sizes:
        offs.append(acc)
        acc += s
    ups: list[int] = []
    for d, s in enumerate(sizes):
        for i in range(s):
            v = offs[d] + i
            acc_mask = 1 << v
            if d > 0:
                m = rows[d][i]
                while m:
                    b = m & -m
                    acc_mask |= ups[offs[d - 1] + b.bit_length() - 1]
                    m ^= b
            ups.append(acc_mask)
    return _Frag(sizes, rows, tuple(ups), _mi_of_rows(rows))


def _to_lattice(sizes: tuple[int, ...], rows: tuple[tuple[int, ...], ...]) -> LeveledLattice:
    """Convert a complete top-down structure to the bottom-up type."""
    d = len(sizes)
    return LeveledLattice(
        tuple(reversed(sizes)), tuple(rows[k] for k in range(d - 1, 0, -1))
    )


_GROUP_CAP = 2000


class _Gen:
    """One generation run (or one split walk when split_at is not None)."""

    def __init__(
        self,
        config: GenConfig,
        sink: _Sink | None,
        split_at: int | None = None,
        width_cap: int = MAX_LEVEL_WIDTH,
    ):
        self.cfg = config
        self.sink = sink
        self.split_at = split_at
        self.width_cap = width_cap
        self.states: list[SearchState] = []
        self.seen_forms: set[bytes] = set()
        self.summary = GenSummary()

    # -- emission ---------------------------------------------------------

    def _emit(self, L: LeveledLattice) -> None:
        form = canonical_form(L)
        if form in self.seen_forms:
            raise RuntimeError("duplicate emission; isomorph rejection is broken")
        self.seen_forms.add(form)
        self.summary.per_n[L.n] = self.summary.per_n.get(L.n, 0) + 1
        if self.sink is not None:
            self.sink(L)

    def _emit_closed(self, sizes: tuple[int, ...], rows: tuple[tuple[int, ...], ...]) -> None:
        if self.split_at is not None:
            self.states.append(
                SearchState(
                    sizes,
                    rows,
                    True,
                    self.cfg.max_n - sum(sizes),
                    _mi_of_rows(rows),
                    len(sizes) - 1,
                )
            )
        else:
            self._emit(_to_lattice(sizes, rows))

    # -- closing ----------------------------------------------------------

    def _try_close(self, frag: _Frag) -> None:
        if frag.n + 1 > self.cfg.max_n:
            return
        t = len(frag.sizes) - 1
        s = frag.sizes[t]
        if t >= 1:
            row = frag.rows[t]
            for x in range(s):
                for y in range(x + 1, s):
                    if not row[x] & row[y]:
                        return
            if self.cfg.family is Family.DISTRIBUTIVE and t >= 1:
                for i in range(frag.sizes[t - 1]):
                    deg = sum(1 for x in range(s) if row[x] >> i & 1)
                    if deg >= 3:
                        return
        self._emit_closed(frag.sizes + (1,), frag.rows + (((1 << s) - 1,),))

    # -- extension --------------------------------------------------------

    def _group_for(self, frag: _Frag) -> list[tuple[int, ...]] | None:
        """Automorphisms of the fragment projected to its deepest level,
        fully enumerated, or None when larger than the enumeration cap."""
        gens = _canonical_data(frag.sizes, frag.rows)[2]
        t = len(frag.sizes) - 1
        base = frag.offs[t]
        s = frag.sizes[t]
        ident = tuple(range(s))
        pgens = {tuple(g[base + i] - base for i in range(s)) for g in gens}
        pgens.discard(ident)
        if not pgens:
            return []
        group = {ident}
        frontier = [ident]
        while frontier:
            cur = frontier.pop()
            for g in pgens:
                nxt = tuple(cur[g[i]] for i in range(s))
                if nxt not in group:
                    if len(group) >= _GROUP_CAP:
                        return None
                    group.add(nxt)
                    frontier.append(nxt)
        group.discard(ident)
        return sorted(group)

    def _candidates(
        self, frag: _Frag
    ) -> tuple[list[tuple[tuple[int, int], int, int, int]], list[int], list[int]]:
        """All single-element extensions of the deepest level.

        Returns (candidates, required_pairs, dcs) where each candidate is
        ((popcount, mask), mask, ancestor set, mi increment), candidates
        sorted by key descending; required_pairs are the previous-level
        pairs that must gain a common lower cover (modular and
        distributive only).
        """
        t = len(frag.sizes) - 1
        s_prev = frag.sizes[t]
        base = frag.offs[t]
        row = frag.rows[t] if t >= 1 else ()

        share = [0] * s_prev
        required: list[int] = []
        if t >= 1:
            for x in range(s_prev):
                for y in range(x + 1, s_prev):
                    if row[x] & row[y]:
                        share[x] |= 1 << y
                        share[y] |= 1 << x
                        required.append((1 << x) | (1 << y))
        if self.cfg.family is Family.SEMIMODULAR:
            required = []

        dcs: list[int] = []
        if self.cfg.family is Family.DISTRIBUTIVE and t >= 1:
            for i in range(frag.sizes[t - 1]):
                m = 0
                for x in range(s_prev):
                    if row[x] >> i & 1:
                        m |= 1 << x
                dcs.append(m)

        ups = frag.ups
        bit_level = frag.bit_level
        lmasks = frag.lmasks
        n = frag.n
        out = []
        for c in range(1, 1 << s_prev):
            ok = True
            m = c
            while m:
                b = m & -m
                x = b.bit_length() - 1
                if c & ~(share[x] | b):
                    ok = False
                    break
                m ^= b
            if not ok:
                continue
            if dcs:
                for dmask in dcs:
                    if (dmask & c).bit_count() >= 3:
                        ok = False
                        break
                if not ok:
                    continue
            anc = 0
            m = c
            while m:
                b = m & -m
                anc |= ups[base + b.bit_length() - 1]
                m ^= b
            for u in range(1, n):
                if anc >> u & 1:
                    continue
                s_common = anc & ups[u]
                h = s_common.bit_length() - 1
                if s_common & lmasks[bit_level[h]] != 1 << h or s_common != ups[h]:
                    ok = False
                    break
            if not ok:
                continue
            pop = c.bit_count()
            out.append(((pop, c), c, anc, 1 if pop == 1 else 0))
        out.sort(reverse=True)
        return out, required, dcs

    def _levels(self, frag: _Frag) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
        """Yield completed next levels as (masks, ancestor sets, mi added),
        in canonical enumeration order (keys nonincreasing)."""
        cands, required0, _ = self._candidates(frag)
        if not cands:
            return
        t = len(frag.sizes) - 1
        full = (1 << frag.sizes[t]) - 1
        budget = self.cfg.max_n - frag.n - 1
        bound_on = (
            self.cfg.length_bound_pruning and self.cfg.family is Family.DISTRIBUTIVE
        )
        ups = frag.ups
        bit_level = frag.bit_level
        lmasks = frag.lmasks
        base_len = t + 2

        chosen_c: list[int] = []
        chosen_a: list[int] = []

        def rec(
            idx0: int, covered: int, required: tuple[int, ...], mi_add: int
        ) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], int]]:
            k = len(chosen_c)
            if k >= 2 and covered == full and not required:
                yield tuple(chosen_c), tuple(chosen_a), mi_add
            slots = budget - k
            if slots <= 0:
                return
            if bound_on and frag.mi + mi_add > length_bound(
                base_len, frag.n + k + 1, self.cfg.max_n
            ):
                return
            uncovered_pop = (full & ~covered).bit_count()
            nreq = len(required)
            for idx in range(idx0, len(cands)):
                (pop, _), c, anc, mi_inc = cands[idx]
                if uncovered_pop > slots * pop:
                    return
                if nreq > slots * (pop * (pop - 1) // 2):
                    return
                if bound_on and frag.mi + mi_add + mi_inc > length_bound(
                    base_len, frag.n + k + 1, self.cfg.max_n
                ):
                    if mi_inc:
                        return
                    continue
                ok = True
                for a_j in chosen_a:
                    s_common = anc & a_j
                    h = s_common.bit_length() - 1
                    if (
                        s_common & lmasks[bit_level[h]] != 1 << h
                        or s_common != ups[h]
                    ):
                        ok = False
                        break
                if not ok:
                    continue
                if k >= self.width_cap:
                    raise BudgetExceeded(
                        f"level would exceed {self.width_cap} elements"
                    )
                chosen_c.append(c)
                chosen_a.append(anc)
                yield from rec(
                    idx,
                    covered | c,
                    tuple(p for p in required if p & ~c),
                    mi_add + mi_inc,
                )
                chosen_c.pop()
                chosen_a.pop()

        yield from rec(0, 0, tuple(required0), 0)

    def _extend(self, frag: _Frag) -> None:
        self.summary.fragments += 1
        if self.split_at is not None and frag.n - 1 >= self.split_at:
            self.states.append(
                SearchState(
                    frag.sizes,
                    frag.rows,
                    False,
                    self.cfg.max_n - frag.n,
                    frag.mi,
                    len(frag.sizes),
                )
            )
            return
        self._try_close(frag)
        t = len(frag.sizes) - 1
        if frag.n + 3 > self.cfg.max_n:
            return
        if (
            self.cfg.mode is GenMode.PIECES_AND_SPECIALS
            and t >= 2
            and frag.sizes[t] == 2
        ):
            return
        group = self._group_for(frag)
        seen_child_forms: set | None = set() if group is None else None
        base = frag.n
        for masks, ancs, mi_add in self._levels(frag):
            if group:
                keys = tuple((m.bit_count(), m) for m in masks)
                minimal = True
                for g in group:
                    imgs = []
                    for m in masks:
                        mm = m
                        img = 0
                        while mm:
                            b = mm & -mm
                            img |= 1 << g[b.bit_length() - 1]
                            mm ^= b
                        imgs.append(((img.bit_count()), img))
                    imgs.sort(reverse=True)
                    if tuple((p, m) for p, m in imgs) > keys:
                        minimal = False
                        break
                if not minimal:
                    continue
            sizes = frag.sizes + (len(masks),)
            rows = frag.rows + (masks,)
            if seen_child_forms is not None:
                form = _canonical_data(sizes, rows)[0]
                if form in seen_child_forms:
                    continue
                seen_child_forms.add(form)
            ups = frag.ups + tuple(
                (1 << (base + i)) | ancs[i] for i in range(len(masks))
            )
            self._extend(_Frag(sizes, rows, ups, frag.mi + mi_add))


def generate(config: GenConfig, sink: _Sink | None = None) -> GenSummary:
    """Run the full search, feeding every emitted lattice to sink.

    Emission order is deterministic for a given config.  Raises if the
    built-in isomorph rejection ever produces a duplicate.
    """
    g = _Gen(config, sink)
    g._emit(LeveledLattice((1,), ()))
    g._extend(_root())
    return g.summary


def split_checkpoints(config: GenConfig) -> list[SearchState]:
    """Cut the search into independently resumable states.

    States are fragments first reaching ``checkpoint_depth`` added
    elements, plus closed states for lattices finished above the cut.
    Resuming all states (in any partition across workers) reproduces the
    plain run exactly, with no duplicates across states.
    """
    g = _Gen(config, None, split_at=config.checkpoint_depth)
    if config.checkpoint_depth >= 1:
        # The singleton lattice is emitted only by a resumed root state, so
        # when the root sits below the cut it needs a closed state of its own.
        g.states.append(SearchState((1,), ((),), True, config.max_n - 1, 0, 0))
    g._extend(_root())
    return g.states


def resume(config: GenConfig, state: SearchState, sink: _Sink | None = None) -> GenSummary:
    """Process one SearchState to completion, emitting its share of the
    output.  The root state reproduces the whole run."""
    g = _Gen(config, sink)
    if state.closed:
        g._emit(_to_lattice(state.sizes, state.rows))
        return g.summary
    frag = _frag_from(state.sizes, state.rows)
    if state.budget_left != config.max_n - frag.n:
        raise ValueError("state budget does not match config")
    if state.mi_count != frag.mi:
        raise ValueError("state bookkeeping does not match its fragment")
    if state.is_root:
        g._emit(LeveledLattice((1,), ()))
    g._extend(frag)
    return g.summary


STATE_HEADER = "vilat-states 1"


def dump_states(states: list[SearchState], fp: TextIO) -> None:
    fp.write(STATE_HEADER + "\n")
    for st in states:
        fp.write("state closed\n" if st.closed else "state open\n")
        fp.write("sizes " + " ".join(str(s) for s in st.sizes) + "\n")
        for d in range(1, len(st.sizes)):
            fp.write("row " + " ".join(format(m, "x") for m in st.rows[d]) + "\n")
        fp.write(f"budget {st.budget_left}\n")
        fp.write(f"mi {st.mi_count}\n")
        fp.write(f"length {st.current_length}\n")
        fp.write("end\n")


def load_states(fp: TextIO) -> list[SearchState]:
    lines = [ln.rstrip("\n") for ln in fp]
    if not lines or lines[0] != STATE_HEADER:
        raise ValueError("unrecognized state file header")

    def line(i: int) -> str:
        if i >= len(lines):
            raise ValueError("truncated state file")
        return lines[i]

    states = []
    i = 1
    while i < len(lines):
        if not lines[i]:
            i += 1
            continue
        if not lines[i].startswith("state "):
            raise ValueError(f"expected state line at line {i + 1}")
        closed = lines[i].split()[1] == "closed"
        i += 1
        if not line(i).startswith("sizes "):
            raise ValueError(f"expected sizes line at line {i + 1}")
        sizes = tuple(int(tok) for tok in lines[i].split()[1:])
        i += 1
        rows: list[tuple[int, ...]] = [()]
        for _ in range(len(sizes) - 1):
            if not line(i).startswith("row"):
                raise ValueError(f"expected row line at line {i + 1}")
            rows.append(tuple(int(tok, 16) for tok in lines[i].split()[1:]))
            i += 1
        fields = {}
        for name in ("budget", "mi", "length"):
            key, val = line(i).split()
            if key != name:
                raise ValueError(f"expected {name} line at line {i + 1}")
            fields[name] = int(val)
            i += 1
        if line(i) != "end":
            raise ValueError(f"expected end line at line {i + 1}")
        i += 1
        st = SearchState(
            sizes, tuple(rows), closed, fields["budget"], fields["mi"], fields["length"]
        )
        if _mi_of_rows(st.rows) != st.mi_count:
            raise ValueError("state bookkeeping does not match its rows")
        states.append(st)
    return states
