from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from vilat.core import (
    LeveledLattice,
    LevelWidthError,
    MatchOrder,
    NotALattice,
    PreconditionViolation,
    atoms,
    coatoms,
    dual,
    is_vertically_decomposable,
    lattice_from_cover_digraph,
    meet_join_tables,
    necks,
    vertical_2sum,
    vertical_sum,
)

from latts import B3, BF7, BOWTIE_ROWS, BOWTIE_SIZES, HEXAGON, M3, chain, diamond


def test_structure_basics():
    assert B3.n == 8
    assert B3.rank == 3
    assert B3.rank_sequence == (1, 3, 3, 1)
    assert B3.offsets == (0, 1, 4, 7)
    assert [B3.level_of[v] for v in range(8)] == [0, 1, 1, 1, 2, 2, 2, 3]
    assert atoms(B3) == (1, 2, 3)
    assert coatoms(B3) == (4, 5, 6)
    assert necks(B3) == ()
    assert chain(1).rank == 0
    assert chain(2).rank_sequence == (1, 1)


def test_validation_errors():
    with pytest.raises(ValueError):
        LeveledLattice((2, 1), ((1,), ))  # bottom level must be a singleton
    with pytest.raises(ValueError):
        LeveledLattice((1, 2, 1), ((3,),))  # one cover row per level pair
    with pytest.raises(ValueError):
        LeveledLattice((1, 2, 1), ((3,), (1, 4)))  # mask beyond next level
    with pytest.raises(ValueError):
        LeveledLattice((1, 2, 1), ((3,), (1, 0)))  # every element needs a cover
    with pytest.raises(ValueError):
        LeveledLattice((1, 2, 2, 1), ((3,), (1, 1), (1, 1)))  # level 2 uncovered
    with pytest.raises(LevelWidthError):
        diamond(64)


def test_down_covers_inverts_up_covers():
    # level 1 masks into level 0, level 2 into level 1, ...
    assert B3.down_covers[0] == (1, 1, 1)
    assert B3.down_covers[1] == (3, 5, 6)
    assert B3.down_covers[2] == (7,)


def test_necks_and_decomposability():
    assert not is_vertically_decomposable(B3)
    tall = vertical_sum(B3, M3)
    assert tall.rank_sequence == (1, 3, 3, 1, 3, 1)
    assert is_vertically_decomposable(tall)
    comp = vertical_2sum(BF7, dual(BF7), MatchOrder.STRAIGHT)
    assert comp.rank_sequence == (1, 3, 2, 3, 1)
    assert necks(comp) == (2,)
    assert not is_vertically_decomposable(comp)


def _brute_meet_join(L):
    n = L.n
    ups = L.up_sets
    dns = L.down_sets
    meet = [[None] * n for _ in range(n)]
    join = [[None] * n for _ in range(n)]
    for u in range(n):
        for v in range(n):
            lower = dns[u] & dns[v]
            upper = ups[u] & ups[v]
            # the meet exists iff the common lower bounds have a maximum
            maxes = [
                x
                for x in range(n)
                if lower >> x & 1
                and all(not (lower >> y & 1) or (dns[x] >> y & 1) for y in range(n))
            ]
            mins = [
                x
                for x in range(n)
                if upper >> x & 1
                and all(not (upper >> y & 1) or (ups[x] >> y & 1) for y in range(n))
            ]
            meet[u][v] = maxes[0] if len(maxes) == 1 else None
            join[u][v] = mins[0] if len(mins) == 1 else None
    return meet, join


def test_meet_join_tables_against_brute_force():
    for L in (B3, BF7, M3, HEXAGON, chain(4)):
        meet, join = meet_join_tables(L)
        bm, bj = _brute_meet_join(L)
        assert meet == bm
        assert join == bj


def test_meet_join_values_on_cube():
    meet, join = meet_join_tables(B3)
    # atoms 1,2 join at the coatom covering both, and meet at bottom
    assert join[1][2] == 4
    assert meet[1][2] == 0
    assert meet[4][5] == 1
    assert join[4][5] == 7
    assert meet[0][7] == 0 and join[0][7] == 7


def test_not_a_lattice_reports_first_pair():
    with pytest.raises(NotALattice) as exc:
        meet_join_tables(LeveledLattice(BOWTIE_SIZES, BOWTIE_ROWS))
    assert exc.value.pair == (1, 2)
    assert exc.value.what == "join"


def test_hexagon_is_a_lattice():
    meet, join = meet_join_tables(HEXAGON)
    assert join[1][2] == 5
    assert meet[3][4] == 0


def test_dual_shapes():
    assert dual(BF7).rank_sequence == (1, 2, 3, 1)
    assert dual(dual(BF7)) == BF7
    assert dual(M3) == M3
    assert dual(chain(5)) == chain(5)


def test_vertical_sum_concatenates():
    s = vertical_sum(BF7, M3)
    assert s.level_sizes == (1, 3, 2, 1, 3, 1)
    assert s.up_covers == BF7.up_covers + M3.up_covers
    assert vertical_sum(chain(3), chain(4)) == chain(6)


def test_vertical_2sum_junction_rows():
    lower = HEXAGON
    upper = HEXAGON
    straight = vertical_2sum(lower, upper, MatchOrder.STRAIGHT)
    crossed = vertical_2sum(lower, upper, MatchOrder.CROSSED)
    assert straight.level_sizes == (1, 2, 2, 2, 1)
    assert straight.n == lower.n + upper.n - 4
    # junction row comes from the upper summand's atom rows
    assert straight.up_covers == ((3,), (1, 2), (1, 2), (1, 1))
    assert crossed.up_covers == ((3,), (1, 2), (2, 1), (1, 1))


def test_vertical_2sum_preconditions():
    with pytest.raises(PreconditionViolation):
        vertical_2sum(BF7, M3, MatchOrder.STRAIGHT)  # upper needs 2 atoms
    with pytest.raises(PreconditionViolation):
        vertical_2sum(M3, dual(BF7), MatchOrder.STRAIGHT)  # lower needs 2 coatoms
    with pytest.raises(PreconditionViolation):
        vertical_2sum(LeveledLattice((1, 2, 1), ((3,), (1, 1))), dual(BF7),
                      MatchOrder.STRAIGHT)  # rank >= 3 on both sides


def test_cover_digraph_roundtrip():
    for L in (B3, BF7, HEXAGON, M3, chain(6), chain(1)):
        n, edges = L.cover_digraph()
        assert lattice_from_cover_digraph(n, edges) == L


def test_nongraded_digraph_rejected():
    # pentagon: 0 < 1 < 3 < 4 and 0 < 2 < 4 have different chain lengths
    edges = {(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)}
    with pytest.raises(ValueError):
        lattice_from_cover_digraph(5, edges)


@given(st.data())
def test_dual_is_an_involution(pool12, data):
    L = data.draw(st.sampled_from(pool12))
    assert dual(dual(L)) == L
    assert dual(L).rank_sequence == L.rank_sequence[::-1]


@given(st.data())
def test_meet_join_total_on_generated(pool12, data):
    L = data.draw(st.sampled_from(pool12))
    meet, join = meet_join_tables(L)
    n = L.n
    for u in range(n):
        assert meet[u][0] == 0
        assert join[u][n - 1] == n - 1
        for v in range(n):
            assert meet[u][v] == meet[v][u]
            assert join[u][v] == join[v][u]
