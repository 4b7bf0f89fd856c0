from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from vilat.core import LeveledLattice, dual, meet_join_tables
from vilat.families import (
    consecutive_levels_connected,
    is_distributive,
    is_modular,
    is_semimodular,
    meet_irreducible_count,
)

from latts import B3, BF7, HEXAGON, M3, chain, diamond

MF6 = LeveledLattice((1, 2, 2, 1), ((3,), (1, 3), (1, 1)))


def test_known_families():
    for L in (chain(2), chain(5), B3, MF6):
        assert is_distributive(L)
        assert is_modular(L)
        assert is_semimodular(L)
    assert is_modular(M3) and not is_distributive(M3)
    assert is_modular(diamond(5))
    assert is_modular(BF7) and not is_distributive(BF7)
    assert not is_semimodular(HEXAGON)
    assert not is_modular(HEXAGON)
    assert not is_distributive(HEXAGON)


def _modular_law(L):
    meet, join = meet_join_tables(L)
    n = L.n
    dns = L.down_sets
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if dns[z] >> x & 1:  # x <= z
                    if join[x][meet[y][z]] != meet[join[x][y]][z]:
                        return False
    return True


def _distributive_law(L):
    meet, join = meet_join_tables(L)
    n = L.n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if meet[x][join[y][z]] != join[meet[x][y]][meet[x][z]]:
                    return False
    return True


def test_laws_on_small_examples():
    for L in (chain(4), M3, B3, BF7, HEXAGON, MF6, diamond(4)):
        assert is_modular(L) == _modular_law(L)
        assert is_distributive(L) == _distributive_law(L)


def test_family_predicates_match_laws(brute_pool):
    for n in range(1, 9):
        for L in brute_pool[n].values():
            assert is_modular(L) == _modular_law(L)
            assert is_distributive(L) == _distributive_law(L)


@given(st.data())
def test_family_membership_is_self_dual(pool12, data):
    L = data.draw(st.sampled_from(pool12))
    assert is_modular(L) == is_modular(dual(L))
    assert is_distributive(L) == is_distributive(dual(L))


def test_modular_means_semimodular_both_ways(pool12):
    for L in pool12[:400]:
        assert is_modular(L) == (is_semimodular(L) and is_semimodular(dual(L)))


def test_meet_irreducible_count():
    assert meet_irreducible_count(chain(6)) == 5
    assert meet_irreducible_count(B3) == 3
    assert meet_irreducible_count(M3) == 3
    assert meet_irreducible_count(diamond(5)) == 5


def test_distributive_meet_irreducibles_equal_length(pool12):
    for L in pool12:
        if is_distributive(L):
            assert meet_irreducible_count(L) == L.rank


def test_consecutive_levels_connected():
    assert consecutive_levels_connected(HEXAGON, 0)
    assert not consecutive_levels_connected(HEXAGON, 1)
    assert consecutive_levels_connected(M3, 0)
    assert consecutive_levels_connected(M3, 1)
    with pytest.raises(ValueError):
        consecutive_levels_connected(M3, 2)
    with pytest.raises(ValueError):
        consecutive_levels_connected(M3, -1)


def test_semimodular_pieces_are_level_connected(semimodular_ps12):
    for L in semimodular_ps12:
        for t in range(L.rank):
            assert consecutive_levels_connected(L, t)
