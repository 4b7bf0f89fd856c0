from __future__ import annotations

import io

import pytest

from vilat.canon import canonical_form
from vilat.core import LeveledLattice, necks
from vilat.families import Family
from vilat.generate import (
    BudgetExceeded,
    GenConfig,
    GenMode,
    GenSummary,
    SearchState,
    _Gen,
    _root,
    dump_states,
    generate,
    load_states,
    resume,
    split_checkpoints,
)

from conftest import collect


def forms(lattices) -> set[bytes]:
    return {canonical_form(L) for L in lattices}


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(Family.MODULAR, 0, GenMode.ALL_VI_LATTICES)
    with pytest.raises(ValueError):
        GenConfig(Family.MODULAR, 8, GenMode.ALL_VI_LATTICES, checkpoint_depth=-1)
    with pytest.raises(ValueError):
        GenConfig(Family.MODULAR, 8, GenMode.ALL_VI_LATTICES, length_bound_pruning=True)


def test_singleton_run():
    got: list[LeveledLattice] = []
    summary = generate(
        GenConfig(Family.DISTRIBUTIVE, 1, GenMode.ALL_VI_LATTICES), got.append
    )
    assert summary.per_n == {1: 1}
    assert [L.level_sizes for L in got] == [(1,)]


@pytest.mark.parametrize(
    "family", [Family.MODULAR, Family.SEMIMODULAR, Family.DISTRIBUTIVE]
)
def test_matches_bruteforce_census(family, brute_pool):
    got = collect(family, GenMode.ALL_VI_LATTICES, 10)
    want = [
        L
        for n in range(1, 11)
        for L in brute_pool[n].values()
        if family.contains(L)
    ]
    assert forms(got) == forms(want)


def test_pieces_and_specials_is_the_neckless_slice(modular_vi12):
    ps = collect(Family.MODULAR, GenMode.PIECES_AND_SPECIALS, 12)
    neckless = [L for L in modular_vi12 if not necks(L)]
    assert forms(ps) == forms(neckless)


def test_length_bound_pruning_changes_nothing():
    plain = collect(Family.DISTRIBUTIVE, GenMode.ALL_VI_LATTICES, 12)
    pruned = collect(
        Family.DISTRIBUTIVE, GenMode.ALL_VI_LATTICES, 12, length_bound_pruning=True
    )
    assert forms(plain) == forms(pruned)


def test_deterministic_emission_order():
    cfg = GenConfig(Family.SEMIMODULAR, 9, GenMode.ALL_VI_LATTICES)
    a: list[LeveledLattice] = []
    b: list[LeveledLattice] = []
    generate(cfg, a.append)
    generate(cfg, b.append)
    assert a == b


def test_summary_totals():
    cfg = GenConfig(Family.MODULAR, 10, GenMode.ALL_VI_LATTICES)
    got: list[LeveledLattice] = []
    summary = generate(cfg, got.append)
    assert summary.total == len(got)
    for n, c in summary.per_n.items():
        assert c == sum(1 for L in got if L.n == n)
    assert summary.fragments > 0


def test_summary_merge():
    a = GenSummary({3: 1, 5: 2}, fragments=4)
    b = GenSummary({5: 1, 7: 3}, fragments=2)
    a.merge(b)
    assert a.per_n == {3: 1, 5: 3, 7: 3}
    assert a.fragments == 6
    assert a.total == 7


@pytest.mark.parametrize("depth", [1, 2, 4, 7])
def test_split_resume_reproduces_plain_run(depth):
    cfg = GenConfig(
        Family.DISTRIBUTIVE, 14, GenMode.ALL_VI_LATTICES, checkpoint_depth=depth
    )
    plain: list[LeveledLattice] = []
    total = generate(cfg, plain.append)

    states = split_checkpoints(cfg)
    merged = GenSummary()
    pieces: list[bytes] = []
    for st in states:
        part: list[LeveledLattice] = []
        merged.merge(resume(cfg, st, part.append))
        pieces.extend(canonical_form(L) for L in part)
    # no state may re-emit another state's lattice
    assert len(pieces) == len(set(pieces))
    assert set(pieces) == forms(plain)
    assert merged.per_n == total.per_n


def test_resume_root_state_is_whole_run():
    cfg = GenConfig(Family.MODULAR, 9, GenMode.PIECES_AND_SPECIALS)
    root = SearchState((1,), ((),), False, cfg.max_n - 1, 0, 1)
    assert root.is_root
    plain = generate(cfg)
    again = resume(cfg, root)
    assert again.per_n == plain.per_n


def test_resume_rejects_mismatched_state():
    cfg = GenConfig(Family.MODULAR, 9, GenMode.ALL_VI_LATTICES)
    with pytest.raises(ValueError):
        resume(cfg, SearchState((1,), ((),), False, 17, 0, 1))
    bad_mi = SearchState((1, 2), ((), (1, 1)), False, cfg.max_n - 3, 5, 2)
    with pytest.raises(ValueError):
        resume(cfg, bad_mi)


def test_state_file_roundtrip():
    cfg = GenConfig(
        Family.SEMIMODULAR, 11, GenMode.ALL_VI_LATTICES, checkpoint_depth=3
    )
    states = split_checkpoints(cfg)
    assert states
    buf = io.StringIO()
    dump_states(states, buf)
    buf.seek(0)
    assert load_states(buf) == states


def test_state_file_validation():
    with pytest.raises(ValueError):
        load_states(io.StringIO("not a state file\n"))
    cfg = GenConfig(Family.MODULAR, 8, GenMode.ALL_VI_LATTICES, checkpoint_depth=2)
    states = split_checkpoints(cfg)
    buf = io.StringIO()
    dump_states(states[:1], buf)
    text = buf.getvalue()
    with pytest.raises(ValueError):
        load_states(io.StringIO(text.replace("mi 0", "mi 9", 1)))
    truncated = "".join(text.splitlines(keepends=True)[:-2])
    with pytest.raises(ValueError):
        load_states(io.StringIO(truncated))
    with pytest.raises(ValueError):
        load_states(io.StringIO(text.replace("end", "fin", 1)))


def test_width_cap_refuses_to_truncate():
    cfg = GenConfig(Family.MODULAR, 7, GenMode.ALL_VI_LATTICES)
    g = _Gen(cfg, None, width_cap=2)
    with pytest.raises(BudgetExceeded):
        g._extend(_root())
