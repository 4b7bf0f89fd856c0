from __future__ import annotations

import pytest

from vilat.families import Family
from vilat.generate import GenConfig, GenMode, generate
from vilat.tables import golden_counts

from bruteforce import all_graded_vi

# one verdict line per release criterion, echoed after the test summary
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)


def collect(family, mode, max_n, **kw):
    acc = []
    generate(GenConfig(family=family, mode=mode, max_n=max_n, **kw), acc.append)
    return acc


@pytest.fixture(scope="session")
def golden_modular():
    return golden_counts(Family.MODULAR)


@pytest.fixture(scope="session")
def golden_distributive():
    return golden_counts(Family.DISTRIBUTIVE)


@pytest.fixture(scope="session")
def modular_vi12():
    return collect(Family.MODULAR, GenMode.ALL_VI_LATTICES, 12)


@pytest.fixture(scope="session")
def semimodular_ps12():
    return collect(Family.SEMIMODULAR, GenMode.PIECES_AND_SPECIALS, 12)


@pytest.fixture(scope="session")
def brute_pool():
    return {n: all_graded_vi(n) for n in range(1, 11)}


@pytest.fixture(scope="session")
def pool12(modular_vi12):
    """Mixed small-lattice pool for property tests."""
    extra = collect(Family.SEMIMODULAR, GenMode.ALL_VI_LATTICES, 10)
    return modular_vi12 + [L for L in extra if L.n <= 10]
