"""Shared fixtures.

The full coding table (20000 evolutions, frozen seed) takes under a second to
build, so it is constructed once per session and shared.  The toy table is a
hand-built :class:`CodingTable` with round power-of-two counts, which makes
exact arithmetic assertions possible without trusting the builder under test.
"""

import math
import sys

import pytest

from progmeter import lattice


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo the one-line acceptance verdicts past output capture."""
    for name, mod in list(sys.modules.items()):
        if name.rpartition(".")[2] == "test_acceptance":
            lines = getattr(mod, "RESULTS", None)
            if lines:
                terminalreporter.section("acceptance criteria")
                for line in lines:
                    terminalreporter.write_line(line)
            break


@pytest.fixture(scope="session")
def frozen_table():
    """Full coding table at package defaults (b=3, 20000 samples, frozen seed)."""
    return lattice.build_coding_table()


@pytest.fixture(scope="session")
def toy_table():
    """Hand-built table: counts {0: 8, 511: 4, 73: 2, 146: 2}, total 16.

    Exact code lengths: k(0) = 1, k(511) = 2, k(73) = k(146) = 3 bits.
    Pattern 5 (and most others) is deliberately absent, for fallback tests.
    """
    counts = {0: 8, 511: 4, 73: 2, 146: 2}
    total = sum(counts.values())
    k_values = {p: -math.log2(c / total) for p, c in counts.items()}
    return lattice.CodingTable(b=3, counts=counts, total=total, k_values=k_values)


@pytest.fixture()
def cache_dir(tmp_path, monkeypatch):
    """Point the CLI run cache at a throwaway directory."""
    d = tmp_path / "cache"
    monkeypatch.setenv("PROGMETER_CACHE_DIR", str(d))
    return d
