import sys

import pytest

from ortholoc.enumeration import lattice_corpus
from ortholoc.fixtures import load_lattice_fixture, load_relation_fixture


def leq_lists(l):
    """Plain boolean matrix for the oracles."""
    p = getattr(l, "poset", l)
    return [list(row) for row in p.leq]


@pytest.fixture(scope="session")
def corpus6():
    return lattice_corpus(6)


@pytest.fixture(scope="session")
def corpus7():
    return lattice_corpus(7)


@pytest.fixture
def lat():
    return load_lattice_fixture


@pytest.fixture
def rel():
    return load_relation_fixture


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
