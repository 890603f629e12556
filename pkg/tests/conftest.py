import numpy as np
import pytest

from hellrank import BipartiteGraph, load_builtin

# one "[ACCEPTANCE] <criterion>: PASS|FAIL" line per end-to-end criterion,
# filled in by tests/test_acceptance.py and echoed after the test summary
# (bypassing output capture)
ACCEPTANCE_VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)

FIG1_EDGES = [
    ("A", "1"),
    ("B", "1"),
    ("B", "2"),
    ("B", "3"),
    ("C", "2"),
    ("C", "3"),
    ("D", "3"),
    ("D", "4"),
    ("D", "5"),
    ("D", "6"),
    ("D", "7"),
]


@pytest.fixture(scope="session")
def fig1():
    """4 x 7 worked-example graph: A-1; B-1,2,3; C-2,3; D-3..7."""
    return BipartiteGraph(FIG1_EDGES)


@pytest.fixture(scope="session")
def davis():
    return load_builtin("davis")


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)
