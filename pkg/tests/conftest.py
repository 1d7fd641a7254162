from pathlib import Path

import pytest

from mdse.graph import EventKind, GroupRole, MdseGraph

FIXTURES = Path(__file__).parent / "fixtures"

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def fixtures():
    return FIXTURES


def build_minimal() -> MdseGraph:
    """B* -> A* -> A' <- B'  (4 vertices, 3 edges)."""
    g = MdseGraph()
    (bs,) = g.add_hypothesis_group([1.0], GroupRole.STAR)
    (bp,) = g.add_hypothesis_group([1.0], GroupRole.PRIME)
    a_star = g.add_event(EventKind.STAR)
    a_prime = g.add_event(EventKind.PRIME)
    g.add_edge(bs, a_star, 0.9)
    g.add_edge(bp, a_prime, 0.5)
    g.add_edge(a_star, a_prime, 0.2)
    return g.freeze()


def build_financial() -> MdseGraph:
    g = MdseGraph()
    hyps = g.add_hypothesis_group([0.4, 0.25, 0.35])
    a = g.add_event(EventKind.STAR)
    for h, w in zip(hyps, [0.7, 0.6, 0.4]):
        g.add_edge(h, a, w)
    return g.freeze()


@pytest.fixture
def minimal():
    return build_minimal()


@pytest.fixture
def financial():
    return build_financial()
