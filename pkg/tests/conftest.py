import pytest

from zdim.semiring import builtin_boolean, builtin_chain
from zdim.zdgraph import build_graph

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def B():
    return builtin_boolean()


@pytest.fixture(scope="session")
def chain3():
    return builtin_chain(3)


@pytest.fixture(scope="session")
def g2(B):
    return build_graph(B, 2)


@pytest.fixture(scope="session")
def g3(B):
    return build_graph(B, 3)


@pytest.fixture(scope="session")
def gc(chain3):
    return build_graph(chain3, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
