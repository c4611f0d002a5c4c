import pytest

from hamexp.graph import make_graph

CRITERIA: list[str] = []


@pytest.fixture(scope="session")
def criteria_log():
    return CRITERIA


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture
def p3():
    return make_graph(3, [(0, 1), (1, 2)])


@pytest.fixture
def p4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def paw():
    return make_graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


@pytest.fixture
def butterfly():
    return make_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def c4():
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@pytest.fixture
def c5():
    return make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])


@pytest.fixture
def k4():
    return make_graph(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])


@pytest.fixture
def star():
    return make_graph(4, [(0, 1), (0, 2), (0, 3)])
