import pytest

from linegeom import generate_ag, generate_complete, generate_near_pencil, generate_pg, validate

# Lines {0,3,4}, {1,3,5}, {2,4,5}; every other pair is a 2-point line.
# {0,1} v {3} is everything, but {0,1} v {2} = {0,1,2} misses 3, so the
# exchange axiom fails. Greedy basis building from point 0 picks 0, 1, 2, 3
# although {0,1,3} already spans.
NON_EXCHANGE_LINES = [
    [0, 3, 4], [1, 3, 5], [2, 4, 5],
    [0, 1], [0, 2], [0, 5], [1, 2], [1, 4], [2, 3],
]

ACCEPTANCE_LOG: list[str] = []


@pytest.fixture(scope="session")
def pg32():
    return generate_pg(3, 2)


@pytest.fixture(scope="session")
def pg33():
    return generate_pg(3, 3)


@pytest.fixture(scope="session")
def ag33():
    return generate_ag(3, 3)


@pytest.fixture(scope="session")
def ag23():
    return generate_ag(2, 3)


@pytest.fixture(scope="session")
def fano():
    return generate_pg(2, 2)


@pytest.fixture(scope="session")
def k8():
    return generate_complete(8)


@pytest.fixture(scope="session")
def k5():
    return generate_complete(5)


@pytest.fixture(scope="session")
def near_pencil7():
    return generate_near_pencil(7)


@pytest.fixture(scope="session")
def non_exchange():
    return validate(6, NON_EXCHANGE_LINES)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LOG:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LOG:
            terminalreporter.write_line(line)
