import pytest

from latkit.constructions import boolean_square, chain, diamond, fixture, pentagon
from latkit.core_order import PointedLattice
from latkit.enumeration import pointed_up_to
from latkit.residuated import enumerate_all_rls, enumerate_rls


@pytest.fixture(scope="session")
def pointed6():
    return list(pointed_up_to(6))


@pytest.fixture(scope="session")
def rls4():
    return list(enumerate_all_rls(4))


@pytest.fixture
def n5():
    return pentagon()


@pytest.fixture
def n5_left():
    return fixture("n5_left_pointed")


@pytest.fixture
def n5_unital():
    return fixture("n5_unital")


@pytest.fixture
def m3_unital():
    return fixture("m3_unital")


@pytest.fixture
def square():
    return fixture("boolean_square_unital")


@pytest.fixture
def boolean2():
    """The two-element Boolean RL."""
    return enumerate_rls(chain(2))[0]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        ok, detail = RESULTS[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}")
