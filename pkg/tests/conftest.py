import pytest
from hypothesis import settings

from hmlchar.oracle import Universe

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

AB = ("a", "b")


@pytest.fixture(scope="session")
def u2():
    """|A|=2, depth <= 3, width <= 2."""
    return Universe(AB, 3, 2)


@pytest.fixture(scope="session")
def u2_small():
    return Universe(AB, 2, 2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
