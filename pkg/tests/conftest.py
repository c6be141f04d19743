import pytest

from superlinks.quantum.ribbon import bundled_ribbon
from superlinks.scalars import RatFunc


@pytest.fixture(scope="session")
def gl11():
    return bundled_ribbon("gl11")


@pytest.fixture(scope="session")
def sl2():
    return bundled_ribbon("sl2")


@pytest.fixture(scope="session")
def a():
    return RatFunc.param("a")


@pytest.fixture(scope="session")
def b():
    return RatFunc.param("b")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
