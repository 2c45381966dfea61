import pytest

from betamatch.fields import bundled_field
from betamatch.numberfield import field_from_minpoly


@pytest.fixture(scope="session")
def golden():
    return bundled_field("golden")


@pytest.fixture(scope="session")
def tribonacci():
    return bundled_field("tribonacci")


@pytest.fixture(scope="session")
def tetrabonacci():
    return bundled_field("tetrabonacci")


@pytest.fixture(scope="session")
def salem():
    return bundled_field("salem4")


@pytest.fixture(scope="session")
def k5p3():
    return bundled_field("k5_plus3")


@pytest.fixture(scope="session")
def k3m2():
    return bundled_field("k3_minus2")


@pytest.fixture(scope="session")
def two_plus_sqrt2():
    return bundled_field("two_plus_sqrt2")


@pytest.fixture(scope="session")
def non_pisot():
    return field_from_minpoly([-3, -1])


@pytest.fixture(scope="session")
def two():
    return field_from_minpoly([-2])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
