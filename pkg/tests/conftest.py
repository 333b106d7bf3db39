import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from orbichi.groups import cyclic_group, dihedral_group, direct_product, symmetric_group, trivial_group  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def E():
    return trivial_group()


@pytest.fixture(scope="session")
def Z2():
    return cyclic_group(2)


@pytest.fixture(scope="session")
def Z3():
    return cyclic_group(3)


@pytest.fixture(scope="session")
def Z4():
    return cyclic_group(4)


@pytest.fixture(scope="session")
def V4():
    return direct_product(cyclic_group(2), cyclic_group(2))


@pytest.fixture(scope="session")
def S3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def S4():
    return symmetric_group(4)


@pytest.fixture(scope="session")
def D4():
    return dihedral_group(4)
