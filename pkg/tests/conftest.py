import pytest

from qrea import checks


@pytest.fixture(scope="session")
def ctx2():
    return checks.get_ctx(2)


@pytest.fixture(scope="session")
def ctx3():
    return checks.get_ctx(3)


@pytest.fixture(scope="session")
def star2():
    return checks.get_star(2)


@pytest.fixture(scope="session")
def star3():
    return checks.get_star(3)
