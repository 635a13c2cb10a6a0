import pytest

from nokstring.rootdata import RootSystemSpec


@pytest.fixture(scope="session")
def A1():
    return RootSystemSpec("A", 1)


@pytest.fixture(scope="session")
def A2():
    return RootSystemSpec("A", 2)


@pytest.fixture(scope="session")
def C2():
    return RootSystemSpec("C", 2)
