import pytest

from cporders.census import enumerate_orders


@pytest.fixture(scope="session")
def n3_census():
    return enumerate_orders(3)


@pytest.fixture(scope="session")
def n4_census():
    return enumerate_orders(4)


@pytest.fixture(scope="session")
def n5_census():
    return enumerate_orders(5)
