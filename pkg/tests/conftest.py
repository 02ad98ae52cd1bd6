import pytest

from cantorkit import core, spectral

FULL2 = ((1, 1), (1, 1))
TRI3 = ((1, 1, 0), (1, 1, 1), (0, 1, 1))
SCHOTTKY4 = ((1, 1, 0, 1), (1, 1, 1, 0), (0, 1, 1, 1), (1, 0, 1, 1))


@pytest.fixture(scope="session")
def full2():
    return core.validate_matrix(FULL2)


@pytest.fixture(scope="session")
def tri3():
    return core.validate_matrix(TRI3)


@pytest.fixture(scope="session")
def schottky4():
    return core.validate_matrix(SCHOTTKY4)


@pytest.fixture(scope="session")
def full2_pd(full2):
    return spectral.perron_data(full2)


@pytest.fixture(scope="session")
def tri3_pd(tri3):
    return spectral.perron_data(tri3)


@pytest.fixture(scope="session")
def schottky4_pd(schottky4):
    return spectral.perron_data(schottky4)
