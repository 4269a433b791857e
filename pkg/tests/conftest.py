import pytest

from pauli_polar.contextuality import enumerate_pentagrams
from pauli_polar.polar_space import build_polar_space


@pytest.fixture(scope="session")
def doily():
    return build_polar_space(2)


@pytest.fixture(scope="session")
def w5():
    return build_polar_space(3)


@pytest.fixture(scope="session")
def pentagrams(w5):
    return enumerate_pentagrams(w5)
