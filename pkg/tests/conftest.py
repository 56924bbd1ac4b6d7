import pytest

from qsing.quiver import Quiver


@pytest.fixture(scope="session")
def a2():
    return Quiver(2, ((1, 2),))


@pytest.fixture(scope="session")
def a3():
    return Quiver(3, ((1, 2), (2, 3)))


@pytest.fixture(scope="session")
def a4():
    return Quiver(4, ((1, 2), (2, 3), (3, 4)))


@pytest.fixture(scope="session")
def d4():
    # three-subspace orientation: all arms point at the center
    return Quiver(4, ((1, 4), (2, 4), (3, 4)))


@pytest.fixture(scope="session")
def e6():
    # row 1..5 with the branch vertex 6 attached to the middle
    return Quiver(6, ((1, 2), (2, 3), (4, 3), (5, 4), (6, 3)))


@pytest.fixture(scope="session")
def e8():
    # row 1..7 with the branch vertex 8 attached to vertex 3
    return Quiver(8, ((1, 2), (2, 3), (4, 3), (5, 4), (6, 5), (7, 6), (8, 3)))


# dimension vectors for the two E-type worked examples
E6_ALPHA = lambda n, m: (n, 2 * n + m, 2 * n + m, 2 * n + m, n, n + m)
E8_ALPHA = lambda n: tuple(n * x for x in (2, 4, 7, 4, 3, 2, 1, 3))


@pytest.fixture(scope="session")
def e6_alpha():
    return E6_ALPHA


@pytest.fixture(scope="session")
def e8_alpha():
    return E8_ALPHA
