import pytest

from essalg import all_posets, chain, discrete, star
from essalg.poset import poset_from_pairs


@pytest.fixture(scope="session")
def chain3():
    return chain(3)


@pytest.fixture(scope="session")
def vee():
    """1 < 2, 1 < 3; 2 and 3 incomparable."""
    return poset_from_pairs(3, [(1, 2), (1, 3)])


@pytest.fixture(scope="session")
def star5():
    return star(5)


@pytest.fixture(scope="session")
def m3():
    """1 bottom, 5 top, 2/3/4 pairwise incomparable."""
    return poset_from_pairs(5, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)])


@pytest.fixture(scope="session")
def posets_upto_3():
    return [p for n in range(4) for p in all_posets(n)]


@pytest.fixture(scope="session")
def posets_upto_4():
    return [p for n in range(5) for p in all_posets(n)]


@pytest.fixture(scope="session")
def discrete2():
    return discrete(2)
