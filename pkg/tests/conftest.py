import pytest

from coxaut.system import CoxeterSystem


def make_system(names: str, *pairs) -> CoxeterSystem:
    """Build a system from 'a b c' plus (i, j, m) triples."""
    name_list = names.split()
    return CoxeterSystem(name_list, {(i, j): m for i, j, m in pairs})


@pytest.fixture(scope="session")
def a2():
    return make_system("a b", (0, 1, 3))


@pytest.fixture(scope="session")
def a3():
    return make_system("a b c", (0, 1, 3), (1, 2, 3), (0, 2, 2))


@pytest.fixture(scope="session")
def b2():
    return make_system("a b", (0, 1, 4))


@pytest.fixture(scope="session")
def atilde2():
    return make_system("a b c", (0, 1, 3), (1, 2, 3), (0, 2, 3))


@pytest.fixture(scope="session")
def cube():
    return make_system("a b c", (0, 1, 2), (1, 2, 2), (0, 2, 2))


@pytest.fixture(scope="session")
def free2():
    return make_system("a b")


@pytest.fixture(scope="session")
def branched():
    """Free product of C2 (pivot s) with C2 x C2 (commuting t, u); flexible."""
    return make_system("s t u", (1, 2, 2))
