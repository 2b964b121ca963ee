import pytest

from gammasums.fields import build_tower


@pytest.fixture(scope="session")
def tower_f3():
    return build_tower(3, 1, 2)


@pytest.fixture(scope="session")
def tower_f3_deep():
    return build_tower(3, 1, 3)


@pytest.fixture(scope="session")
def tower_f2():
    return build_tower(2, 1, 2)


@pytest.fixture(scope="session")
def tower_f4():
    return build_tower(2, 2, 2)


@pytest.fixture(scope="session")
def tower_f5():
    return build_tower(5, 1, 2)
