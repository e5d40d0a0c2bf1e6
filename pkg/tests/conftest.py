import pytest

from tilingdyn import substitution


@pytest.fixture(scope="session")
def fib():
    return substitution.build("fibonacci", ["a", "b"], {"a": "ab", "b": "a"})


@pytest.fixture(scope="session")
def tm():
    return substitution.build("thue-morse", ["a", "b"], {"a": "ab", "b": "ba"})


@pytest.fixture(scope="session")
def pd():
    return substitution.build("period-doubling", ["a", "b"], {"a": "ab", "b": "aa"})
