import pytest

from posetspace import validate_poset


@pytest.fixture
def chain2():
    return validate_poset(["x", "y"], [("x", "y")], "chain2")


@pytest.fixture
def vee():
    # a and b at the bottom, c on top
    return validate_poset(["a", "b", "c"], [("a", "c"), ("b", "c")], "V")


@pytest.fixture
def antichain2():
    return validate_poset(["a", "b"], [], "antichain2")
