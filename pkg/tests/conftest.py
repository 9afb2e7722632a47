import pytest

from evotropy import Agent, Alphabet, Population


def make_alphabet(size, attributes=None):
    """Alphabet of `size` agents; agent i carries attributes[i] or (i,)."""
    if attributes is None:
        attributes = [(index,) for index in range(size)]
    return Alphabet(tuple(Agent(index, attributes[index]) for index in range(size)))


def make_population(alphabet, rows):
    return Population.from_rows(alphabet, rows)


@pytest.fixture
def alphabet2():
    return make_alphabet(2)


@pytest.fixture
def alphabet3():
    return make_alphabet(3)


@pytest.fixture
def alphabet4():
    return make_alphabet(4)
