import pytest

from intlegendre.legendre import build_legendre
from intlegendre.qfamily import build_q_table


@pytest.fixture(scope="session")
def ltable():
    # depth 41 so that checks needing one neighbour above degree 40 work
    return build_legendre(41)


@pytest.fixture(scope="session")
def qtable(ltable):
    return build_q_table(41, ltable)
