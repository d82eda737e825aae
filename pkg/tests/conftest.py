"""Shared fixtures.

Monodromy representations are expensive (high-precision tracking), so the
standard ones are computed once per session and shared.
"""

import pytest

from abelint.config import Config
from abelint.monodromy import divisor_lattice, monodromy
from abelint.ratpoly import RatPoly, chebyshev

X = RatPoly.x()

# degree-5 polynomial with distinct critical values and full S_5 monodromy;
# fixed once so every numeric test sees the same fixture
QUINTIC = X ** 5 + X ** 4 - 3 * X ** 3 + X + RatPoly.constant(2)

# the two spellings discussed for the quartic example: the first has the
# stated critical values {-1, -3/4}, the second computes to {0, -1}
QUARTIC_SHIFTED = ((X ** 2 - 1) / 2) ** 2 - 1
QUARTIC_PAPER_SPELLING = (X ** 2 / 2 - 1) ** 2 - 1

# the quartic fiber polynomial of the hyperelliptic examples
QUARTIC_F = (X ** 2 / 2 - 1) ** 2


@pytest.fixture(scope="session")
def config():
    return Config()


@pytest.fixture(scope="session")
def t6():
    return chebyshev(6)


@pytest.fixture(scope="session")
def t6_rep(t6, config):
    return monodromy(t6, config)


@pytest.fixture(scope="session")
def t6_lattice(t6, t6_rep):
    return divisor_lattice(t6_rep, t6)


@pytest.fixture(scope="session")
def x6_rep(config):
    return monodromy(X ** 6, config)


@pytest.fixture(scope="session")
def x6_lattice(x6_rep):
    return divisor_lattice(x6_rep, X ** 6)


@pytest.fixture(scope="session")
def quintic_rep(config):
    return monodromy(QUINTIC, config)


@pytest.fixture(scope="session")
def quintic_lattice(quintic_rep):
    return divisor_lattice(quintic_rep, QUINTIC)
