import pytest

from khova import parse_braid_word, parse_pd_code

# One four-vertex diagram, two colorings: all-positive gives a trefoil on
# three strands, the mixed-sign version is the figure-eight knot.
LETTERED_41 = "X(E,H,G,F)+; X(A,B,C,H)-; X(C,D,F,G)+; X(B,A,E,D)-"
LETTERED_31 = LETTERED_41.replace("-", "+")

TREFOIL_WORD = "1,1,1"
FIGURE8_WORD = "1,-2,1,-2"


@pytest.fixture
def trefoil2():
    return parse_braid_word(TREFOIL_WORD, 2)


@pytest.fixture
def figure8():
    return parse_braid_word(FIGURE8_WORD, 3)


@pytest.fixture
def lettered_31():
    return parse_pd_code(LETTERED_31)


@pytest.fixture
def lettered_41():
    return parse_pd_code(LETTERED_41)
