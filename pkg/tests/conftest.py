import os
import random

import pytest

from goeritz import parse_pd

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF = "X(1,4,2,3) X(3,2,4,1)"
FIG8 = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"


def base_seed() -> int:
    return int(os.environ.get("GOERITZ_SEED", "0"))


def rng_for(*key) -> random.Random:
    return random.Random("-".join(str(k) for k in (base_seed(),) + key))


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL)


@pytest.fixture
def hopf():
    return parse_pd(HOPF)
