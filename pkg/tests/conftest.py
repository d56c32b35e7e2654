import math

import pytest

from cuspelastic.geometry import LensDomain


@pytest.fixture
def lens2():
    return LensDomain(2.0, 0.0)


@pytest.fixture
def lens2k1():
    return LensDomain(2.0, 1.0)


SQRT3_2 = math.sqrt(3.0) / 2.0
