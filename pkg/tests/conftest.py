import math

import pytest

from ballslep import basis as bs
from ballslep import geometry as geo


@pytest.fixture(scope="session")
def d1():
    return geo.Domain(
        "tesseroid", 3, r1=0.1, r2=0.8,
        theta1=0.3 * math.pi, theta2=0.9 * math.pi,
        phi1=-0.6 * math.pi, phi2=0.9 * math.pi,
    )


@pytest.fixture(scope="session")
def d2():
    return geo.Domain(
        "tesseroid", 3, r1=0.7, r2=0.9,
        theta1=0.3 * math.pi, theta2=0.9 * math.pi,
        phi1=-0.6 * math.pi, phi2=0.9 * math.pi,
    )


@pytest.fixture(scope="session")
def zell():
    return bs.zernike_ell()
