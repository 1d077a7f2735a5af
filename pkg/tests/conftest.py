import pytest

from edslab.curves import Point, WeierstrassCurve
from edslab.eds import EdsContext

CURVE_37 = WeierstrassCurve(0, 0, 1, -1, 0)
CURVE_389 = WeierstrassCurve(0, 1, 1, -2, 0)
CURVE_IRR = WeierstrassCurve(1, 0, 0, -2, 1)
CURVE_54 = WeierstrassCurve(2, 1, 1, 7, 4)
CURVE_BIG = WeierstrassCurve(0, 1, 1, -1291874622406186, 17872226251073822113702)
NODAL = WeierstrassCurve(3, 2, 3, 1, 0, allow_singular=True)


@pytest.fixture(scope="session")
def ctx37():
    return EdsContext(CURVE_37, Point(0, 0))


@pytest.fixture(scope="session")
def ctx389():
    return EdsContext(CURVE_389, Point(0, 0))


@pytest.fixture(scope="session")
def ctx_irr():
    return EdsContext(CURVE_IRR, Point(1, 0))


@pytest.fixture(scope="session")
def ctx54():
    return EdsContext(CURVE_54, Point(4, 7))


@pytest.fixture(scope="session")
def ctx_big():
    return EdsContext(CURVE_BIG, Point(20751503, 1073344))


@pytest.fixture(scope="session")
def ctx_nodal():
    return EdsContext(NODAL, Point(0, 0), check_nontorsion=False)
