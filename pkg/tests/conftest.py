import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from wickstar import Chart, StarProduct, VectorField, parse

# Exact arithmetic on random inputs has a long tail; wall-clock deadlines
# would make the property tests flaky.
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

DATA = Path(__file__).parent.parent / "data"


def chart_from(u, v=None, dim=1, order=3) -> Chart:
    pu = [[parse(e, dim) for e in row] for row in u]
    pv = [[parse(e, dim) for e in row] for row in v] if v is not None else None
    return Chart(dim, order, pu, pv)


def field_from(hol, antihol, dim=1) -> VectorField:
    return VectorField([parse(e, dim) for e in hol], [parse(e, dim) for e in antihol])


@pytest.fixture(scope="session")
def flat1():
    return chart_from([["w1"]], [["z1"]])


@pytest.fixture(scope="session")
def flat2():
    return chart_from([["w1", "w2"]], [["z1", "z2"]], dim=2)


@pytest.fixture(scope="session")
def fs():
    return chart_from([["w1/(1+z1*w1)"]], [["z1/(1+z1*w1)"]])


@pytest.fixture(scope="session")
def hyperbolic():
    return chart_from([["-w1/(1-z1*w1)"]], [["-z1/(1-z1*w1)"]])


@pytest.fixture(scope="session")
def flat1_nu():
    return chart_from([["w1"], ["w1"]], [["z1"], ["z1"]])


@pytest.fixture(scope="session")
def star_flat1(flat1):
    return StarProduct(flat1)


@pytest.fixture(scope="session")
def star_fs(fs):
    return StarProduct(fs)


@pytest.fixture(scope="session")
def rotation():
    return field_from(["i*z1"], ["-i*w1"])
