import random

import pytest

from tropsev.lattice import LatticePolygon
from tropsev.subdivision import Subdivision, WeightFunction


@pytest.fixture
def d1():
    return LatticePolygon([(0, 0), (1, 0), (0, 1)])


@pytest.fixture
def two_d1():
    return LatticePolygon([(0, 0), (2, 0), (0, 2)])


@pytest.fixture
def three_d1():
    return LatticePolygon([(0, 0), (3, 0), (0, 3)])


@pytest.fixture
def disc_polygon():
    """Newton polygon of the one-node example: 5 lattice points."""
    return LatticePolygon([(0, 0), (0, 2), (2, 1)])


@pytest.fixture
def disc_weight(disc_polygon):
    return WeightFunction(
        disc_polygon, {(0, 0): -1, (0, 1): 0, (0, 2): 0, (1, 1): 0, (2, 1): 0}
    )


@pytest.fixture
def three_face_polygon():
    return LatticePolygon([(0, 0), (0, 4), (2, 2)])


@pytest.fixture
def three_face_subdivision(three_face_polygon):
    return Subdivision.from_faces(
        three_face_polygon,
        [
            [(0, 0), (1, 2), (2, 2)],
            [(0, 0), (0, 4), (1, 2)],
            [(1, 2), (2, 2), (0, 4)],
        ],
    )


@pytest.fixture
def unit_square():
    return LatticePolygon([(0, 0), (1, 0), (1, 1), (0, 1)])


def seeded(seed: int) -> random.Random:
    return random.Random(seed)
