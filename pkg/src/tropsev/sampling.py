"""Seeded random instances for property checks: polygons and weights."""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import PreconditionError
from .lattice import LatticePolygon
from .subdivision import WeightFunction


def random_polygon(
    rng: random.Random, box: int = 3, corners: int = 7, max_lattice_points: int = 12
) -> LatticePolygon:
    """A random convex lattice polygon with a bounded number of lattice points."""
    while True:
        pts = [
            (rng.randint(0, box), rng.randint(0, box))
            for _ in range(rng.randint(3, corners))
        ]
        try:
            poly = LatticePolygon(pts)
        except PreconditionError:
            continue
        if len(poly.lattice_points) <= max_lattice_points:
            return poly


def random_weight(
    rng: random.Random, polygon: LatticePolygon, span: int = 4, rational: bool = False
) -> WeightFunction:
    if rational:
        values = {
            p: Fraction(rng.randint(-3 * span, 3 * span), rng.randint(1, 3))
            for p in polygon.lattice_points
        }
    else:
        values = {p: rng.randint(-span, span) for p in polygon.lattice_points}
    return WeightFunction(polygon, values)
