"""Stable intersection of tropical plane curves and lattice index computations.

Transversal crossings of two curve edges contribute the product of their
weights times the absolute determinant of the primitive directions.  When
the curves meet non-transversally, one curve is displaced by a small generic
rational vector until every crossing is transversal and the combinatorics
stabilises; multiplicities of crossings converging to the same limit point
are then summed there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotComplementary, PreconditionError
from .dual_curve import TropicalCurve
from .lattice import LatticePolygon, Vec2, det_int, smith_normal_form, twice_area

RatPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class IntersectionPoint:
    location: RatPoint
    multiplicity: int


@dataclass(frozen=True)
class _Piece:
    """One edge of a curve: a segment (end is a point) or a ray (end is None)."""

    start: RatPoint
    end: RatPoint | None
    direction: Vec2
    weight: int


def _pieces(curve: TropicalCurve, shift: RatPoint = (Fraction(0), Fraction(0))) -> list[_Piece]:
    out = []
    for e in curve.edges:
        a = curve.vertices[e.start]
        b = curve.vertices[e.end]
        out.append(
            _Piece(
                (a[0] + shift[0], a[1] + shift[1]),
                (b[0] + shift[0], b[1] + shift[1]),
                e.direction,
                e.weight,
            )
        )
    for r in curve.rays:
        src = curve.vertices[r.source]
        out.append(_Piece((src[0] + shift[0], src[1] + shift[1]), None, r.direction, r.weight))
    return out


def _crossing(p1: _Piece, p2: _Piece) -> tuple[RatPoint, Fraction, Fraction] | None:
    """Intersection point with both edge parameters, None if parallel or missed."""
    d1, d2 = p1.direction, p2.direction
    det = d1[0] * d2[1] - d1[1] * d2[0]
    if det == 0:
        return None
    rx = p2.start[0] - p1.start[0]
    ry = p2.start[1] - p1.start[1]
    t1 = Fraction(rx * d2[1] - ry * d2[0], det)
    t2 = Fraction(rx * d1[1] - ry * d1[0], det)
    if t1 < 0 or t2 < 0:
        return None
    for piece, t in ((p1, t1), (p2, t2)):
        if piece.end is not None:
            span = _param_span(piece)
            if t > span:
                return None
    point = (p1.start[0] + t1 * d1[0], p1.start[1] + t1 * d1[1])
    return point, t1, t2


def _param_span(piece: _Piece) -> Fraction:
    assert piece.end is not None
    if piece.direction[0] != 0:
        return (piece.end[0] - piece.start[0]) / piece.direction[0]
    return (piece.end[1] - piece.start[1]) / piece.direction[1]


def _transversal_crossings(
    pieces1: list[_Piece], pieces2: list[_Piece]
) -> list[tuple[int, int, RatPoint, int]] | None:
    """All pairwise crossings, or None if any crossing is degenerate.

    Degenerate means a crossing at an endpoint of either edge, which signals
    the displacement was not yet generic.
    """
    out = []
    for i, p1 in enumerate(pieces1):
        for j, p2 in enumerate(pieces2):
            hit = _crossing(p1, p2)
            if hit is None:
                continue
            point, t1, t2 = hit
            for piece, t in ((p1, t1), (p2, t2)):
                if t == 0:
                    return None
                if piece.end is not None and t == _param_span(piece):
                    return None
            d1, d2 = p1.direction, p2.direction
            mult = p1.weight * p2.weight * abs(d1[0] * d2[1] - d1[1] * d2[0])
            out.append((i, j, point, mult))
    return out


def stable_intersect(
    c1: TropicalCurve, c2: TropicalCurve, seed: int = 0
) -> list[IntersectionPoint]:
    """Stable intersection points of two plane tropical curves.

    The second curve is displaced along a seeded generic direction with
    shrinking magnitude until two consecutive magnitudes produce transversal
    crossings with identical combinatorics; each crossing's limit position at
    zero displacement is found by exact linear extrapolation, and crossings
    sharing a limit point pool their multiplicities.
    """
    rng = random.Random(seed)
    pieces1 = _pieces(c1)
    base2 = _pieces(c2)
    for _ in range(64):
        vx = rng.randint(1, 13)
        vy = rng.randint(1, 13)
        if vx == vy:
            continue
        direction = (Fraction(vx), Fraction(vy))
        eps = Fraction(1, 2)
        for _ in range(200):
            shift_a = (direction[0] * eps, direction[1] * eps)
            shift_b = (direction[0] * eps / 2, direction[1] * eps / 2)
            cross_a = _transversal_crossings(pieces1, _pieces(c2, shift_a))
            cross_b = _transversal_crossings(pieces1, _pieces(c2, shift_b))
            if cross_a is not None and cross_b is not None:
                keys_a = sorted((i, j) for i, j, _, _ in cross_a)
                keys_b = sorted((i, j) for i, j, _, _ in cross_b)
                if keys_a == keys_b:
                    return _collect_limits(cross_a, cross_b, eps)
            eps /= 4
        _ = base2  # direction failed to stabilise; draw a fresh one
    raise PreconditionError("no generic displacement found; curves may coincide badly")


def _collect_limits(cross_a, cross_b, eps: Fraction) -> list[IntersectionPoint]:
    by_pair_b = {(i, j): point for i, j, point, _ in cross_b}
    totals: dict[RatPoint, int] = {}
    for i, j, point_a, mult in cross_a:
        point_b = by_pair_b[(i, j)]
        # positions are affine in the displacement: extrapolate to zero
        limit = (
            point_a[0] + (point_b[0] - point_a[0]) * 2,
            point_a[1] + (point_b[1] - point_a[1]) * 2,
        )
        totals[limit] = totals.get(limit, 0) + mult
    return [
        IntersectionPoint(loc, m) for loc, m in sorted(totals.items())
    ]


def total_multiplicity(points: list[IntersectionPoint]) -> int:
    return sum(p.multiplicity for p in points)


@dataclass(frozen=True)
class RationalLinearSpace:
    """A saturated sublattice of Z^n given by a primitive basis."""

    basis: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.basis:
            raise PreconditionError("basis must be nonempty")
        widths = {len(row) for row in self.basis}
        if len(widths) != 1:
            raise PreconditionError("basis rows must share a dimension")
        snf = smith_normal_form(self.basis)
        if snf.rank != len(self.basis):
            raise PreconditionError("basis rows are linearly dependent")
        if snf.product_of_invariants() != 1:
            raise PreconditionError("basis does not span a saturated lattice")

    @property
    def ambient_dimension(self) -> int:
        return len(self.basis[0])

    @property
    def dimension(self) -> int:
        return len(self.basis)


def lattice_index(l1: RationalLinearSpace, l2: RationalLinearSpace) -> int:
    """Index of the direct sum of the two lattices inside Z^n.

    Defined for complementary-dimension spaces meeting only at the origin;
    equals the absolute determinant of the stacked bases.
    """
    n = l1.ambient_dimension
    if l2.ambient_dimension != n or l1.dimension + l2.dimension != n:
        raise NotComplementary(
            f"dimensions {l1.dimension}+{l2.dimension} do not split Z^{n}"
        )
    stacked = [list(r) for r in l1.basis] + [list(r) for r in l2.basis]
    d = det_int(stacked)
    if d == 0:
        raise NotComplementary("spaces intersect nontrivially")
    return abs(d)


def minkowski_sum(p: LatticePolygon, q: LatticePolygon) -> LatticePolygon:
    return LatticePolygon(
        [(a[0] + b[0], a[1] + b[1]) for a in p.vertices for b in q.vertices]
    )


def mixed_volume(p: LatticePolygon, q: LatticePolygon) -> int:
    """area(p + q) - area(p) - area(q), normalised so two lines meet once."""
    doubled = twice_area(minkowski_sum(p, q)) - twice_area(p) - twice_area(q)
    if doubled % 2 != 0:
        raise PreconditionError("mixed volume came out non-integral")
    return doubled // 2
