"""Tropical plane curves dual to regular subdivisions.

The curve attached to a weight is the corner locus of the max-plus envelope
alpha -> max(a.alpha + w(a)).  Its vertices sit one per face of the induced
subdivision, bounded edges cross the interior edges orthogonally with weight
equal to the dual lattice length, and rays leave through the outer normals
of the polygon edges.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantError
from .lattice import LatticePolygon, Segment, Vec2, cross, lattice_length, primitive, sub
from .subdivision import ConcaveHullResult, Subdivision, concave_hull, as_value_map

RatPoint = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class CurveEdge:
    """Bounded edge between two curve vertices, dual to an interior edge."""

    start: int
    end: int
    direction: Vec2  # primitive, pointing start -> end
    weight: int
    dual: Segment


@dataclass(frozen=True)
class CurveRay:
    source: int
    direction: Vec2
    weight: int
    dual: Segment


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple[RatPoint, ...]
    edges: tuple[CurveEdge, ...]
    rays: tuple[CurveRay, ...]
    subdivision: Subdivision | None


def _face_plane(hull: ConcaveHullResult, face_index: int) -> tuple[Fraction, Fraction, Fraction]:
    face = hull.subdivision.faces[face_index]
    for plane in hull.planes:
        if set(face.vertices) <= set(plane.tight):
            return plane.hx, plane.hy, plane.g
    raise InternalInvariantError("face without a hull plane")


def _outer_normal(polygon: LatticePolygon, seg: Segment) -> Vec2:
    d = seg.direction
    n = (d[1], -d[0])
    # orient away from the polygon: test against a vertex off the edge line
    probe = next(
        v for v in polygon.vertices if cross(sub(seg.b, seg.a), sub(v, seg.a)) != 0
    )
    side = n[0] * (probe[0] - seg.a[0]) + n[1] * (probe[1] - seg.a[1])
    if side > 0:
        n = (-n[0], -n[1])
    return primitive(n)


def dualize(polygon: LatticePolygon, omega) -> TropicalCurve:
    """Construct the tropical curve dual to the subdivision induced by omega."""
    hull = concave_hull(polygon, omega)
    s = hull.subdivision
    vertices: list[RatPoint] = []
    for i in range(len(s.faces)):
        hx, hy, _ = _face_plane(hull, i)
        vertices.append((-hx, -hy))
    edges: list[CurveEdge] = []
    rays: list[CurveRay] = []
    for edge in s.edges:
        weight = lattice_length(edge.segment)
        if edge.interior:
            i, j = edge.faces
            delta = (vertices[j][0] - vertices[i][0], vertices[j][1] - vertices[i][1])
            if delta == (Fraction(0), Fraction(0)):
                raise InternalInvariantError("adjacent faces share a curve vertex")
            direction = _primitive_of_rational(delta)
            edges.append(CurveEdge(i, j, direction, weight, edge.segment))
        else:
            (i,) = edge.faces
            rays.append(
                CurveRay(i, _outer_normal(polygon, edge.segment), weight, edge.segment)
            )
    return TropicalCurve(tuple(vertices), tuple(edges), tuple(rays), s)


def _primitive_of_rational(v: tuple[Fraction, Fraction]) -> Vec2:
    denom = v[0].denominator * v[1].denominator
    ints = (int(v[0] * denom), int(v[1] * denom))
    return primitive(ints)


def passes_through(polygon: LatticePolygon, omega, q: Sequence) -> bool:
    """Whether the curve of omega passes through q: the argmax ties."""
    values = as_value_map(polygon, omega)
    qx, qy = Fraction(q[0]), Fraction(q[1])
    best: Fraction | None = None
    count = 0
    for a in polygon.lattice_points:
        val = a[0] * qx + a[1] * qy + values[a]
        if best is None or val > best:
            best, count = val, 1
        elif val == best:
            count += 1
    return count >= 2


def check_balancing(curve: TropicalCurve) -> bool:
    """Weighted primitive directions around every vertex must cancel."""
    sums: dict[int, list[int]] = {i: [0, 0] for i in range(len(curve.vertices))}
    for e in curve.edges:
        sums[e.start][0] += e.weight * e.direction[0]
        sums[e.start][1] += e.weight * e.direction[1]
        sums[e.end][0] -= e.weight * e.direction[0]
        sums[e.end][1] -= e.weight * e.direction[1]
    for r in curve.rays:
        sums[r.source][0] += r.weight * r.direction[0]
        sums[r.source][1] += r.weight * r.direction[1]
    return all(v == [0, 0] for v in sums.values())


def point_on_curve(curve: TropicalCurve, q: Sequence) -> bool:
    """Geometric membership test on the support of the curve."""
    qx, qy = Fraction(q[0]), Fraction(q[1])
    for e in curve.edges:
        a = curve.vertices[e.start]
        b = curve.vertices[e.end]
        if _on_segment((qx, qy), a, b):
            return True
    for r in curve.rays:
        if _on_ray((qx, qy), curve.vertices[r.source], r.direction):
            return True
    return False


def _on_segment(q: RatPoint, a: RatPoint, b: RatPoint) -> bool:
    ab = (b[0] - a[0], b[1] - a[1])
    aq = (q[0] - a[0], q[1] - a[1])
    if ab[0] * aq[1] - ab[1] * aq[0] != 0:
        return False
    dot = aq[0] * ab[0] + aq[1] * ab[1]
    return 0 <= dot <= ab[0] * ab[0] + ab[1] * ab[1]


def _on_ray(q: RatPoint, src: RatPoint, d: Vec2) -> bool:
    sq = (q[0] - src[0], q[1] - src[1])
    if sq[0] * d[1] - sq[1] * d[0] != 0:
        return False
    return sq[0] * d[0] + sq[1] * d[1] >= 0
