"""Combinatorial presentation of the boundary-binomial parameter space.

For a nodal subdivision, the coefficients of curves whose face restrictions
are pure binomial powers form a translated subgroup of the coefficient
torus.  Its component count and dimension fall out of one integer matrix:
one row per interior edge carrying the primitive edge direction with
opposite signs in the column blocks of the two incident faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import NotNodal, NotParallelogram, SupportMismatch
from .initial_forms import ComplexPoly, QQi, QQI_ZERO
from .lattice import (
    LatticePolygon,
    Pt,
    Segment,
    Vec2,
    cross,
    is_parallelogram,
    lattice_length,
    primitive,
    smith_normal_form,
    sub,
)
from .subdivision import Subdivision, classify, point_sweep_key


@dataclass(frozen=True)
class SpecialPointSet:
    parallelogram: LatticePolygon
    points: tuple[Pt, ...]


def special_points(p: LatticePolygon) -> SpecialPointSet:
    """Lattice points of a parallelogram outside the span of its side steps.

    The reference lattice is generated by the primitive vectors along the two
    side directions, anchored at a corner; a parallelogram with special points
    is non-primitive.
    """
    if not is_parallelogram(p):
        raise NotParallelogram(f"{p!r} is not a parallelogram")
    v = p.vertices
    corner = v[0]
    u = primitive(sub(v[1], v[0]))
    w = primitive(sub(v[3], v[0]))
    det = cross(u, w)
    out = []
    for a in p.lattice_points:
        rel = sub(a, corner)
        s_num = rel[0] * w[1] - rel[1] * w[0]
        t_num = u[0] * rel[1] - u[1] * rel[0]
        if s_num % det != 0 or t_num % det != 0:
            out.append(a)
    return SpecialPointSet(p, tuple(sorted(out)))


def edge_direction_upward(seg: Segment) -> Vec2:
    """Primitive direction pointing from the lower endpoint in sweep order."""
    a, b = seg.a, seg.b
    if point_sweep_key(b) < point_sweep_key(a):
        a, b = b, a
    return primitive(sub(b, a))


@dataclass(frozen=True)
class GroupPresentation:
    matrix: tuple[tuple[int, ...], ...]
    snf_diagonal: tuple[int, ...]
    l_v: int
    dim_g: int
    support_set: tuple[Pt, ...]
    special: tuple[Pt, ...]
    face_order: tuple[int, ...]
    interior_edges: tuple[Segment, ...]


def build_matrix(s: Subdivision, face_order: Sequence[int] | None = None) -> GroupPresentation:
    """Inner-edge exponent matrix of a nodal subdivision, with its invariants.

    Faces keep the subdivision's sweep order unless a permutation is given;
    interior edges are listed by their (lower face, higher face) index pairs;
    each row holds the upward primitive edge direction in the lower face's
    (alpha, beta) columns and its negative in the higher face's columns.  The
    component count is the product of the Smith invariants and the group
    dimension is twice the face count minus the number of interior edges.
    """
    if not classify(s).nodal:
        raise NotNodal("group presentation requires a nodal subdivision")
    m = len(s.faces)
    order = list(face_order) if face_order is not None else list(range(m))
    if sorted(order) != list(range(m)):
        raise NotNodal(f"face_order must be a permutation of 0..{m - 1}")
    position = {face: k for k, face in enumerate(order)}

    keyed = []
    for edge in s.interior_edges():
        i, j = sorted(position[f] for f in edge.faces)
        keyed.append(((i, j), edge.segment))
    keyed.sort(key=lambda t: t[0])

    rows: list[tuple[int, ...]] = []
    segments: list[Segment] = []
    for (i, j), seg in keyed:
        v = edge_direction_upward(seg)
        row = [0] * (2 * m)
        row[2 * i], row[2 * i + 1] = v[0], v[1]
        row[2 * j], row[2 * j + 1] = -v[0], -v[1]
        rows.append(tuple(row))
        segments.append(seg)

    if rows:
        snf = smith_normal_form(rows)
        diagonal = snf.diagonal
        rank = snf.rank
        l_v = snf.product_of_invariants()
    else:
        diagonal, rank, l_v = (), 0, 1
    dim_g = 2 * m - rank

    special: set[Pt] = set()
    for k in s.parallelograms:
        special.update(special_points(s.faces[k]).points)
    support = tuple(p for p in s.polygon.lattice_points if p not in special)
    return GroupPresentation(
        matrix=tuple(rows),
        snf_diagonal=diagonal,
        l_v=l_v,
        dim_g=dim_g,
        support_set=support,
        special=tuple(sorted(special)),
        face_order=tuple(order),
        interior_edges=tuple(segments),
    )


def _edge_restriction_is_pure_power(f: ComplexPoly, seg: Segment) -> bool:
    """Whether the coefficients along a lattice segment form (aX + bY)**s.

    Normalised against binomials, the sequence must be a nowhere-zero
    geometric progression: c_k / C(s, k) has constant ratio.
    """
    pts = seg.lattice_points()
    s = len(pts) - 1
    coeffs = [f.coefficients.get(p, QQI_ZERO) for p in pts]
    if any(c.is_zero() for c in coeffs):
        return False
    normalized = [coeffs[k] / QQi(comb(s, k)) for k in range(s + 1)]
    for k in range(2, s + 1):
        if normalized[k] * normalized[k - 2] != normalized[k - 1] * normalized[k - 1]:
            return False
    return True


def is_in_V_boundary(f: ComplexPoly, s: Subdivision) -> bool:
    """Membership test for the boundary-binomial locus of a subdivision.

    Triangle faces must restrict to a pure binomial power on every edge;
    parallelogram faces must vanish exactly on their special points and have
    pure-power edge restrictions.  Full bivariate factorisation is not
    attempted.
    """
    lattice = set(s.polygon.lattice_points)
    if not set(f.support) <= lattice:
        raise SupportMismatch("polynomial support escapes the polygon")
    for k, face in enumerate(s.faces):
        if k in s.parallelograms:
            special = set(special_points(face).points)
            for p in face.lattice_points:
                c = f.coefficients.get(p, QQI_ZERO)
                if p in special and not c.is_zero():
                    return False
                if p not in special and c.is_zero():
                    return False
        for seg in face.edges():
            if not _edge_restriction_is_pure_power(f, seg):
                return False
    return True
