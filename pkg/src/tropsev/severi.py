"""Severi-variety invariants attached to a weight vector.

Given a polygon, a node count and an integral weight, this module classifies
the weight against the support of the tropical Severi variety and, for
maximal-rank simple nodal candidates, evaluates the tropical weight
l(V) * product of lattice lengths over edge equivalence classes, the
Mikhalkin multiplicity, and the extrinsic multiplicity relating them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DeltaTooLarge, NotMaxRank, NotSimpleNodal, NotNodal
from .lattice import LatticePolygon, Segment, lattice_length, twice_area
from .subdivision import (
    Subdivision,
    SubdivisionFlags,
    WeightFunction,
    classify,
    concave_hull,
    rank,
)
from .torus_group import build_matrix


@dataclass(frozen=True)
class SeveriSpec:
    polygon: LatticePolygon
    delta: int

    def __post_init__(self):
        if self.delta < 0:
            raise DeltaTooLarge("node count must be nonnegative")
        if self.delta > len(self.polygon.lattice_points) - 2:
            raise DeltaTooLarge(
                f"delta={self.delta} leaves no positive-dimensional family "
                f"({len(self.polygon.lattice_points)} lattice points)"
            )


def severi_dimension(spec: SeveriSpec) -> int:
    """Number of lattice points minus the node count minus one."""
    return len(spec.polygon.lattice_points) - spec.delta - 1


class SupportClass(enum.Enum):
    REJECTED = "Rejected"
    MAX_RANK_CANDIDATE = "MaxRankCandidate"
    LOW_RANK = "LowRank"


def support_test(spec: SeveriSpec, omega) -> SupportClass:
    """Classify a weight against the support of the tropical Severi variety.

    Rank above the dimension rejects outright; rank equal to the dimension
    with a simple nodal subdivision is a maximal-rank candidate; anything
    else is left undecided here.
    """
    s = concave_hull(spec.polygon, omega).subdivision
    r = rank(s)
    dim = severi_dimension(spec)
    if r > dim:
        return SupportClass.REJECTED
    flags = classify(s)
    if r == dim and flags.simple and flags.nodal:
        return SupportClass.MAX_RANK_CANDIDATE
    return SupportClass.LOW_RANK


def edge_equivalence_classes(s: Subdivision) -> tuple[tuple[int, ...], ...]:
    """Partition of edge indices merging parallel sides of parallelograms.

    The two pairs of parallel edges of every parallelogram are identified and
    the relation is closed transitively; the finest such partition is
    returned as sorted index classes.
    """
    if not classify(s).nodal:
        raise NotNodal("edge equivalence classes require a nodal subdivision")
    parent = list(range(len(s.edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    index_of = {e.segment.key(): i for i, e in enumerate(s.edges)}
    for k in s.parallelograms:
        face = s.faces[k]
        v = face.vertices
        sides = [Segment(v[i], v[(i + 1) % 4]).key() for i in range(4)]
        union(index_of[sides[0]], index_of[sides[2]])
        union(index_of[sides[1]], index_of[sides[3]])
    classes: dict[int, list[int]] = {}
    for i in range(len(s.edges)):
        classes.setdefault(find(i), []).append(i)
    return tuple(tuple(sorted(c)) for _, c in sorted(classes.items()))


def mikhalkin_multiplicity(s: Subdivision) -> int:
    """Product of twice the areas of all triangle faces."""
    if not classify(s).nodal:
        raise NotNodal("multiplicity is defined for nodal subdivisions")
    mu = 1
    for k in s.triangles:
        mu *= twice_area(s.faces[k])
    return mu


@dataclass(frozen=True)
class CVectorReport:
    omega: WeightFunction
    subdivision: Subdivision
    rank: int
    dimension: int
    in_support: bool
    m_sev: int
    mu: int
    xi: Fraction
    edge_classes: tuple[tuple[int, ...], ...]
    l_v: int
    assumed_regular_point: bool


def severi_weight(spec: SeveriSpec, omega) -> CVectorReport:
    """Tropical weight report for a maximal-rank simple nodal candidate.

    m_sev multiplies l(V) by the lattice lengths of one representative per
    edge class; mu is the Mikhalkin multiplicity; xi = mu / m_sev.  When a
    non-primitive parallelogram is present the result is only valid under
    the regular-point hypothesis, recorded in the report rather than
    silently assumed.
    """
    w = omega if isinstance(omega, WeightFunction) else WeightFunction(spec.polygon, omega)
    s = concave_hull(spec.polygon, w).subdivision
    r = rank(s)
    dim = severi_dimension(spec)
    if r != dim:
        raise NotMaxRank(f"rank {r} != dim {dim}")
    flags: SubdivisionFlags = classify(s)
    if not (flags.simple and flags.nodal):
        raise NotSimpleNodal(f"subdivision flags {flags}")
    presentation = build_matrix(s)
    classes = edge_equivalence_classes(s)
    m_sev = presentation.l_v
    for cls in classes:
        m_sev *= lattice_length(s.edges[cls[0]].segment)
    mu = mikhalkin_multiplicity(s)
    xi = Fraction(mu, m_sev)
    assumed = len(presentation.special) > 0
    return CVectorReport(
        omega=w,
        subdivision=s,
        rank=r,
        dimension=dim,
        in_support=True,
        m_sev=m_sev,
        mu=mu,
        xi=xi,
        edge_classes=classes,
        l_v=presentation.l_v,
        assumed_regular_point=assumed,
    )
