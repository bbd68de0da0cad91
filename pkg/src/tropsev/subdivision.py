"""Regular subdivisions of lattice polygons induced by weight functions.

A weight on the lattice points of a polygon lifts them to 3-space; the upper
envelope of the lifted points projects to a polygonal subdivision whose faces
are the domains of linearity of the concave hull.  This module builds that
subdivision exactly, classifies it (triangular / nodal / simple), computes
its rank, certifies regularity of arbitrary subdivisions by exact LP, and
orients the adjacency graph by a generic sweep direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import NonRegular, NotNodal, PreconditionError, SchemaError
from .lattice import (
    LatticePolygon,
    LPResult,
    Pt,
    Segment,
    cross,
    is_parallelogram,
    rational_lp_feasible,
    sub,
    twice_area,
)


def point_sweep_key(p: Pt) -> tuple[int, int]:
    """Bottom-to-top, then left-to-right order used for canonical labelling."""
    return (p[1], p[0])


class WeightFunction:
    """Rational values attached to every lattice point of a polygon."""

    __slots__ = ("polygon", "values")

    def __init__(self, polygon: LatticePolygon, values: Mapping[Pt, object]):
        missing = [p for p in polygon.lattice_points if p not in values]
        if missing:
            raise SchemaError(f"weight function undefined at {missing}")
        self.polygon = polygon
        self.values: dict[Pt, Fraction] = {
            p: Fraction(values[p]) for p in polygon.lattice_points
        }

    @classmethod
    def zero(cls, polygon: LatticePolygon) -> "WeightFunction":
        return cls(polygon, {p: 0 for p in polygon.lattice_points})

    def __getitem__(self, p: Pt) -> Fraction:
        return self.values[p]

    def items(self):
        return self.values.items()

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.values.values())

    def shifted_by_affine(self, vx, vy, c) -> "WeightFunction":
        """Add the affine function p -> vx*x + vy*y + c."""
        return WeightFunction(
            self.polygon,
            {
                p: v + Fraction(vx) * p[0] + Fraction(vy) * p[1] + Fraction(c)
                for p, v in self.values.items()
            },
        )


def as_value_map(polygon: LatticePolygon, omega) -> dict[Pt, Fraction]:
    if isinstance(omega, WeightFunction):
        return omega.values
    return WeightFunction(polygon, omega).values


@dataclass(frozen=True)
class HullPlane:
    """Affine function z = hx*x + hy*y + g tight on one upper facet."""

    hx: Fraction
    hy: Fraction
    g: Fraction
    tight: tuple[Pt, ...]

    def value_at(self, p: Pt) -> Fraction:
        return self.hx * p[0] + self.hy * p[1] + self.g


def upper_hull_planes(values: Mapping[Pt, Fraction]) -> list[HullPlane]:
    """Facet planes of the upper convex hull of the lifted point set.

    Works directly from the finitely many lifted points: every supporting
    plane through three affinely independent points that dominates all values
    is a facet plane, and its tight set projects to one face.  Quartic in the
    number of points, which is fine at the scale this library targets.
    """
    pts = sorted(values)
    lifted = {p: Fraction(values[p]) for p in pts}
    seen: set[tuple[Fraction, Fraction, Fraction]] = set()
    planes: list[HullPlane] = []
    for a, b, c in combinations(pts, 3):
        det = cross(sub(b, a), sub(c, a))
        if det == 0:
            continue
        dzb = lifted[b] - lifted[a]
        dzc = lifted[c] - lifted[a]
        ab, ac = sub(b, a), sub(c, a)
        hx = Fraction(dzb * ac[1] - dzc * ab[1], det)
        hy = Fraction(dzc * ab[0] - dzb * ac[0], det)
        g = lifted[a] - hx * a[0] - hy * a[1]
        key = (hx, hy, g)
        if key in seen:
            continue
        seen.add(key)
        tight: list[Pt] = []
        upper = True
        for p in pts:
            diff = hx * p[0] + hy * p[1] + g - lifted[p]
            if diff < 0:
                upper = False
                break
            if diff == 0:
                tight.append(p)
        if upper:
            planes.append(HullPlane(hx, hy, g, tuple(tight)))
    if not planes:
        raise PreconditionError("point set is not two-dimensional")
    return planes


@dataclass(frozen=True)
class SubdivisionEdge:
    segment: Segment
    faces: tuple[int, ...]

    @property
    def interior(self) -> bool:
        return len(self.faces) == 2


@dataclass(frozen=True)
class SubdivisionFlags:
    triangular: bool
    nodal: bool
    simple: bool


class Subdivision:
    """A polygonal subdivision of a lattice polygon.

    Faces are stored in a canonical bottom-to-top sweep order so that derived
    data (adjacency matrices, group presentations) is reproducible.
    """

    __slots__ = ("polygon", "faces", "edges", "vertices", "triangles", "parallelograms")

    def __init__(self, polygon: LatticePolygon, faces: Sequence[LatticePolygon]):
        self.polygon = polygon
        self.faces: tuple[LatticePolygon, ...] = tuple(
            sorted(faces, key=lambda f: sorted(point_sweep_key(v) for v in f.vertices))
        )
        edge_faces: dict[tuple[Pt, Pt], list[int]] = {}
        for i, face in enumerate(self.faces):
            for seg in face.edges():
                edge_faces.setdefault(seg.key(), []).append(i)
        self.edges: tuple[SubdivisionEdge, ...] = tuple(
            SubdivisionEdge(Segment(a, b), tuple(sorted(owners)))
            for (a, b), owners in sorted(edge_faces.items())
        )
        verts: set[Pt] = set()
        for face in self.faces:
            verts.update(face.vertices)
        self.vertices: tuple[Pt, ...] = tuple(sorted(verts))
        self.triangles = tuple(
            i for i, f in enumerate(self.faces) if len(f.vertices) == 3
        )
        self.parallelograms = tuple(
            i for i, f in enumerate(self.faces) if is_parallelogram(f)
        )

    def interior_edges(self) -> tuple[SubdivisionEdge, ...]:
        return tuple(e for e in self.edges if e.interior)

    def boundary_edges(self) -> tuple[SubdivisionEdge, ...]:
        return tuple(e for e in self.edges if not e.interior)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subdivision)
            and self.polygon == other.polygon
            and self.faces == other.faces
        )

    def __hash__(self) -> int:
        return hash((self.polygon, self.faces))

    def __repr__(self) -> str:
        return f"Subdivision({len(self.faces)} faces of {self.polygon!r})"

    @classmethod
    def from_faces(
        cls, polygon: LatticePolygon, face_vertex_lists: Iterable[Iterable[Pt]]
    ) -> "Subdivision":
        """Build and validate a subdivision from explicit face vertex lists.

        Checks that areas add up, that every interior edge is shared by
        exactly two faces endpoint-to-endpoint, and that boundary edges lie on
        the polygon boundary, which together rule out gaps, overlaps and
        T-junctions.
        """
        faces = [LatticePolygon(vs) for vs in face_vertex_lists]
        if sum(twice_area(f) for f in faces) != twice_area(polygon):
            raise SchemaError("face areas do not add up to the polygon area")
        s = cls(polygon, faces)
        for edge in s.edges:
            if len(edge.faces) > 2:
                raise SchemaError(f"edge {edge.segment} shared by >2 faces")
            if len(edge.faces) == 1 and not _on_boundary_mid(
                polygon, edge.segment.a, edge.segment.b
            ):
                raise SchemaError(f"unmatched interior edge {edge.segment}")
        for f in faces:
            if not all(polygon.contains(v) for v in f.vertices):
                raise SchemaError("face escapes the polygon")
        return s


def _on_boundary_mid(polygon: LatticePolygon, a: Pt, b: Pt) -> bool:
    """Whether the open segment (a, b) runs along the polygon boundary."""
    for edge in polygon.edges():
        u, v = edge.a, edge.b
        if cross(sub(v, u), sub(a, u)) == 0 and cross(sub(v, u), sub(b, u)) == 0:
            return True
    return False


@dataclass(frozen=True)
class ConcaveHullResult:
    hull_values: dict[Pt, Fraction]
    subdivision: Subdivision
    tight_points: frozenset[Pt]
    planes: tuple[HullPlane, ...]


def concave_hull(polygon: LatticePolygon, psi) -> ConcaveHullResult:
    """Concave hull of a weight function and the induced regular subdivision.

    The hull value at a lattice point is the minimum over all facet planes,
    faces are the projections of the upper facets, and tight points are where
    the hull touches the input values.
    """
    values = as_value_map(polygon, psi)
    planes = upper_hull_planes(values)
    faces = [LatticePolygon(pl.tight) for pl in planes]
    subdivision = Subdivision(polygon, faces)
    hull_values: dict[Pt, Fraction] = {}
    for p in polygon.lattice_points:
        hull_values[p] = min(pl.value_at(p) for pl in planes)
    tight = frozenset(p for p in polygon.lattice_points if hull_values[p] == values[p])
    return ConcaveHullResult(hull_values, subdivision, tight, tuple(planes))


def classify(s: Subdivision) -> SubdivisionFlags:
    triangular = len(s.triangles) == len(s.faces)
    nodal = len(s.triangles) + len(s.parallelograms) == len(s.faces)
    vertex_set = set(s.vertices)
    simple = all(p in vertex_set for p in s.polygon.boundary_points)
    return SubdivisionFlags(triangular=triangular, nodal=nodal, simple=simple)


def _face_anchor_coefficients(face: LatticePolygon, p: Pt) -> dict[Pt, Fraction]:
    """Barycentric coefficients of p with respect to the first three corners."""
    v0, v1, v2 = face.vertices[0], face.vertices[1], face.vertices[2]
    det = cross(sub(v1, v0), sub(v2, v0))
    srel = Fraction(cross(sub(p, v0), sub(v2, v0)), det)
    trel = Fraction(cross(sub(v1, v0), sub(p, v0)), det)
    return {v0: 1 - srel - trel, v1: srel, v2: trel}


def _affineness_equalities(s: Subdivision, index: dict[Pt, int]) -> list[tuple[list, int]]:
    """Rows forcing a function on lattice points to be affine on every face."""
    rows = []
    n = len(index)
    for face in s.faces:
        anchors = set(face.vertices[:3])
        for p in face.lattice_points:
            if p in anchors:
                continue
            coeffs = [Fraction(0)] * n
            coeffs[index[p]] = Fraction(-1)
            for q, c in _face_anchor_coefficients(face, p).items():
                coeffs[index[q]] += c
            rows.append((coeffs, 0))
    return rows


def _concavity_strict_rows(s: Subdivision, index: dict[Pt, int]) -> list[tuple[list, int]]:
    """One strict row per interior edge: the neighbour bends strictly down."""
    rows = []
    n = len(index)
    for edge in s.interior_edges():
        i, j = edge.faces
        fi, fj = s.faces[i], s.faces[j]
        on_edge = set(edge.segment.lattice_points())
        w = next(v for v in fj.vertices if v not in on_edge)
        coeffs = [Fraction(0)] * n
        coeffs[index[w]] = Fraction(-1)
        for q, c in _face_anchor_coefficients(fi, w).items():
            coeffs[index[q]] += c
        rows.append((coeffs, 0))
    return rows


def regularity_system(s: Subdivision):
    """(n_vars, index, equalities, strict rows) of the regularity LP."""
    index = {p: k for k, p in enumerate(s.polygon.lattice_points)}
    return len(index), index, _affineness_equalities(s, index), _concavity_strict_rows(s, index)


def is_regular(s: Subdivision) -> tuple[bool, WeightFunction | None]:
    """Decide whether a subdivision is regular; return a witness when it is."""
    n, index, eqs, struts = regularity_system(s)
    result: LPResult = rational_lp_feasible(n, equalities=eqs, strict=struts)
    if not result.feasible:
        return False, None
    values = {p: result.witness[index[p]] for p in s.polygon.lattice_points}
    return True, WeightFunction(s.polygon, values)


def affine_dimension(s: Subdivision) -> int:
    """Dimension of the linear space of functions affine on every face."""
    index = {p: k for k, p in enumerate(s.polygon.lattice_points)}
    rows = [coeffs for coeffs, _ in _affineness_equalities(s, index)]
    return len(index) - _matrix_rank(rows)


def rank(s: Subdivision) -> int:
    """Dimension of the cone of inducing concave functions, modulo constants.

    Computed as the dimension of the linear space of functions affine on each
    face, minus one; a strict concavity witness is required first so the cone
    is full-dimensional inside that space.
    """
    regular, _ = is_regular(s)
    if not regular:
        raise NonRegular("subdivision admits no strictly concave witness")
    return affine_dimension(s) - 1


def _matrix_rank(rows: list[list[Fraction]]) -> int:
    m = [list(r) for r in rows]
    rank_count = 0
    col = 0
    n_cols = len(m[0]) if m else 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank_count, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank_count], m[pivot] = m[pivot], m[rank_count]
        pv = m[rank_count][col]
        for i in range(len(m)):
            if i != rank_count and m[i][col] != 0:
                f = m[i][col] / pv
                for j in range(col, n_cols):
                    m[i][j] -= f * m[rank_count][j]
        rank_count += 1
        if rank_count == len(m):
            break
    return rank_count


def rank_nodal_formula(s: Subdivision) -> int:
    """|Vertices| - 1 - |Parallelograms|, valid for regular nodal subdivisions."""
    flags = classify(s)
    if not flags.nodal:
        raise NotNodal("subdivision has a face that is neither triangle nor parallelogram")
    return len(s.vertices) - 1 - len(s.parallelograms)


@dataclass(frozen=True)
class OrientedAdjacencyGraph:
    nodes: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    zeta: tuple[int, int]


# Deterministic stream of sweep directions; each is coprime so no rescaling
# ambiguity, and consecutive entries are not parallel.
_ZETA_STREAM: tuple[tuple[int, int], ...] = (
    (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2), (1, 4), (4, 1), (3, 4),
    (4, 3), (1, 5), (5, 1), (2, 5), (5, 2), (3, 5), (5, 3), (4, 5), (5, 4),
)


def orient_adjacency(s: Subdivision) -> OrientedAdjacencyGraph:
    """Orient the dual adjacency graph by a generic sweep direction.

    Every subdivision edge is directed to make an acute angle with zeta; the
    dual arc crosses it to the left.  The result is acyclic and no face whose
    edges are all interior is a sink.  Directions are drawn from a fixed
    stream until none of the subdivision edges is perpendicular to the draw.
    """
    for zeta in _ZETA_STREAM:
        if all(
            e.segment.direction[0] * zeta[0] + e.segment.direction[1] * zeta[1] != 0
            for e in s.edges
        ):
            break
    else:
        raise PreconditionError("no generic sweep direction in the stream")

    arcs: list[tuple[int, int]] = []
    for edge in s.interior_edges():
        i, j = edge.faces
        d = edge.segment.direction
        if d[0] * zeta[0] + d[1] * zeta[1] < 0:
            d = (-d[0], -d[1])
        # left normal of the oriented edge
        n_left = (-d[1], d[0])
        a = edge.segment.a
        ci = _face_reference_point(s.faces[i])
        side_i = (ci[0] - Fraction(a[0])) * n_left[0] + (ci[1] - Fraction(a[1])) * n_left[1]
        arcs.append((j, i) if side_i > 0 else (i, j))

    graph = OrientedAdjacencyGraph(tuple(range(len(s.faces))), tuple(sorted(arcs)), zeta)
    _validate_orientation(s, graph)
    return graph


def _face_reference_point(face: LatticePolygon) -> tuple[Fraction, Fraction]:
    xs = [Fraction(v[0]) for v in face.vertices]
    ys = [Fraction(v[1]) for v in face.vertices]
    return sum(xs) / len(xs), sum(ys) / len(ys)


def _validate_orientation(s: Subdivision, graph: OrientedAdjacencyGraph) -> None:
    order: dict[int, int] = {}
    temp: set[int] = set()
    outgoing: dict[int, list[int]] = {n: [] for n in graph.nodes}
    incoming_count: dict[int, int] = {n: 0 for n in graph.nodes}
    for a, b in graph.arcs:
        outgoing[a].append(b)
        incoming_count[b] += 1

    def visit(node: int) -> None:
        if node in order:
            return
        if node in temp:
            raise PreconditionError("oriented adjacency graph has a cycle")
        temp.add(node)
        for nxt in outgoing[node]:
            visit(nxt)
        temp.remove(node)
        order[node] = len(order)

    for node in graph.nodes:
        visit(node)
    for i, face in enumerate(s.faces):
        all_interior = all(
            e.interior for e in s.edges if i in e.faces
        )
        if all_interior and incoming_count[i] > 0 and not outgoing[i]:
            raise PreconditionError(f"face {i} is a sink with all edges interior")
