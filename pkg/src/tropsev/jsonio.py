"""JSON serialisation for every CLI-facing object.

All schemas are float-free: rationals travel as "p/q" strings (plain
integers are accepted on input) and lattice points as two-element arrays.
Dumping is canonical: sorted keys, two-space indent, trailing newline, so
identical inputs produce byte-identical documents.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .dual_curve import CurveEdge, CurveRay, TropicalCurve
from .enumeration import CountedSolution, PointConfiguration, SeveriDegreeReport
from .errors import SchemaError
from .intersection import IntersectionPoint
from .lattice import LatticePolygon, Segment
from .severi import CVectorReport
from .subdivision import Subdivision, SubdivisionFlags, WeightFunction, classify
from .torus_group import GroupPresentation


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def rational_str(x) -> str:
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_rational(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(f"expected an exact rational, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"not a rational: {value!r}") from exc


def _point(value) -> tuple[int, int]:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(c, int) and not isinstance(c, bool) for c in value)
    ):
        raise SchemaError(f"lattice point must be [x, y] with integers: {value!r}")
    return (value[0], value[1])


# -- polygon


def polygon_to_json(p: LatticePolygon) -> dict:
    return {"vertices": [list(v) for v in p.vertices]}


def polygon_from_json(doc) -> LatticePolygon:
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise SchemaError('polygon document needs a "vertices" array')
    verts = doc["vertices"]
    if not isinstance(verts, list) or len(verts) < 3:
        raise SchemaError("polygon needs at least three vertices")
    return LatticePolygon([_point(v) for v in verts])


# -- weight function


def weight_to_json(w: WeightFunction) -> dict:
    return {
        "values": [[p[0], p[1], rational_str(v)] for p, v in sorted(w.items())]
    }


def weight_from_json(doc, polygon: LatticePolygon) -> WeightFunction:
    if not isinstance(doc, dict) or "values" not in doc:
        raise SchemaError('weight document needs a "values" array')
    values = {}
    for row in doc["values"]:
        if not isinstance(row, list) or len(row) != 3:
            raise SchemaError(f"weight row must be [x, y, value]: {row!r}")
        values[_point(row[:2])] = parse_rational(row[2])
    return WeightFunction(polygon, values)


# -- subdivision


def _segment_json(s: Segment) -> list:
    return [list(s.a), list(s.b)]


def subdivision_to_json(s: Subdivision, srank: int | None = None) -> dict:
    flags: SubdivisionFlags = classify(s)
    doc = {
        "faces": [[list(v) for v in f.vertices] for f in s.faces],
        "flags": {
            "triangular": flags.triangular,
            "nodal": flags.nodal,
            "simple": flags.simple,
        },
        "vertices": [list(v) for v in s.vertices],
        "edges": [
            {
                "endpoints": _segment_json(e.segment),
                "interior": e.interior,
                "faces": list(e.faces),
            }
            for e in s.edges
        ],
    }
    if srank is not None:
        doc["rank"] = srank
    return doc


def subdivision_from_json(doc, polygon: LatticePolygon) -> Subdivision:
    if not isinstance(doc, dict) or "faces" not in doc:
        raise SchemaError('subdivision document needs a "faces" array')
    faces = []
    for face in doc["faces"]:
        if not isinstance(face, list) or len(face) < 3:
            raise SchemaError(f"face must list at least three points: {face!r}")
        faces.append([_point(v) for v in face])
    return Subdivision.from_faces(polygon, faces)


# -- tropical curve


def _rat_point_json(p) -> list:
    return [rational_str(p[0]), rational_str(p[1])]


def curve_to_json(c: TropicalCurve) -> dict:
    return {
        "vertices": [_rat_point_json(v) for v in c.vertices],
        "edges": [
            {
                "start": e.start,
                "end": e.end,
                "direction": list(e.direction),
                "weight": e.weight,
                "dual": _segment_json(e.dual),
            }
            for e in c.edges
        ],
        "rays": [
            {
                "source": r.source,
                "direction": list(r.direction),
                "weight": r.weight,
                "dual": _segment_json(r.dual),
            }
            for r in c.rays
        ],
    }


def curve_from_json(doc) -> TropicalCurve:
    """Rebuild a curve from its dump; the dual subdivision is not restored."""
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise SchemaError('curve document needs a "vertices" array')
    try:
        vertices = tuple(
            (parse_rational(v[0]), parse_rational(v[1])) for v in doc["vertices"]
        )
        edges = tuple(
            CurveEdge(
                start=int(e["start"]),
                end=int(e["end"]),
                direction=_point(e["direction"]),
                weight=int(e["weight"]),
                dual=Segment(*map(tuple, e["dual"])),
            )
            for e in doc.get("edges", ())
        )
        rays = tuple(
            CurveRay(
                source=int(r["source"]),
                direction=_point(r["direction"]),
                weight=int(r["weight"]),
                dual=Segment(*map(tuple, r["dual"])),
            )
            for r in doc.get("rays", ())
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed curve document: {exc}") from exc
    for e in edges:
        if not (0 <= e.start < len(vertices) and 0 <= e.end < len(vertices)):
            raise SchemaError("curve edge references a missing vertex")
    for r in rays:
        if not 0 <= r.source < len(vertices):
            raise SchemaError("curve ray references a missing vertex")
    return TropicalCurve(vertices, edges, rays, subdivision=None)


# -- Laurent polynomials with Puiseux coefficients


def laurent_to_json(f) -> dict:
    from .initial_forms import LaurentPoly

    assert isinstance(f, LaurentPoly)
    terms = []
    for a in f.support:
        scalar = f.coefficients[a]
        terms.append(
            {
                "a": list(a),
                "coeff": [
                    [[rational_str(c.re), rational_str(c.im)], rational_str(e)]
                    for e, c in scalar.terms
                ],
            }
        )
    return {"terms": terms}


def laurent_from_json(doc):
    from .initial_forms import LaurentPoly, PuiseuxScalar, QQi

    if not isinstance(doc, dict) or "terms" not in doc:
        raise SchemaError('polynomial document needs a "terms" array')
    coefficients = {}
    for term in doc["terms"]:
        if not isinstance(term, dict) or "a" not in term or "coeff" not in term:
            raise SchemaError(f"polynomial term needs 'a' and 'coeff': {term!r}")
        a = _point(term["a"])
        scalar_terms = []
        for entry in term["coeff"]:
            if not isinstance(entry, list) or len(entry) != 2:
                raise SchemaError(f"coefficient entry must be [[re, im], exp]: {entry!r}")
            (re, im), exp = entry
            scalar_terms.append((parse_rational(exp), QQi(parse_rational(re), parse_rational(im))))
        coefficients[a] = PuiseuxScalar(scalar_terms)
    return LaurentPoly(coefficients)


def complex_poly_to_json(f) -> dict:
    return {
        "terms": [
            {"a": list(a), "coeff": [rational_str(c.re), rational_str(c.im)]}
            for a, c in sorted(f.coefficients.items())
        ]
    }


# -- group presentation


def presentation_to_json(g: GroupPresentation) -> dict:
    return {
        "matrix": [list(row) for row in g.matrix],
        "snf": list(g.snf_diagonal),
        "l_V": g.l_v,
        "dim_G": g.dim_g,
        "special_points": [list(p) for p in g.special],
        "support": [list(p) for p in g.support_set],
        "interior_edges": [_segment_json(s) for s in g.interior_edges],
        "face_order": list(g.face_order),
    }


# -- Severi weight report


def cvector_report_to_json(rep: CVectorReport) -> dict:
    return {
        "omega": weight_to_json(rep.omega),
        "rank": rep.rank,
        "dimension": rep.dimension,
        "in_support": rep.in_support,
        "m_sev": rep.m_sev,
        "mu": rep.mu,
        "xi": rational_str(rep.xi),
        "l_V": rep.l_v,
        "edge_classes": [list(c) for c in rep.edge_classes],
        "assumed_regular_point": rep.assumed_regular_point,
        "subdivision": subdivision_to_json(rep.subdivision, srank=rep.rank),
    }


# -- intersections


def intersection_report_to_json(points: list[IntersectionPoint]) -> dict:
    return {
        "points": [
            {"location": _rat_point_json(p.location), "multiplicity": p.multiplicity}
            for p in points
        ],
        "total": sum(p.multiplicity for p in points),
    }


# -- configurations, solutions, degree reports


def configuration_to_json(cfg: PointConfiguration) -> dict:
    return {
        "points": [_rat_point_json(p) for p in cfg.points],
        "seed": cfg.seed,
        "stretched": cfg.stretched,
    }


def solution_to_json(sol: CountedSolution, srank: int) -> dict:
    return {
        "omega": weight_to_json(sol.omega),
        "mu": sol.mu,
        "subdivision": subdivision_to_json(sol.subdivision, srank=srank),
        "point_to_edge": [_segment_json(e) for e in sol.point_to_edge],
    }


def degree_report_to_json(rep: SeveriDegreeReport) -> dict:
    r = len(rep.configuration.points)
    return {
        "polygon": polygon_to_json(rep.spec.polygon),
        "delta": rep.spec.delta,
        "dimension": r,
        "configuration": configuration_to_json(rep.configuration),
        "strategy": rep.strategy.value,
        "degrees": {name: value for name, value in rep.degrees},
        "degree": rep.degree,
        "solutions": [solution_to_json(s, r) for s in rep.solutions],
    }


def load_document(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise SchemaError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {path}: {exc}") from exc
