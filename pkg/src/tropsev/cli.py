"""Batch command-line front door.

Subcommands take JSON files, dispatch to the library and emit a JSON report
on stdout (and optionally to a file); figures go to SVG when requested.
Exit codes: 1 for schema problems, 2 for violated preconditions, 3 for
internal invariant breaches.
"""

from __future__ import annotations

import argparse
import random
import sys

from .dual_curve import check_balancing, dualize
from .enumeration import (
    PointConfiguration,
    Strategy,
    count_through_points,
    stretched_config,
)
from .errors import (
    InternalInvariantError,
    PreconditionError,
    SchemaError,
    TropsevError,
)
from .intersection import stable_intersect
from .lattice import twice_area
from .severi import (
    SeveriSpec,
    severi_dimension,
    severi_weight,
)
from .subdivision import classify, concave_hull, rank, rank_nodal_formula
from .torus_group import build_matrix
from . import jsonio
from . import sampling


def _emit(doc: dict, args) -> None:
    text = jsonio.dumps(doc)
    sys.stdout.write(text)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_polygon(args):
    return jsonio.polygon_from_json(jsonio.load_document(args.polygon))


def _load_weights(args, polygon):
    return jsonio.weight_from_json(jsonio.load_document(args.weights), polygon)


def cmd_subdivide(args) -> int:
    polygon = _load_polygon(args)
    weights = _load_weights(args, polygon)
    result = concave_hull(polygon, weights)
    doc = jsonio.subdivision_to_json(result.subdivision, srank=rank(result.subdivision))
    doc["tight_points"] = [list(p) for p in sorted(result.tight_points)]
    doc["hull_values"] = [
        [p[0], p[1], jsonio.rational_str(v)] for p, v in sorted(result.hull_values.items())
    ]
    _emit(doc, args)
    if args.emit_svg:
        from . import render

        render.render_subdivision(result.subdivision, f"{args.emit_svg}/subdivision.svg")
    return 0


def cmd_curve(args) -> int:
    polygon = _load_polygon(args)
    weights = _load_weights(args, polygon)
    curve = dualize(polygon, weights)
    if not check_balancing(curve):
        raise InternalInvariantError("dual curve failed balancing")
    _emit(jsonio.curve_to_json(curve), args)
    if args.emit_svg:
        from . import render

        render.render_curve(curve, f"{args.emit_svg}/curve.svg")
    return 0


def cmd_weight(args) -> int:
    polygon = _load_polygon(args)
    weights = _load_weights(args, polygon)
    spec = SeveriSpec(polygon, args.delta)
    report = severi_weight(spec, weights)
    _emit(jsonio.cvector_report_to_json(report), args)
    return 0


def cmd_group(args) -> int:
    polygon = _load_polygon(args)
    if args.subdivision:
        s = jsonio.subdivision_from_json(jsonio.load_document(args.subdivision), polygon)
    else:
        if not args.weights:
            raise SchemaError("group needs --subdivision or --weights")
        s = concave_hull(polygon, _load_weights(args, polygon)).subdivision
    _emit(jsonio.presentation_to_json(build_matrix(s)), args)
    return 0


def cmd_intersect(args) -> int:
    c1 = jsonio.curve_from_json(jsonio.load_document(args.curve1))
    c2 = jsonio.curve_from_json(jsonio.load_document(args.curve2))
    points = stable_intersect(c1, c2, seed=args.seed)
    _emit(jsonio.intersection_report_to_json(points), args)
    return 0


def cmd_count(args) -> int:
    polygon = _load_polygon(args)
    spec = SeveriSpec(polygon, args.delta)
    config = stretched_config(severi_dimension(spec), args.seed)
    report = count_through_points(spec, config, Strategy(args.strategy), jobs=args.jobs)
    _emit(jsonio.degree_report_to_json(report), args)
    if args.emit_svg:
        from . import render

        for k, solution in enumerate(report.solutions):
            render.render_solution(solution, polygon, args.emit_svg, k)
    return 0


def cmd_check(args) -> int:
    from .severi import SupportClass, support_test
    from .intersection import mixed_volume, total_multiplicity
    from .subdivision import WeightFunction

    rng = random.Random(args.seed)
    suites = {
        "pick_euler_area": [0, 0],
        "rank_formula": [0, 0],
        "balancing": [0, 0],
        "dim_g": [0, 0],
        "bernstein": [0, 0],
        "weight_chain": [0, 0],
    }

    def record(name: str, ok: bool) -> None:
        suites[name][0 if ok else 1] += 1

    while suites["pick_euler_area"][0] + suites["pick_euler_area"][1] < args.instances:
        poly = sampling.random_polygon(rng)
        psi = sampling.random_weight(rng, poly)
        res = concave_hull(poly, psi)
        s = res.subdivision
        area_ok = sum(twice_area(f) for f in s.faces) == twice_area(poly)
        euler_ok = len(s.vertices) - len(s.edges) + len(s.faces) == 1
        pick_ok = twice_area(poly) == 2 * len(poly.interior_points) + len(
            poly.boundary_points
        ) - 2
        record("pick_euler_area", area_ok and euler_ok and pick_ok)
        curve = dualize(poly, psi)
        record("balancing", check_balancing(curve))
        flags = classify(s)
        if flags.nodal:
            record("rank_formula", rank(s) == rank_nodal_formula(s))
            g = build_matrix(s)
            record("dim_g", g.dim_g == len(s.vertices) - 1 - len(s.parallelograms))
            if flags.simple:
                delta = len(poly.lattice_points) - len(s.vertices) + len(s.parallelograms)
                spec = SeveriSpec(poly, delta)
                if support_test(spec, psi) == SupportClass.MAX_RANK_CANDIDATE:
                    rep = severi_weight(spec, psi)
                    record("weight_chain", rep.m_sev * rep.xi == rep.mu)

    while suites["bernstein"][0] + suites["bernstein"][1] < args.instances:
        pa = sampling.random_polygon(rng, max_lattice_points=8)
        pb = sampling.random_polygon(rng, max_lattice_points=8)
        ca = dualize(pa, WeightFunction.zero(pa))
        shift = (rng.randint(-30, 30), rng.randint(-30, 30))
        cb = dualize(
            pb,
            WeightFunction(
                pb, {p: shift[0] * p[0] + shift[1] * p[1] for p in pb.lattice_points}
            ),
        )
        total = total_multiplicity(stable_intersect(ca, cb, seed=rng.randrange(1 << 20)))
        record("bernstein", total == mixed_volume(pa, pb))

    doc = {
        name: {"pass": ok, "fail": bad} for name, (ok, bad) in sorted(suites.items())
    }
    _emit(doc, args)
    if any(bad for _, bad in suites.values()):
        raise InternalInvariantError("invariant suite reported failures")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropsev",
        description="Exact combinatorics of tropical Severi varieties",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, weights=True, svg=False):
        p.add_argument("--polygon", required=True, help="polygon JSON file")
        if weights:
            p.add_argument("--weights", required=weights == "required", help="weight JSON file")
        p.add_argument("--json-out", help="also write the report to this path")
        if svg:
            p.add_argument("--emit-svg", metavar="DIR", help="render figures into DIR")

    p = sub.add_parser("subdivide", help="regular subdivision from a weight function")
    common(p, weights="required", svg=True)
    p.set_defaults(func=cmd_subdivide)

    p = sub.add_parser("curve", help="dual tropical curve of a weight function")
    common(p, weights="required", svg=True)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("weight", help="tropical Severi weight of a candidate vector")
    common(p, weights="required")
    p.add_argument("--delta", type=int, required=True, help="number of nodes")
    p.set_defaults(func=cmd_weight)

    p = sub.add_parser("group", help="boundary-binomial group presentation")
    common(p, weights=True)
    p.add_argument("--subdivision", help="explicit subdivision JSON file")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("intersect", help="stable intersection of two curves")
    p.add_argument("--curve1", required=True)
    p.add_argument("--curve2", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("count", help="Severi degree through a stretched configuration")
    p.add_argument("--polygon", required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--strategy",
        choices=[s.value for s in Strategy],
        default=Strategy.BOTH.value,
    )
    p.add_argument("--jobs", type=int, default=1, help="parallel workers")
    p.add_argument("--json-out")
    p.add_argument("--emit-svg", metavar="DIR")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("check", help="run the seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=100)
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3
    except TropsevError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
