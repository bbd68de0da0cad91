from fractions import Fraction

import pytest

from tropsev.dual_curve import passes_through
from tropsev.errors import ConfigDegenerate, SchemaError
from tropsev.enumeration import (
    PointConfiguration,
    Strategy,
    count_through_points,
    hyperplane_trop_contains,
    independence_check,
    stretched_config,
    _count_by_paths,
)
from tropsev.lattice import LatticePolygon, twice_area
from tropsev.sampling import random_polygon, random_weight
from tropsev.severi import SeveriSpec, severi_weight, severi_dimension
from tropsev.subdivision import classify, rank

from conftest import seeded


class TestStretchedConfig:
    def test_two_distinct_points(self):
        cfg = stretched_config(2, 42)
        assert len(set(cfg.points)) == 2

    def test_monotone_structure(self):
        cfg = stretched_config(4, 0)
        xs = [p[0] for p in cfg.points]
        ys = [p[1] for p in cfg.points]
        assert xs == sorted(xs) and len(set(xs)) == 4
        for a, b in zip(ys, ys[1:]):
            assert b > 3 * a  # strongly super-increasing

    def test_distinctness_enforced(self):
        with pytest.raises(SchemaError):
            PointConfiguration(((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))), 0, False)


class TestHyperplaneContainment:
    def test_triple_tie_at_origin(self, d1):
        from tropsev.subdivision import WeightFunction

        assert hyperplane_trop_contains(d1, WeightFunction.zero(d1), (0, 0))

    def test_generic_point_missed(self, d1):
        from tropsev.subdivision import WeightFunction

        assert not hyperplane_trop_contains(d1, WeightFunction.zero(d1), (5, -1))

    def test_agrees_with_passes_through(self):
        rng = seeded(83)
        pairs = 0
        while pairs < 1000:
            poly = random_polygon(rng, max_lattice_points=10)
            w = random_weight(rng, poly)
            for _ in range(10):
                q = (
                    Fraction(rng.randint(-20, 20), rng.randint(1, 5)),
                    Fraction(rng.randint(-20, 20), rng.randint(1, 5)),
                )
                assert hyperplane_trop_contains(poly, w, q) == passes_through(poly, w, q)
                pairs += 1


class TestCounts:
    def test_line_through_two_points(self, d1):
        report = count_through_points(SeveriSpec(d1, 0), stretched_config(2, 0))
        assert report.degree == 1
        assert dict(report.degrees) == {"subdivision": 1, "path": 1}
        assert len(report.solutions) == 1

    def test_one_node_conics(self, two_d1):
        report = count_through_points(SeveriSpec(two_d1, 1), stretched_config(4, 0))
        assert report.degree == 3
        assert dict(report.degrees) == {"subdivision": 3, "path": 3}

    def test_path_counts_match_classical_values(self, d1, two_d1, three_d1):
        assert _count_by_paths(d1, 0) == 1
        assert _count_by_paths(two_d1, 0) == 1
        assert _count_by_paths(two_d1, 1) == 3
        assert _count_by_paths(three_d1, 0) == 1
        assert _count_by_paths(three_d1, 1) == 12
        assert _count_by_paths(three_d1, 2) == 21
        # six points split into three pairs of a line each
        assert _count_by_paths(three_d1, 3) == 15

    def test_path_counts_full_quartic_column(self):
        # classical degrees of the quartic families, reducible curves included:
        # e.g. 675 = 620 rational quartics + 55 cubic-line pairs, and
        # 105 = 8!/(2^4 4!) four-line configurations
        quartic = LatticePolygon([(0, 0), (4, 0), (0, 4)])
        expected = [1, 27, 225, 675, 666, 378, 105]
        assert [_count_by_paths(quartic, d) for d in range(7)] == expected

    def test_square_both_strategies_agree(self, unit_square):
        report = count_through_points(
            SeveriSpec(unit_square, 1), stretched_config(2, 3), Strategy.BOTH
        )
        values = dict(report.degrees)
        assert values["subdivision"] == values["path"] == report.degree

    def test_strip_both_strategies_agree(self):
        strip = LatticePolygon([(0, 0), (2, 0), (2, 1), (0, 1)])
        spec = SeveriSpec(strip, 1)
        report = count_through_points(spec, stretched_config(severi_dimension(spec), 5))
        values = dict(report.degrees)
        assert values["subdivision"] == values["path"] == report.degree

    @pytest.mark.parametrize(
        "vertices, delta, expected",
        [
            ([(0, 0), (3, 0), (0, 3)], 2, 21),  # classical two-node cubics
            ([(0, 0), (2, 0), (2, 2), (0, 2)], 2, 22),
            ([(0, 0), (2, 0), (2, 1), (1, 2), (0, 2)], 1, 12),
        ],
    )
    def test_two_node_desk_scale_cross_strategy(self, vertices, delta, expected):
        polygon = LatticePolygon(vertices)
        spec = SeveriSpec(polygon, delta)
        report = count_through_points(
            spec, stretched_config(severi_dimension(spec), 0), Strategy.BOTH
        )
        assert report.degree == expected
        assert dict(report.degrees)["subdivision"] == dict(report.degrees)["path"]

    def test_wrong_point_count_rejected(self, d1):
        with pytest.raises(SchemaError):
            count_through_points(SeveriSpec(d1, 0), stretched_config(3, 0))


class TestSolutionCertificates:
    def test_every_solution_is_fully_certified(self, two_d1):
        spec = SeveriSpec(two_d1, 1)
        cfg = stretched_config(4, 0)
        report = count_through_points(spec, cfg, Strategy.SUBDIVISION)
        assert report.solutions
        for sol in report.solutions:
            flags = classify(sol.subdivision)
            assert flags.simple and flags.nodal
            assert rank(sol.subdivision) == 4
            mu = 1
            for k in sol.subdivision.triangles:
                mu *= twice_area(sol.subdivision.faces[k])
            assert mu == sol.mu
            # points on r distinct edges, and actually on the curve
            assert len({e.key() for e in sol.point_to_edge}) == 4
            for q in cfg.points:
                assert passes_through(two_d1, sol.omega, q)
            weight_report = severi_weight(spec, sol.omega)
            assert weight_report.m_sev * weight_report.xi == weight_report.mu == sol.mu

    def test_parallel_run_identical(self, two_d1):
        spec = SeveriSpec(two_d1, 1)
        cfg = stretched_config(4, 1)
        seq = count_through_points(spec, cfg, Strategy.SUBDIVISION, jobs=1)
        par = count_through_points(spec, cfg, Strategy.SUBDIVISION, jobs=3)
        assert seq.degree == par.degree
        assert [
            (dict(s.omega.items()), s.mu, s.point_to_edge) for s in seq.solutions
        ] == [(dict(s.omega.items()), s.mu, s.point_to_edge) for s in par.solutions]


class TestIndependence:
    def test_lines(self, d1):
        assert independence_check(SeveriSpec(d1, 0), [0, 1, 2])

    def test_one_node_conics(self, two_d1):
        assert independence_check(SeveriSpec(two_d1, 1), [0, 1, 2])

    def test_needs_two_seeds(self, d1):
        from tropsev.errors import PreconditionError

        with pytest.raises(PreconditionError):
            independence_check(SeveriSpec(d1, 0), [0])


class TestInvariance:
    def test_degree_invariant_under_unimodular_map(self, two_d1):
        # shear (x, y) -> (x + y, y) plus a translation
        image = LatticePolygon([(x + y + 1, y + 2) for x, y in two_d1.vertices])
        base = count_through_points(SeveriSpec(two_d1, 1), stretched_config(4, 7))
        moved = count_through_points(SeveriSpec(image, 1), stretched_config(4, 7))
        assert base.degree == moved.degree == 3


class TestRandomCrossStrategy:
    def test_random_specs_agree(self):
        rng = seeded(99)
        done = 0
        while done < 15:
            poly = random_polygon(rng, box=3, corners=6, max_lattice_points=9)
            n = len(poly.lattice_points)
            delta = rng.randint(0, min(2, n - 2))
            spec = SeveriSpec(poly, delta)
            r = severi_dimension(spec)
            if r < 1:
                continue
            seed = rng.randrange(100)
            try:
                report = count_through_points(
                    spec, stretched_config(r, seed), Strategy.BOTH
                )
            except ConfigDegenerate:
                continue
            degrees = dict(report.degrees)
            assert degrees["subdivision"] == degrees["path"], (poly.vertices, delta)
            done += 1


class TestDegeneracyDetection:
    def test_point_at_forced_vertex_raises(self, d1):
        # the only tropical line through (0,0) and (5,5) has its vertex at (0,0)
        cfg = PointConfiguration(
            ((Fraction(0), Fraction(0)), (Fraction(5), Fraction(5))), 0, False
        )
        with pytest.raises(ConfigDegenerate):
            count_through_points(SeveriSpec(d1, 0), cfg, Strategy.SUBDIVISION)

    def test_generic_rational_configuration_works(self, d1):
        cfg = PointConfiguration(
            ((Fraction(1), Fraction(2)), (Fraction(10), Fraction(3))), 0, False
        )
        report = count_through_points(SeveriSpec(d1, 0), cfg)
        assert report.degree == 1
