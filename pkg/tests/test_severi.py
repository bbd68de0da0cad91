from fractions import Fraction

import pytest

from tropsev.errors import DeltaTooLarge, NotMaxRank, NotSimpleNodal
from tropsev.lattice import LatticePolygon, lattice_length
from tropsev.sampling import random_polygon, random_weight
from tropsev.severi import (
    SeveriSpec,
    SupportClass,
    edge_equivalence_classes,
    severi_dimension,
    severi_weight,
    support_test,
)
from tropsev.subdivision import Subdivision, WeightFunction, classify, concave_hull

from conftest import seeded


class TestDimension:
    def test_node_example(self, disc_polygon):
        assert severi_dimension(SeveriSpec(disc_polygon, 1)) == 3

    def test_lines(self, d1):
        assert severi_dimension(SeveriSpec(d1, 0)) == 2

    def test_cubics(self, three_d1):
        assert len(three_d1.lattice_points) == 10
        assert severi_dimension(SeveriSpec(three_d1, 1)) == 8

    def test_delta_bounds(self, d1):
        with pytest.raises(DeltaTooLarge):
            SeveriSpec(d1, -1)
        with pytest.raises(DeltaTooLarge):
            SeveriSpec(d1, 2)


class TestSupportTest:
    def test_node_example_candidate(self, disc_polygon, disc_weight):
        assert (
            support_test(SeveriSpec(disc_polygon, 1), disc_weight)
            == SupportClass.MAX_RANK_CANDIDATE
        )

    def test_full_triangulation_rejected(self, disc_polygon):
        omega = WeightFunction(
            disc_polygon, {(0, 0): -3, (0, 1): 0, (0, 2): -2, (1, 1): 1, (2, 1): 0}
        )
        s = concave_hull(disc_polygon, omega).subdivision
        assert len(s.vertices) == 5  # unimodular triangulation has rank 4 > 3
        assert support_test(SeveriSpec(disc_polygon, 1), omega) == SupportClass.REJECTED

    def test_line_spec_trivial_subdivision(self, d1):
        spec = SeveriSpec(d1, 0)
        assert support_test(spec, WeightFunction.zero(d1)) == SupportClass.MAX_RANK_CANDIDATE

    def test_low_rank_is_undecided(self, two_d1):
        spec = SeveriSpec(two_d1, 1)  # dimension 4
        assert support_test(spec, WeightFunction.zero(two_d1)) == SupportClass.LOW_RANK


class TestEdgeClasses:
    def test_node_example_singletons(self, disc_polygon, disc_weight):
        s = concave_hull(disc_polygon, disc_weight).subdivision
        classes = edge_equivalence_classes(s)
        assert len(classes) == len(s.edges) == 5
        assert all(len(c) == 1 for c in classes)

    def test_single_parallelogram(self, unit_square):
        s = Subdivision(unit_square, [unit_square])
        classes = edge_equivalence_classes(s)
        assert sorted(len(c) for c in classes) == [2, 2]

    def test_strip_transitivity(self):
        strip = LatticePolygon([(0, 0), (2, 0), (2, 1), (0, 1)])
        s = Subdivision.from_faces(
            strip,
            [[(0, 0), (1, 0), (1, 1), (0, 1)], [(1, 0), (2, 0), (2, 1), (1, 1)]],
        )
        classes = edge_equivalence_classes(s)
        by_members = {
            frozenset(s.edges[i].segment.key() for i in cls) for cls in classes
        }
        verticals = frozenset(
            {((0, 0), (0, 1)), ((1, 0), (1, 1)), ((2, 0), (2, 1))}
        )
        left_horizontals = frozenset({((0, 0), (1, 0)), ((0, 1), (1, 1))})
        right_horizontals = frozenset({((1, 0), (2, 0)), ((1, 1), (2, 1))})
        # the three vertical edges merge transitively through both squares;
        # the horizontal pairs of each square stay separate classes
        assert by_members == {verticals, left_horizontals, right_horizontals}


class TestSeveriWeight:
    def test_node_example_weight_two(self, disc_polygon, disc_weight):
        rep = severi_weight(SeveriSpec(disc_polygon, 1), disc_weight)
        assert rep.m_sev == 2
        assert rep.mu == 4
        assert rep.xi == 2
        assert rep.m_sev * rep.xi == rep.mu
        assert rep.l_v == 1
        assert not rep.assumed_regular_point

    def test_line(self, d1):
        rep = severi_weight(SeveriSpec(d1, 0), WeightFunction.zero(d1))
        assert (rep.m_sev, rep.mu, rep.xi) == (1, 1, Fraction(1))

    def test_square_with_one_node(self, unit_square):
        rep = severi_weight(SeveriSpec(unit_square, 1), WeightFunction.zero(unit_square))
        assert (rep.m_sev, rep.mu, rep.xi) == (1, 1, Fraction(1))
        assert rep.rank == rep.dimension == 2

    def test_wrong_rank_raises(self, two_d1):
        with pytest.raises(NotMaxRank):
            severi_weight(SeveriSpec(two_d1, 1), WeightFunction.zero(two_d1))

    def test_not_simple_raises(self, three_face_polygon):
        # rank-3 weight whose subdivision misses boundary points
        omega = WeightFunction(
            three_face_polygon,
            {
                p: (2 if p == (1, 2) else (1 if p in {(0, 0), (0, 4), (2, 2)} else 0))
                for p in three_face_polygon.lattice_points
            },
        )
        spec = SeveriSpec(three_face_polygon, 5)  # dimension 3
        s = concave_hull(three_face_polygon, omega).subdivision
        from tropsev.subdivision import rank as srank

        if srank(s) == 3 and not classify(s).simple:
            with pytest.raises(NotSimpleNodal):
                severi_weight(spec, omega)

    def test_report_invariant_under_scaling_and_affine_shift(self, disc_polygon, disc_weight):
        spec = SeveriSpec(disc_polygon, 1)
        base = severi_weight(spec, disc_weight)
        scaled = WeightFunction(
            disc_polygon, {p: 3 * v for p, v in disc_weight.items()}
        ).shifted_by_affine(5, -2, 11)
        rep = severi_weight(spec, scaled)
        assert (rep.m_sev, rep.mu, rep.xi) == (base.m_sev, base.mu, base.xi)
        assert rep.subdivision == base.subdivision
        assert rep.edge_classes == base.edge_classes

    def test_non_primitive_parallelogram_sets_flag(self):
        quad = LatticePolygon([(0, 0), (1, 0), (1, 2), (2, 2)])
        spec = SeveriSpec(quad, 2)  # 5 lattice points, dimension 2
        rep = severi_weight(spec, WeightFunction.zero(quad))
        assert rep.assumed_regular_point
        assert rep.l_v == 1
        assert rep.m_sev == lattice_length(rep.subdivision.edges[0].segment) * 1


class TestSimpleImpliesPrimitiveBoundary:
    def test_boundary_edges_primitive_on_simple_nodal(self):
        rng = seeded(71)
        seen = 0
        while seen < 100:
            poly = random_polygon(rng)
            s = concave_hull(poly, random_weight(rng, poly)).subdivision
            flags = classify(s)
            if not (flags.simple and flags.nodal):
                continue
            for e in s.edges:
                if not e.interior:
                    assert lattice_length(e.segment) == 1
            seen += 1
