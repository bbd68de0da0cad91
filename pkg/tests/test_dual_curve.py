from fractions import Fraction

from tropsev.dual_curve import (
    CurveRay,
    TropicalCurve,
    check_balancing,
    dualize,
    passes_through,
    point_on_curve,
)
from tropsev.sampling import random_polygon, random_weight
from tropsev.subdivision import WeightFunction, rank

from conftest import seeded


class TestDualize:
    def test_squared_line_curve(self, two_d1):
        c = dualize(two_d1, WeightFunction.zero(two_d1))
        assert c.vertices == ((Fraction(0), Fraction(0)),)
        assert {(r.direction, r.weight) for r in c.rays} == {
            ((-1, 0), 2),
            ((0, -1), 2),
            ((1, 1), 2),
        }
        assert not c.edges
        assert check_balancing(c)

    def test_line_curve(self, d1):
        c = dualize(d1, WeightFunction.zero(d1))
        assert c.vertices == ((Fraction(0), Fraction(0)),)
        assert {(r.direction, r.weight) for r in c.rays} == {
            ((-1, 0), 1),
            ((0, -1), 1),
            ((1, 1), 1),
        }

    def test_two_vertex_example(self, two_d1):
        psi = WeightFunction(
            two_d1, {p: (0 if p == (0, 0) else 1) for p in two_d1.lattice_points}
        )
        c = dualize(two_d1, psi)
        assert set(c.vertices) == {
            (Fraction(-1), Fraction(-1)),
            (Fraction(0), Fraction(0)),
        }
        assert len(c.edges) == 1
        edge = c.edges[0]
        assert edge.dual.key() == ((0, 1), (1, 0))
        assert edge.weight == 1


class TestPassesThrough:
    def test_tie_between_constant_and_y(self, d1):
        assert passes_through(d1, WeightFunction.zero(d1), (-3, 0))

    def test_unique_maximum(self, d1):
        assert not passes_through(d1, WeightFunction.zero(d1), (-3, -7))

    def test_vertex_of_two_vertex_example(self, two_d1):
        psi = WeightFunction(
            two_d1, {p: (0 if p == (0, 0) else 1) for p in two_d1.lattice_points}
        )
        assert passes_through(two_d1, psi, (-1, -1))


class TestBalancing:
    def test_squared_line_by_hand(self):
        total = (
            2 * (-1) + 2 * 0 + 2 * 1,
            2 * 0 + 2 * (-1) + 2 * 1,
        )
        assert total == (0, 0)

    def test_all_duals_balanced(self):
        rng = seeded(43)
        for _ in range(100):
            poly = random_polygon(rng)
            c = dualize(poly, random_weight(rng, poly))
            assert check_balancing(c)

    def test_perturbed_weight_unbalances(self, two_d1):
        c = dualize(two_d1, WeightFunction.zero(two_d1))
        bad_rays = tuple(
            CurveRay(r.source, r.direction, 3 if k == 0 else r.weight, r.dual)
            for k, r in enumerate(c.rays)
        )
        assert not check_balancing(TropicalCurve(c.vertices, c.edges, bad_rays, c.subdivision))


class TestCurveInvariants:
    def test_duality_counts_weights_orthogonality(self):
        rng = seeded(47)
        for _ in range(100):
            poly = random_polygon(rng)
            w = random_weight(rng, poly)
            c = dualize(poly, w)
            assert len(c.vertices) == len(c.subdivision.faces)
            assert len(c.edges) + len(c.rays) == len(c.subdivision.edges)
            for e in c.edges:
                d = e.dual.direction
                assert e.direction[0] * d[0] + e.direction[1] * d[1] == 0
                assert e.weight == len(e.dual.lattice_points()) - 1

    def test_passes_through_matches_geometry(self):
        rng = seeded(53)
        for _ in range(40):
            poly = random_polygon(rng)
            w = random_weight(rng, poly)
            c = dualize(poly, w)
            for _ in range(8):
                q = (
                    Fraction(rng.randint(-12, 12), rng.randint(1, 4)),
                    Fraction(rng.randint(-12, 12), rng.randint(1, 4)),
                )
                assert passes_through(poly, w, q) == point_on_curve(c, q)
            for v in c.vertices:
                assert passes_through(poly, w, v)

    def test_rank_coherence(self):
        rng = seeded(59)
        for _ in range(20):
            poly = random_polygon(rng)
            w = random_weight(rng, poly)
            c = dualize(poly, w)
            assert rank(c.subdivision) == rank(dualize(poly, w).subdivision)
