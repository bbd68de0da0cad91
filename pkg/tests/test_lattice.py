import random
from fractions import Fraction
from math import gcd

import pytest

from tropsev.errors import DegenerateSegment
from tropsev.lattice import (
    LatticePolygon,
    Segment,
    evaluate_constraints,
    lattice_length,
    rational_lp_feasible,
    smith_normal_form,
    twice_area,
)
from tropsev.sampling import random_polygon
from tropsev.subdivision import WeightFunction, concave_hull, regularity_system

from conftest import seeded


def count_points_on_segment(a, b):
    """Independent oracle: scan the bounding box for collinear points."""
    xs = range(min(a[0], b[0]), max(a[0], b[0]) + 1)
    ys = range(min(a[1], b[1]), max(a[1], b[1]) + 1)
    hits = 0
    for x in xs:
        for y in ys:
            d1 = (b[0] - a[0], b[1] - a[1])
            d2 = (x - a[0], y - a[1])
            if d1[0] * d2[1] - d1[1] * d2[0] == 0:
                if min(a[0], b[0]) <= x <= max(a[0], b[0]) and min(a[1], b[1]) <= y <= max(a[1], b[1]):
                    hits += 1
    return hits


class TestLatticeLength:
    def test_interior_edge_of_node_example(self):
        assert lattice_length(Segment((0, 1), (2, 1))) == 2

    def test_primitive(self):
        assert lattice_length(Segment((0, 0), (1, 0))) == 1

    def test_against_point_count_oracle(self):
        seg = Segment((0, 0), (6, 4))
        assert lattice_length(seg) == count_points_on_segment((0, 0), (6, 4)) - 1
        assert lattice_length(seg) == 2

    def test_degenerate(self):
        with pytest.raises(DegenerateSegment):
            Segment((3, 3), (3, 3))

    def test_additive_along_collinear_concatenation(self):
        rng = seeded(5)
        for _ in range(50):
            a = (rng.randint(-5, 5), rng.randint(-5, 5))
            d = (rng.randint(-4, 4), rng.randint(-4, 4))
            if d == (0, 0):
                continue
            k1, k2 = rng.randint(1, 4), rng.randint(1, 4)
            b = (a[0] + k1 * d[0], a[1] + k1 * d[1])
            c = (b[0] + k2 * d[0], b[1] + k2 * d[1])
            assert lattice_length(Segment(a, b)) + lattice_length(
                Segment(b, c)
            ) == lattice_length(Segment(a, c))


def shoelace_oracle(vertices):
    total = 0
    for i in range(len(vertices)):
        a, b = vertices[i], vertices[(i + 1) % len(vertices)]
        total += a[0] * b[1] - b[0] * a[1]
    return abs(total)


class TestTwiceArea:
    @pytest.mark.parametrize(
        "vertices, expected",
        [
            ([(0, 0), (1, 0), (0, 1)], 1),
            ([(0, 0), (0, 4), (2, 2)], 8),
            ([(0, 0), (0, 2), (2, 1)], 4),
        ],
    )
    def test_examples(self, vertices, expected):
        poly = LatticePolygon(vertices)
        assert twice_area(poly) == expected
        assert twice_area(poly) == shoelace_oracle(poly.vertices)

    def test_picks_theorem(self):
        rng = seeded(11)
        for _ in range(200):
            poly = random_polygon(rng, box=6, corners=9, max_lattice_points=60)
            assert twice_area(poly) == 2 * len(poly.interior_points) + len(
                poly.boundary_points
            ) - 2


def gcd_of_k_minors(matrix, k):
    from itertools import combinations

    rows, cols = len(matrix), len(matrix[0])
    g = 0
    for ri in combinations(range(rows), k):
        for ci in combinations(range(cols), k):
            minor = _det([[matrix[i][j] for j in ci] for i in ri])
            g = gcd(g, abs(minor))
    return g


def _det(m):
    if len(m) == 1:
        return m[0][0]
    return sum(
        (-1) ** j * m[0][j] * _det([row[:j] + row[j + 1 :] for row in m[1:]])
        for j in range(len(m))
    )


def matmul(a, b):
    return [
        [sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


PAPER_MATRIX = [
    [1, 2, -1, -2, 0, 0],
    [1, 0, 0, 0, -1, 0],
    [0, 0, -1, 2, 1, -2],
]


class TestSmithNormalForm:
    def test_three_face_example_matrix(self):
        snf = smith_normal_form(PAPER_MATRIX)
        assert snf.diagonal == (1, 1, 2)

    def test_identity(self):
        assert smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)

    def test_against_minor_gcd_oracle(self):
        m = [[2, 4], [6, 8]]
        snf = smith_normal_form(m)
        assert snf.diagonal == (2, 4)
        assert snf.diagonal[0] == gcd_of_k_minors(m, 1) == 2
        assert snf.diagonal[0] * snf.diagonal[1] == gcd_of_k_minors(m, 2) == 8

    def test_transforms_reproduce_diagonal(self):
        rng = seeded(3)
        for _ in range(40):
            rows = rng.randint(1, 4)
            cols = rng.randint(1, 5)
            m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
            snf = smith_normal_form(m)
            d = matmul(matmul([list(r) for r in snf.left], m), [list(r) for r in snf.right])
            for i in range(rows):
                for j in range(cols):
                    assert d[i][j] == (snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0)
            assert abs(_det([list(r) for r in snf.left])) == 1
            assert abs(_det([list(r) for r in snf.right])) == 1
            nonzero = [x for x in snf.diagonal if x]
            for a, b in zip(nonzero, nonzero[1:]):
                assert b % a == 0

    def test_invariant_under_unimodular_multiplication(self):
        rng = seeded(7)
        base = PAPER_MATRIX

        def random_unimodular(n):
            m = [[int(i == j) for j in range(n)] for i in range(n)]
            for _ in range(6):
                i, j = rng.randrange(n), rng.randrange(n)
                if i != j:
                    c = rng.randint(-2, 2)
                    for k in range(n):
                        m[i][k] += c * m[j][k]
            return m

        reference = smith_normal_form(base).diagonal
        for _ in range(10):
            u = random_unimodular(3)
            v = random_unimodular(6)
            assert smith_normal_form(matmul(matmul(u, base), v)).diagonal == reference


class TestRationalLP:
    def test_open_interval(self):
        res = rational_lp_feasible(1, strict=[((1,), 0), ((-1,), -1)])
        assert res.feasible
        assert 0 < res.witness[0] < 1

    def test_empty_interval(self):
        assert not rational_lp_feasible(1, strict=[((1,), 0), ((-1,), 0)]).feasible

    def test_regularity_system_of_node_example(self, disc_polygon, disc_weight):
        hull = concave_hull(disc_polygon, disc_weight)
        n, index, eqs, struts = regularity_system(hull.subdivision)
        res = rational_lp_feasible(n, equalities=eqs, strict=struts)
        assert res.feasible
        assert evaluate_constraints(res.witness, equalities=eqs, strict=struts)
        # the known witness satisfies the same system and induces the
        # same subdivision, closing the loop with the hull oracle
        known = [Fraction(0)] * n
        known[index[(0, 0)]] = Fraction(-1)
        assert evaluate_constraints(known, equalities=eqs, strict=struts)
        roundtrip = concave_hull(
            disc_polygon,
            WeightFunction(disc_polygon, {p: res.witness[index[p]] for p in disc_polygon.lattice_points}),
        )
        assert roundtrip.subdivision == hull.subdivision

    def test_equalities_reduce_before_elimination(self):
        res = rational_lp_feasible(
            3,
            equalities=[((1, 1, 1), 6), ((1, -1, 0), 0)],
            strict=[((0, 0, 1), 0)],
            nonstrict=[((1, 0, 0), 1)],
        )
        assert res.feasible
        x, y, z = res.witness
        assert x + y + z == 6 and x == y and z > 0 and x >= 1

    def test_infeasible_equalities(self):
        res = rational_lp_feasible(2, equalities=[((1, 1), 1), ((2, 2), 3)])
        assert not res.feasible
