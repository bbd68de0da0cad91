import json

import pytest

from tropsev import jsonio
from tropsev.dual_curve import check_balancing, dualize
from tropsev.errors import SchemaError
from tropsev.initial_forms import LaurentPoly, PuiseuxScalar, initial_form, valuation
from tropsev.lattice import LatticePolygon
from tropsev.subdivision import Subdivision, WeightFunction, concave_hull


class TestPolygonAndWeight:
    def test_roundtrip(self, disc_polygon, disc_weight):
        poly = jsonio.polygon_from_json(jsonio.polygon_to_json(disc_polygon))
        assert poly == disc_polygon
        w = jsonio.weight_from_json(jsonio.weight_to_json(disc_weight), poly)
        assert dict(w.items()) == dict(disc_weight.items())

    def test_rejects_floats(self, disc_polygon):
        with pytest.raises(SchemaError):
            jsonio.weight_from_json({"values": [[0, 0, 0.5]]}, disc_polygon)

    def test_rejects_non_integer_points(self):
        with pytest.raises(SchemaError):
            jsonio.polygon_from_json({"vertices": [[0, 0], [1.5, 0], [0, 1]]})

    def test_accepts_rational_strings(self, d1):
        w = jsonio.weight_from_json(
            {"values": [[0, 0, "1/3"], [1, 0, "-2/7"], [0, 1, 4]]}, d1
        )
        from fractions import Fraction

        assert w[(0, 0)] == Fraction(1, 3)
        assert w[(1, 0)] == Fraction(-2, 7)


class TestSubdivisionAndCurve:
    def test_subdivision_roundtrip(self, disc_polygon, disc_weight):
        s = concave_hull(disc_polygon, disc_weight).subdivision
        doc = jsonio.subdivision_to_json(s, srank=3)
        back = jsonio.subdivision_from_json(doc, disc_polygon)
        assert back == s
        assert doc["rank"] == 3

    def test_invalid_tiling_rejected(self, two_d1):
        with pytest.raises(SchemaError):
            jsonio.subdivision_from_json(
                {"faces": [[[0, 0], [1, 0], [0, 1]]]}, two_d1
            )

    def test_curve_roundtrip_preserves_balancing(self, two_d1):
        curve = dualize(two_d1, WeightFunction.zero(two_d1))
        back = jsonio.curve_from_json(curve_doc := jsonio.curve_to_json(curve))
        assert back.vertices == curve.vertices
        assert back.rays == curve.rays
        assert check_balancing(back)
        assert json.dumps(curve_doc, sort_keys=True) == json.dumps(
            jsonio.curve_to_json(back), sort_keys=True
        )


class TestPolynomialSchema:
    def test_roundtrip_with_puiseux_coefficients(self):
        f = LaurentPoly.from_terms(
            [((0, 0), 1), ((1, 0), PuiseuxScalar.t_power(1)), ((0, 1), PuiseuxScalar([(1, 1), (0, 1)]))]
        )
        doc = jsonio.laurent_to_json(f)
        back = jsonio.laurent_from_json(doc)
        assert back.support == f.support
        for a in f.support:
            assert back.coefficients[a] == f.coefficients[a]
        assert initial_form(back, (1, 1)) == initial_form(f, (1, 1))

    def test_valuations_survive(self):
        from fractions import Fraction

        f = LaurentPoly.from_terms([((0, 0), PuiseuxScalar([(Fraction(-3, 2), 2)]))])
        back = jsonio.laurent_from_json(jsonio.laurent_to_json(f))
        assert valuation(back.coefficients[(0, 0)]) == Fraction(-3, 2)

    def test_malformed_rejected(self):
        with pytest.raises(SchemaError):
            jsonio.laurent_from_json({"terms": [{"a": [0, 0]}]})


class TestCanonicalDump:
    def test_dump_is_stable(self, disc_polygon, disc_weight):
        s = concave_hull(disc_polygon, disc_weight).subdivision
        a = jsonio.dumps(jsonio.subdivision_to_json(s))
        b = jsonio.dumps(jsonio.subdivision_to_json(s))
        assert a == b and a.endswith("\n")
