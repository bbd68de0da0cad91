"""Initial forms of Laurent polynomials with truncated Puiseux coefficients.

Coefficients live in an exact model: finite sums of rational powers of the
deformation parameter with Gaussian-rational coefficients.  The valuation of
a scalar is its largest exponent, the valuation profile of a polynomial gets
replaced by its concave hull, and the initial form with respect to a
direction collects the leading coefficients on the selected face of the
induced subdivision of the Newton polygon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import PreconditionError, SchemaError, SupportMismatch, ZeroScalar
from .lattice import LatticePolygon, Pt
from .subdivision import Subdivision, upper_hull_planes


@dataclass(frozen=True)
class QQi:
    """A Gaussian rational: exact complex number with rational parts."""

    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __add__(self, other: "QQi") -> "QQi":
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "QQi") -> "QQi":
        return QQi(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "QQi") -> "QQi":
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __truediv__(self, other: "QQi") -> "QQi":
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __neg__(self) -> "QQi":
        return QQi(-self.re, -self.im)

    def __repr__(self) -> str:
        if self.im == 0:
            return f"QQi({self.re})"
        return f"QQi({self.re}, {self.im})"


QQI_ZERO = QQi(Fraction(0))
QQI_ONE = QQi(Fraction(1))


class PuiseuxScalar:
    """Finite sum of c * t**e terms, exponents strictly decreasing."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[object, object]]):
        collected: dict[Fraction, QQi] = {}
        for exp, coeff in terms:
            c = coeff if isinstance(coeff, QQi) else QQi(Fraction(coeff))
            if c.is_zero():
                continue
            e = Fraction(exp)
            acc = collected.get(e, QQI_ZERO) + c
            if acc.is_zero():
                collected.pop(e, None)
            else:
                collected[e] = acc
        self.terms: tuple[tuple[Fraction, QQi], ...] = tuple(
            sorted(collected.items(), key=lambda t: t[0], reverse=True)
        )

    @classmethod
    def constant(cls, c) -> "PuiseuxScalar":
        return cls([(0, c if isinstance(c, QQi) else QQi(Fraction(c)))])

    @classmethod
    def t_power(cls, exp, coeff=1) -> "PuiseuxScalar":
        return cls([(exp, coeff if isinstance(coeff, QQi) else QQi(Fraction(coeff)))])

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def leading_coefficient(self) -> QQi:
        if self.is_zero():
            raise ZeroScalar("zero scalar has no leading coefficient")
        return self.terms[0][1]

    def coefficient_at(self, exp) -> QQi:
        e = Fraction(exp)
        for te, tc in self.terms:
            if te == e:
                return tc
        return QQI_ZERO

    def __add__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        return PuiseuxScalar(list(self.terms) + list(other.terms))

    def __mul__(self, other: "PuiseuxScalar") -> "PuiseuxScalar":
        return PuiseuxScalar(
            (e1 + e2, c1 * c2) for e1, c1 in self.terms for e2, c2 in other.terms
        )

    def __neg__(self) -> "PuiseuxScalar":
        return PuiseuxScalar((e, -c) for e, c in self.terms)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PuiseuxScalar) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __repr__(self) -> str:
        if self.is_zero():
            return "PuiseuxScalar(0)"
        return "PuiseuxScalar(" + " + ".join(f"{c!r}*t^{e}" for e, c in self.terms) + ")"


def valuation(b: PuiseuxScalar) -> Fraction:
    """Largest exponent present in the scalar."""
    if b.is_zero():
        raise ZeroScalar("valuation of the zero scalar is undefined")
    return b.terms[0][0]


class LaurentPoly:
    """Laurent polynomial with Puiseux-scalar coefficients on a finite support."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[Pt, PuiseuxScalar]):
        self.coefficients: dict[Pt, PuiseuxScalar] = {
            (int(a[0]), int(a[1])): c
            for a, c in coefficients.items()
            if not c.is_zero()
        }
        if not self.coefficients:
            raise PreconditionError("Laurent polynomial must be nonzero")

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Pt, object]]) -> "LaurentPoly":
        acc: dict[Pt, PuiseuxScalar] = {}
        for a, c in terms:
            scalar = c if isinstance(c, PuiseuxScalar) else PuiseuxScalar.constant(c)
            key = (int(a[0]), int(a[1]))
            acc[key] = acc.get(key, PuiseuxScalar([])) + scalar
        return cls({a: c for a, c in acc.items() if not c.is_zero()})

    @property
    def support(self) -> tuple[Pt, ...]:
        return tuple(sorted(self.coefficients))

    def newton_polygon(self) -> LatticePolygon:
        return LatticePolygon(self.support)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc: dict[Pt, PuiseuxScalar] = {}
        for a, ca in self.coefficients.items():
            for b, cb in other.coefficients.items():
                key = (a[0] + b[0], a[1] + b[1])
                acc[key] = acc.get(key, PuiseuxScalar([])) + ca * cb
        return LaurentPoly({k: v for k, v in acc.items() if not v.is_zero()})

    def __repr__(self) -> str:
        return f"LaurentPoly({len(self.coefficients)} terms)"


class ComplexPoly:
    """Polynomial over the exact complex scalars; the target of initial forms."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Mapping[Pt, QQi]):
        self.coefficients: dict[Pt, QQi] = {
            (int(a[0]), int(a[1])): c for a, c in coefficients.items() if not c.is_zero()
        }

    @property
    def support(self) -> tuple[Pt, ...]:
        return tuple(sorted(self.coefficients))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ComplexPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coefficients.items(), key=lambda kv: kv[0])))

    def restrict(self, points: Iterable[Pt]) -> "ComplexPoly":
        keep = set(points)
        return ComplexPoly({a: c for a, c in self.coefficients.items() if a in keep})

    def __repr__(self) -> str:
        return f"ComplexPoly({dict(sorted(self.coefficients.items()))})"


def coefficient_valuations(f: LaurentPoly) -> dict[Pt, Fraction]:
    return {a: valuation(c) for a, c in f.coefficients.items()}


@dataclass(frozen=True)
class ValuationHull:
    """Concave hull of the coefficient valuations over the Newton polygon."""

    newton: LatticePolygon
    subdivision: Subdivision
    nu: dict[Pt, Fraction]
    leading: dict[Pt, QQi]  # c-degree-zero data: zero where the hull lifts off


def valuation_hull(f: LaurentPoly) -> ValuationHull:
    vals = coefficient_valuations(f)
    newton = f.newton_polygon()
    planes = upper_hull_planes(vals)
    faces = [LatticePolygon(pl.tight) for pl in planes]
    subdivision = Subdivision(newton, faces)
    nu = {p: min(pl.value_at(p) for pl in planes) for p in newton.lattice_points}
    leading: dict[Pt, QQi] = {}
    for p in newton.lattice_points:
        c = f.coefficients.get(p)
        if c is not None and valuation(c) == nu[p]:
            leading[p] = c.leading_coefficient
        else:
            leading[p] = QQI_ZERO
    return ValuationHull(newton, subdivision, nu, leading)


def initial_form(f: LaurentPoly, w: Sequence[int]) -> ComplexPoly:
    """Initial form of f with respect to an integer direction.

    The selected terms maximise a.w + nu(a) over the support, and each keeps
    its leading coefficient when the valuation is tight against the hull
    (zero coefficients drop out).
    """
    if len(w) != 2:
        raise SchemaError("direction must have two integer entries")
    wx, wy = int(w[0]), int(w[1])
    hull = valuation_hull(f)
    degree = max(a[0] * wx + a[1] * wy + hull.nu[a] for a in f.support)
    selected = {
        a: hull.leading[a]
        for a in f.support
        if a[0] * wx + a[1] * wy + hull.nu[a] == degree
    }
    return ComplexPoly(selected)


def face_polynomials(f: LaurentPoly) -> list[tuple[LatticePolygon, ComplexPoly]]:
    """Leading data restricted to each two-dimensional face of the hull."""
    f.newton_polygon()  # raises unless the support is two-dimensional
    hull = valuation_hull(f)
    out = []
    for face in hull.subdivision.faces:
        coeffs = {p: hull.leading[p] for p in face.lattice_points}
        out.append((face, ComplexPoly(coeffs)))
    return out


def initial_form_constant(f: ComplexPoly, w: Sequence[int]) -> ComplexPoly:
    """Constant-coefficient initial form: argmax of a.w alone."""
    wx, wy = int(w[0]), int(w[1])
    degree = max(a[0] * wx + a[1] * wy for a in f.support)
    return ComplexPoly(
        {a: c for a, c in f.coefficients.items() if a[0] * wx + a[1] * wy == degree}
    )


def complex_poly_from_laurent(f: LaurentPoly) -> ComplexPoly:
    """View a constant-coefficient Laurent polynomial over the complex scalars."""
    out: dict[Pt, QQi] = {}
    for a, c in f.coefficients.items():
        if valuation(c) != 0 or len(c.terms) != 1:
            raise SupportMismatch("polynomial has non-constant coefficients")
        out[a] = c.leading_coefficient
    return ComplexPoly(out)
