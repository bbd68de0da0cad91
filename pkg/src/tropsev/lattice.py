"""Exact planar lattice geometry and integer linear algebra.

Everything here is computed over arbitrary-precision integers and
`fractions.Fraction`; no floating point enters any predicate.  This module
carries the primitives every higher layer leans on: lattice polygons with
their point counts, lattice lengths, Smith normal forms with recorded
unimodular transforms, and an exact linear-program feasibility test based on
Fourier-Motzkin elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DegenerateSegment, PreconditionError

Pt = tuple[int, int]
Vec2 = tuple[int, int]


def primitive(v: Vec2) -> Vec2:
    """Scale an integer vector down to its primitive representative."""
    if v == (0, 0):
        raise PreconditionError("zero vector has no primitive representative")
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def cross(u: Vec2, v: Vec2) -> int:
    return u[0] * v[1] - u[1] * v[0]


def sub(a: Pt, b: Pt) -> Vec2:
    return (a[0] - b[0], a[1] - b[1])


@dataclass(frozen=True)
class Segment:
    a: Pt
    b: Pt

    def __post_init__(self) -> None:
        if tuple(self.a) == tuple(self.b):
            raise DegenerateSegment(f"segment endpoints coincide: {self.a}")
        object.__setattr__(self, "a", (int(self.a[0]), int(self.a[1])))
        object.__setattr__(self, "b", (int(self.b[0]), int(self.b[1])))

    @property
    def direction(self) -> Vec2:
        return primitive(sub(self.b, self.a))

    def lattice_points(self) -> tuple[Pt, ...]:
        """All lattice points on the closed segment, endpoint to endpoint."""
        d = sub(self.b, self.a)
        n = gcd(abs(d[0]), abs(d[1]))
        sx, sy = d[0] // n, d[1] // n
        return tuple((self.a[0] + k * sx, self.a[1] + k * sy) for k in range(n + 1))

    def key(self) -> tuple[Pt, Pt]:
        """Unordered canonical endpoint pair."""
        return (self.a, self.b) if self.a <= self.b else (self.b, self.a)


def lattice_length(s: Segment) -> int:
    """Number of primitive steps along the segment: gcd(|dx|, |dy|)."""
    d = sub(s.b, s.a)
    return gcd(abs(d[0]), abs(d[1]))


def _convex_hull(points: Iterable[Pt]) -> list[Pt]:
    """Andrew monotone chain; returns CCW corners, collinear points dropped."""
    pts = sorted(set((int(p[0]), int(p[1])) for p in points))
    if len(pts) <= 2:
        return pts

    def half(iterable: Iterable[Pt]) -> list[Pt]:
        chain: list[Pt] = []
        for p in iterable:
            while len(chain) >= 2 and cross(sub(chain[-1], chain[-2]), sub(p, chain[-1])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


class LatticePolygon:
    """A two-dimensional convex lattice polygon.

    Vertices are normalized to counterclockwise order starting from the
    lexicographically least corner, so equality and hashing are structural.
    Lattice point sets are computed once and cached.
    """

    __slots__ = ("vertices", "_lattice_points", "_boundary", "_interior")

    def __init__(self, points: Iterable[Pt]):
        hull = _convex_hull(points)
        if len(hull) < 3:
            raise PreconditionError(f"polygon is not two-dimensional: {sorted(set(points))}")
        start = min(range(len(hull)), key=lambda i: hull[i])
        self.vertices: tuple[Pt, ...] = tuple(hull[start:] + hull[:start])
        self._lattice_points: tuple[Pt, ...] | None = None
        self._boundary: tuple[Pt, ...] | None = None
        self._interior: tuple[Pt, ...] | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LatticePolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return f"LatticePolygon({list(self.vertices)})"

    def edges(self) -> tuple[Segment, ...]:
        n = len(self.vertices)
        return tuple(Segment(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n))

    def contains(self, p: Pt) -> bool:
        """Closed containment test by exact half-plane evaluation."""
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if cross(sub(b, a), sub(p, a)) < 0:
                return False
        return True

    def strictly_contains(self, p: Pt) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if cross(sub(b, a), sub(p, a)) <= 0:
                return False
        return True

    def on_boundary(self, p: Pt) -> bool:
        return self.contains(p) and not self.strictly_contains(p)

    @property
    def lattice_points(self) -> tuple[Pt, ...]:
        if self._lattice_points is None:
            xs = [v[0] for v in self.vertices]
            ys = [v[1] for v in self.vertices]
            pts = [
                (x, y)
                for x in range(min(xs), max(xs) + 1)
                for y in range(min(ys), max(ys) + 1)
                if self.contains((x, y))
            ]
            self._lattice_points = tuple(sorted(pts))
        return self._lattice_points

    @property
    def boundary_points(self) -> tuple[Pt, ...]:
        if self._boundary is None:
            seen: set[Pt] = set()
            for e in self.edges():
                seen.update(e.lattice_points())
            self._boundary = tuple(sorted(seen))
        return self._boundary

    @property
    def interior_points(self) -> tuple[Pt, ...]:
        if self._interior is None:
            boundary = set(self.boundary_points)
            self._interior = tuple(p for p in self.lattice_points if p not in boundary)
        return self._interior


def twice_area(p: LatticePolygon) -> int:
    """Twice the Euclidean area by the shoelace sum, an exact integer."""
    verts = p.vertices
    total = 0
    for i in range(len(verts)):
        a, b = verts[i], verts[(i + 1) % len(verts)]
        total += a[0] * b[1] - b[0] * a[1]
    return abs(total)


def is_parallelogram(p: LatticePolygon) -> bool:
    """Quadrilateral whose opposite edge vectors agree exactly."""
    v = p.vertices
    if len(v) != 4:
        return False
    return sub(v[1], v[0]) == sub(v[2], v[3]) and sub(v[3], v[0]) == sub(v[2], v[1])


# ---------------------------------------------------------------------------
# Integer matrices


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix via fraction-free elimination."""
    n = len(matrix)
    m = [list(map(int, row)) for row in matrix]
    if any(len(row) != n for row in m):
        raise PreconditionError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithNormalForm:
    """Diagonal invariants together with the unimodular transforms.

    left @ matrix @ right equals the diagonal matrix, diagonal entries are
    nonnegative and each divides the next.
    """

    diagonal: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    shape: tuple[int, int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def product_of_invariants(self) -> int:
        """Product of the nonzero diagonal entries (1 for the zero matrix)."""
        out = 1
        for d in self.diagonal:
            if d != 0:
                out *= d
        return out


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithNormalForm:
    """Smith normal form over the integers with recorded transforms."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    m = [list(map(int, row)) for row in matrix]
    if any(len(row) != cols for row in m):
        raise PreconditionError("matrix is not rectangular")
    left = [[int(i == j) for j in range(rows)] for i in range(rows)]
    right = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i: int, j: int, q: int) -> None:  # row i -= q * row j
        for k in range(cols):
            m[i][k] -= q * m[j][k]
        for k in range(rows):
            left[i][k] -= q * left[j][k]

    def col_op(i: int, j: int, q: int) -> None:  # col i -= q * col j
        for k in range(rows):
            m[k][i] -= q * m[k][j]
        for k in range(cols):
            right[k][i] -= q * right[k][j]

    def swap_rows(i: int, j: int) -> None:
        m[i], m[j] = m[j], m[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(rows, cols):
        pivots = [
            (abs(m[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if m[i][j] != 0
        ]
        if not pivots:
            break
        _, pi, pj = min(pivots)
        swap_rows(t, pi)
        swap_cols(t, pj)
        reduced = False
        for i in range(t + 1, rows):
            if m[i][t] != 0:
                row_op(i, t, m[i][t] // m[t][t])
                reduced = reduced or m[i][t] != 0
        for j in range(t + 1, cols):
            if m[t][j] != 0:
                col_op(j, t, m[t][j] // m[t][t])
                reduced = reduced or m[t][j] != 0
        if reduced or any(m[i][t] for i in range(t + 1, rows)) or any(
            m[t][j] for j in range(t + 1, cols)
        ):
            continue  # remainder became the new, smaller pivot candidate
        # divisibility: fold any non-divisible entry into the pivot's row
        culprit = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            row_op(t, culprit, -1)
            continue
        if m[t][t] < 0:
            for k in range(cols):
                m[t][k] = -m[t][k]
            for k in range(rows):
                left[t][k] = -left[t][k]
        t += 1

    diag = tuple(m[i][i] for i in range(min(rows, cols)))
    return SmithNormalForm(
        diagonal=diag,
        left=tuple(tuple(r) for r in left),
        right=tuple(tuple(r) for r in right),
        shape=(rows, cols),
    )


# ---------------------------------------------------------------------------
# Exact linear programming (Fourier-Motzkin)

Row = tuple[tuple[Fraction, ...], Fraction]


def _as_fraction_row(coeffs: Sequence, rhs, n_vars: int) -> Row:
    c = tuple(Fraction(x) for x in coeffs)
    if len(c) != n_vars:
        raise PreconditionError(f"constraint has {len(c)} coefficients, expected {n_vars}")
    return c, Fraction(rhs)


def _normalize(coeffs: tuple[Fraction, ...], rhs: Fraction) -> tuple[tuple[int, ...], Fraction] | None:
    """Scale so the coefficient vector is primitive integer; None if zero."""
    denom = 1
    for x in coeffs:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in coeffs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    scale = Fraction(denom, g)
    return tuple(x // g for x in ints), rhs * scale


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    witness: tuple[Fraction, ...] | None


def rational_lp_feasible(
    n_vars: int,
    equalities: Iterable[tuple[Sequence, object]] = (),
    strict: Iterable[tuple[Sequence, object]] = (),
    nonstrict: Iterable[tuple[Sequence, object]] = (),
) -> LPResult:
    """Exact feasibility of {Ax = b, Cx > d, Ex >= f} over the rationals.

    Equalities are removed first by Gaussian substitution, then the strict and
    non-strict inequalities go through Fourier-Motzkin elimination.  When the
    system is feasible a rational witness is reconstructed by back
    substitution.
    """
    eqs = [_as_fraction_row(c, r, n_vars) for c, r in equalities]
    ineqs: list[tuple[tuple[Fraction, ...], Fraction, bool]] = []
    for c, r in strict:
        row = _as_fraction_row(c, r, n_vars)
        ineqs.append((row[0], row[1], True))
    for c, r in nonstrict:
        row = _as_fraction_row(c, r, n_vars)
        ineqs.append((row[0], row[1], False))

    # Stage 1: eliminate equalities.  substitutions[j] = (coeffs, rhs) with
    # x_j = rhs - sum(coeffs_k x_k) over k != j, applied in recorded order.
    substitutions: list[tuple[int, tuple[Fraction, ...], Fraction]] = []
    active = list(range(n_vars))
    work = list(eqs)
    while work:
        coeffs, rhs = work.pop()
        pivot = next((j for j in active if coeffs[j] != 0), None)
        if pivot is None:
            if rhs != 0:
                return LPResult(False, None)
            continue
        scale = coeffs[pivot]
        expr = tuple(-coeffs[j] / scale if j != pivot else Fraction(0) for j in range(n_vars))
        const = rhs / scale
        substitutions.append((pivot, expr, const))
        active.remove(pivot)

        def substitute(row: tuple[Fraction, ...], r: Fraction) -> tuple[tuple[Fraction, ...], Fraction]:
            f = row[pivot]
            if f == 0:
                return row, r
            new = tuple(row[j] + f * expr[j] if j != pivot else Fraction(0) for j in range(n_vars))
            return new, r - f * const

        work = [substitute(c, r) for c, r in work]
        ineqs = [substitute(c, r) + (s,) for c, r, s in ineqs]

    # Stage 2: Fourier-Motzkin on the remaining variables, recording each
    # stage so a witness can be rebuilt.
    def dedupe(rows: list[tuple[tuple[Fraction, ...], Fraction, bool]]):
        best: dict[tuple[tuple[int, ...], bool], Fraction] = {}
        for coeffs, rhs, is_strict in rows:
            norm = _normalize(coeffs, rhs)
            if norm is None:
                if rhs > 0 or (is_strict and rhs == 0):
                    return None  # 0 > positive or 0 > 0: infeasible row
                continue
            key = (norm[0], is_strict)
            if key not in best or norm[1] > best[key]:
                best[key] = norm[1]
        return [
            (tuple(Fraction(x) for x in coeffs), rhs, is_strict)
            for (coeffs, is_strict), rhs in best.items()
        ]

    stages: list[tuple[int, list[tuple[tuple[Fraction, ...], Fraction, bool]]]] = []
    current = dedupe(ineqs)
    if current is None:
        return LPResult(False, None)
    order = list(active)
    for var in order:
        relevant = [row for row in current if row[0][var] != 0]
        rest = [row for row in current if row[0][var] == 0]
        stages.append((var, relevant))
        lowers = [row for row in relevant if row[0][var] > 0]
        uppers = [row for row in relevant if row[0][var] < 0]
        combined = list(rest)
        for lc, lr, ls in lowers:
            for uc, ur, us in uppers:
                # (lc . x) >= lr gives a lower bound, (uc . x) >= ur an upper
                a, b = lc[var], -uc[var]
                coeffs = tuple(b * lc[j] + a * uc[j] for j in range(n_vars))
                combined.append((coeffs, b * lr + a * ur, ls or us))
        current = dedupe(combined)
        if current is None:
            return LPResult(False, None)

    # Feasible: rebuild a witness in reverse order.
    values: list[Fraction | None] = [None] * n_vars
    for var, rows in reversed(stages):
        lo: Fraction | None = None
        lo_strict = False
        hi: Fraction | None = None
        hi_strict = False
        for coeffs, rhs, is_strict in rows:
            acc = rhs
            for j in range(n_vars):
                if j != var and coeffs[j] != 0:
                    acc -= coeffs[j] * values[j]  # type: ignore[operator]
            bound = acc / coeffs[var]
            if coeffs[var] > 0:
                if lo is None or bound > lo or (bound == lo and is_strict):
                    lo, lo_strict = bound, is_strict
            else:
                if hi is None or bound < hi or (bound == hi and is_strict):
                    hi, hi_strict = bound, is_strict
        if lo is None and hi is None:
            values[var] = Fraction(0)
        elif lo is None:
            values[var] = hi - 1 if hi_strict else hi  # type: ignore[operator]
        elif hi is None:
            values[var] = lo + 1 if lo_strict else lo
        elif lo == hi:
            values[var] = lo
        else:
            values[var] = (lo + hi) / 2
    for pivot, expr, const in reversed(substitutions):
        acc = const
        for j in range(n_vars):
            if expr[j] != 0:
                acc += expr[j] * values[j]  # type: ignore[operator]
        values[pivot] = acc
    witness = tuple(v if v is not None else Fraction(0) for v in values)
    return LPResult(True, witness)


def evaluate_constraints(
    witness: Sequence[Fraction],
    equalities: Iterable[tuple[Sequence, object]] = (),
    strict: Iterable[tuple[Sequence, object]] = (),
    nonstrict: Iterable[tuple[Sequence, object]] = (),
) -> bool:
    """Check a candidate point against the same constraint format."""
    def dot(c: Sequence) -> Fraction:
        return sum((Fraction(ci) * wi for ci, wi in zip(c, witness)), Fraction(0))

    return (
        all(dot(c) == Fraction(r) for c, r in equalities)
        and all(dot(c) > Fraction(r) for c, r in strict)
        and all(dot(c) >= Fraction(r) for c, r in nonstrict)
    )


def enumerate_parallelograms(points: Sequence[Pt]) -> list[tuple[Pt, Pt, Pt, Pt]]:
    """All 4-subsets of the given points forming a nondegenerate parallelogram.

    Returned as (p0, p1, p2, p3) in cyclic order, so p0 + p2 == p1 + p3.
    """
    out = []
    for quad in combinations(sorted(points), 4):
        for perm in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
            p0, p1, p2, p3 = (quad[i] for i in perm)
            if (
                (p0[0] + p2[0], p0[1] + p2[1]) == (p1[0] + p3[0], p1[1] + p3[1])
                and cross(sub(p1, p0), sub(p3, p0)) != 0
            ):
                out.append((p0, p1, p2, p3))
                break
    return out
