"""Counting tropical curves through point configurations.

Two independent strategies compute the same Severi degree.  The geometric
one searches for weight vectors whose dual curve passes through every
configuration point: each point ties the values at the two endpoints of the
dual subdivision edge it lies on, so solutions are found by a depth-first
search over endpoint pairs with exact deductive pruning, followed by linear
solving and full certification (simple, nodal, maximal rank, points on
distinct edges in their relative interiors).  The combinatorial one runs the
classical increasing-path recursion with corner-cut and reflection moves and
never looks at the points at all; agreement of the two totals is enforced.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    ConfigDegenerate,
    InternalInvariantError,
    PreconditionError,
    SchemaError,
)
from .lattice import (
    LatticePolygon,
    Pt,
    Segment,
    cross,
    enumerate_parallelograms,
    sub,
)
from .severi import SeveriSpec, mikhalkin_multiplicity, severi_dimension
from .subdivision import (
    Subdivision,
    WeightFunction,
    affine_dimension,
    as_value_map,
    classify,
    upper_hull_planes,
)

RatPoint = tuple[Fraction, Fraction]


class Strategy(str, enum.Enum):
    SUBDIVISION = "subdivision"
    PATH = "path"
    BOTH = "both"


@dataclass(frozen=True)
class PointConfiguration:
    points: tuple[RatPoint, ...]
    seed: int
    stretched: bool

    def __post_init__(self):
        pts = tuple((Fraction(x), Fraction(y)) for x, y in self.points)
        if len(set(pts)) != len(pts):
            raise SchemaError("configuration points must be pairwise distinct")
        object.__setattr__(self, "points", pts)


_STRETCH_BASE = 47


def stretched_config(r: int, seed: int) -> PointConfiguration:
    """Deterministic exponentially stretched points: x creeps, y explodes.

    Genericity is not assumed from the construction; the counting routines
    certify it a posteriori and raise ConfigDegenerate when it fails.
    """
    if r < 1:
        raise PreconditionError("need at least one point")
    import random

    rng = random.Random(seed)
    s = 2 * rng.randrange(3, 16) + 1
    points = []
    for i in range(1, r + 1):
        x = s * i + rng.randrange(0, s)
        y = s * _STRETCH_BASE**i
        points.append((Fraction(x), Fraction(y)))
    return PointConfiguration(tuple(points), seed=seed, stretched=True)


def hyperplane_trop_contains(polygon: LatticePolygon, omega, q: Sequence) -> bool:
    """Whether q lies on the tropicalized point-condition hyperplane.

    The corner locus of x -> max(x_a + q . a) contains omega exactly when the
    maximum ties, which must agree with the dual curve passing through q.
    """
    values = as_value_map(polygon, omega)
    qx, qy = Fraction(q[0]), Fraction(q[1])
    best: Fraction | None = None
    ties = 0
    for a in polygon.lattice_points:
        v = values[a] + qx * a[0] + qy * a[1]
        if best is None or v > best:
            best, ties = v, 1
        elif v == best:
            ties += 1
    return ties >= 2


@dataclass(frozen=True)
class CountedSolution:
    omega: WeightFunction
    subdivision: Subdivision
    point_to_edge: tuple[Segment, ...]
    mu: int


@dataclass(frozen=True)
class SeveriDegreeReport:
    spec: SeveriSpec
    configuration: PointConfiguration
    solutions: tuple[CountedSolution, ...]
    degree: int
    strategy: Strategy
    degrees: tuple[tuple[str, int], ...]


# ---------------------------------------------------------------------------
# Geometric strategy: dual search


class _Dsu:
    """Union-find with value offsets and rollback, no path compression."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.offset = [0] * n  # value(i) - value(parent(i))
        self.size = [1] * n
        self.members: list[list[int]] = [[i] for i in range(n)]
        self.trail: list[tuple[int, int]] = []

    def find(self, i: int) -> tuple[int, int]:
        off = 0
        while self.parent[i] != i:
            off += self.offset[i]
            i = self.parent[i]
        return i, off

    def union(self, i: int, j: int, diff: int):
        """Impose value(i) - value(j) == diff.

        Returns None on conflict, False if already implied, or the pair of
        roots (absorbed, kept) when a merge happened.
        """
        ri, oi = self.find(i)
        rj, oj = self.find(j)
        if ri == rj:
            return False if oi - oj == diff else None
        if self.size[ri] > self.size[rj]:
            ri, rj = rj, ri
            oi, oj = oj, oi
            diff = -diff
        # attach ri below rj: value(ri) - value(rj) = diff - oi + oj
        self.parent[ri] = rj
        self.offset[ri] = diff - oi + oj
        self.size[rj] += self.size[ri]
        self.members[rj].extend(self.members[ri])
        self.trail.append((ri, rj))
        return ri, rj

    def rollback(self, mark: int) -> None:
        while len(self.trail) > mark:
            ri, rj = self.trail.pop()
            self.size[rj] -= self.size[ri]
            del self.members[rj][-len(self.members[ri]):]
            self.parent[ri] = ri
            self.offset[ri] = 0

    def mark(self) -> int:
        return len(self.trail)


def _scale_points(points: Sequence[RatPoint]) -> tuple[list[tuple[int, int]], int]:
    denom = 1
    for x, y in points:
        denom = lcm(denom, Fraction(x).denominator, Fraction(y).denominator)
    scaled = [(int(Fraction(x) * denom), int(Fraction(y) * denom)) for x, y in points]
    return scaled, denom


class _DualSearch:
    """Exhaustive search for curves through the points, one polygon at a time.

    Points are processed from the top of the configuration down.  A branch
    assigns each point a tied pair of lattice points; branches die on exact
    deductions only (pairwise order constraints between tied pairs, offset
    conflicts, and maximality violations inside connected components), so no
    genuine solution is ever discarded before certification.
    """

    def __init__(
        self,
        polygon: LatticePolygon,
        delta: int,
        points: Sequence[RatPoint],
        first_pairs: Sequence[tuple[int, int]] | None = None,
    ):
        self.polygon = polygon
        self.delta = delta
        self.first_pairs = first_pairs
        self.pts: list[Pt] = list(polygon.lattice_points)
        self.n = len(self.pts)
        self.r = self.n - delta - 1
        if len(points) != self.r:
            raise PreconditionError(
                f"need {self.r} points for delta={delta}, got {len(points)}"
            )
        scaled, self.scale = _scale_points(points)
        order = sorted(range(self.r), key=lambda k: (-scaled[k][1], -scaled[k][0]))
        self.order = order  # processing step -> original point index
        self.qs = [scaled[k] for k in order]
        self.pairs = [
            (i, j) for i in range(self.n) for j in range(i + 1, self.n)
        ]
        # dot[t][i] = pts[i] . q_t
        self.dot = [
            [p[0] * q[0] + p[1] * q[1] for p in self.pts] for q in self.qs
        ]
        # ge[t][s][x] = bitmask over y of (pts[x] - pts[y]) . (q_t - q_s) >= 0
        self.ge: dict[tuple[int, int], list[int]] = {}
        for t in range(self.r):
            for s in range(t + 1, self.r):
                dq = (self.qs[t][0] - self.qs[s][0], self.qs[t][1] - self.qs[s][1])
                dots = [p[0] * dq[0] + p[1] * dq[1] for p in self.pts]
                table = []
                for x in range(self.n):
                    mask = 0
                    for y in range(self.n):
                        if dots[x] - dots[y] >= 0:
                            mask |= 1 << y
                    table.append(mask)
                self.ge[(t, s)] = table
        self.interior = {
            i for i, p in enumerate(self.pts) if p in set(polygon.interior_points)
        }
        self._closures = self._closure_candidates()
        self.dsu = _Dsu(self.n)
        self.placed: list[tuple[int, int, int]] = []  # (step, a, b)
        self.solutions: dict[tuple, CountedSolution] = {}
        self.degenerate: list[str] = []
        self._seen_value_sets: set[tuple] = set()

    # -- closure relations: rows over all n value variables, rhs 0
    def _closure_candidates(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """(indices, coefficients) pairs expressing hull flatness relations.

        Collinear interpolation pins a point on a longer edge; parallelogram
        relations pin the fourth corner of an affine face.  Coefficients are
        integer after clearing the interpolation denominator.
        """
        out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
        index_of = {p: i for i, p in enumerate(self.pts)}
        for i, u in enumerate(self.pts):
            for j in range(i + 1, self.n):
                w = self.pts[j]
                seg_pts = Segment(u, w).lattice_points()
                if len(seg_pts) < 3:
                    continue
                total = len(seg_pts) - 1
                for k, v in enumerate(seg_pts[1:-1], start=1):
                    vi = index_of[v]
                    # total * value(v) = (total - k) * value(u) + k * value(w)
                    out.append(((vi, i, j), (total, -(total - k), -k)))
        for quad in enumerate_parallelograms(self.pts):
            ids = tuple(index_of[p] for p in quad)
            out.append((ids, (1, -1, 1, -1)))
        return out

    # -- pruning helpers
    def _sandwich_ok(self, step: int, a: int, b: int) -> bool:
        for t, c, d in self.placed:
            table = self.ge[(t, step)]
            bit_a, bit_b = 1 << a, 1 << b
            if not (table[c] & bit_a and table[c] & bit_b
                    and table[d] & bit_a and table[d] & bit_b):
                return False
        return True

    def _component_checks(self, touched: Iterable[int]) -> bool:
        """Maximality inside components touching the given indices.

        For a placed point with tie anchor c, every lattice point m whose
        value offset against c is already determined must satisfy
        value(m) + m.q <= value(c) + c.q, or no completion can be a curve
        through that point.
        """
        roots = set()
        for i in touched:
            roots.add(self.dsu.find(i)[0])
        for t, c, _d in self.placed:
            rc, oc = self.dsu.find(c)
            if rc not in roots:
                continue
            dt = self.dot[t]
            for m in self.dsu.members[rc]:
                _, om = self.dsu.find(m)
                if om - oc > dt[c] - dt[m]:
                    return False
        return True

    def run(self) -> list[CountedSolution]:
        self._dfs(0)
        if self.degenerate:
            raise ConfigDegenerate("; ".join(sorted(set(self.degenerate))))
        return [self.solutions[k] for k in sorted(self.solutions)]

    def _dfs(self, step: int) -> None:
        if step == self.r:
            self._endgame()
            return
        pool = self.pairs if step > 0 or self.first_pairs is None else self.first_pairs
        for a, b in pool:
            if not self._sandwich_ok(step, a, b):
                continue
            diff = self.dot[step][b] - self.dot[step][a]  # value(a) - value(b)
            mark = self.dsu.mark()
            merged = self.dsu.union(a, b, diff)
            if merged is None:
                continue
            self.placed.append((step, a, b))
            if self._component_checks((a, b)):
                self._dfs(step + 1)
            self.placed.pop()
            self.dsu.rollback(mark)

    # -- endgame: solve, complete, certify
    def _endgame(self) -> None:
        tie_rows = []
        tied: set[int] = set()
        for t, a, b in self.placed:
            # value(a) - value(b) = dot[t][b] - dot[t][a]
            tie_rows.append(((a, b), (1, -1), self.dot[t][b] - self.dot[t][a]))
            tied.update((a, b))
        untied_interior = sorted(self.interior - tied)
        if len(untied_interior) > 6:
            raise PreconditionError("too many interior points for this search")
        for mask in range(1 << len(untied_interior)):
            dropped = {untied_interior[k] for k in range(len(untied_interior)) if mask >> k & 1}
            active = [i for i in range(self.n) if i not in dropped]
            rref = _Rref(active)
            ok = True
            for ids, coeffs, rhs in tie_rows:
                if not rref.add(ids, coeffs, rhs):
                    ok = False
                    break
            if not ok:
                continue
            candidates = [
                (ids, coeffs, 0)
                for ids, coeffs in self._closures
                if all(i not in dropped for i in ids)
            ]
            self._complete(rref, candidates, dropped)

    def _complete(self, rref: "_Rref", candidates, dropped: set[int]) -> None:
        deficit = rref.dimension()
        if deficit == 0:
            values = rref.solve()
            if self._maximality_precheck(values):
                self._certify(values, dropped)
            return
        if deficit > self.delta:
            return
        # every completion must pin the first still-free column, so only
        # candidates with a nonzero residual there can lead anywhere
        col = rref.first_free_column()
        for ids, coeffs, rhs in candidates:
            residual = rref.reduce_only(ids, coeffs, rhs)
            if residual is None or residual[col] == 0:
                continue
            child = rref.copy()
            child.insert_reduced(residual)
            self._complete(child, candidates, dropped)

    def _maximality_precheck(self, values: dict[int, Fraction]) -> bool:
        """Every tie must attain the maximum among the solved active values.

        Sound and cheap: points below the hull can never exceed a bound that
        all active values respect, so failing ties reject the branch before
        any hull is built.
        """
        for t, a, _b in self.placed:
            dt = self.dot[t]
            bound = values[a] + dt[a]
            for i, v in values.items():
                if v + dt[i] > bound:
                    return False
        return True

    def _certify(self, values: dict[int, Fraction], dropped: set[int]) -> None:
        marker = tuple(sorted(values.items()))
        if marker in self._seen_value_sets:
            return
        self._seen_value_sets.add(marker)
        # the concave hull of the active values, as a function, already is the
        # hull of the full value set once dropped points take the hull value,
        # so one hull computation covers both the values and the subdivision
        active_vals = {self.pts[i]: v for i, v in values.items()}
        planes = upper_hull_planes(active_vals)
        omega: dict[Pt, Fraction] = {
            p: min(pl.value_at(p) for pl in planes) for p in self.pts
        }
        s = Subdivision(self.polygon, [LatticePolygon(pl.tight) for pl in planes])
        flags = classify(s)
        if not (flags.simple and flags.nodal):
            return
        # maximal rank, by the nodal formula and by the affineness system
        if len(s.vertices) - 1 - len(s.parallelograms) != self.r:
            return
        if affine_dimension(s) - 1 != self.r:
            return
        # incidence: every point's argmax must be the lattice point set of an
        # edge containing its tied pair, all edges distinct
        edge_pts = {}
        for e in s.edges:
            edge_pts[frozenset(e.segment.lattice_points())] = e.segment
        assigned: dict[int, Segment] = {}
        suspicious = False
        for t, a, b in self.placed:
            dt = self.dot[t]
            best = None
            argmax: list[int] = []
            for i, p in enumerate(self.pts):
                v = omega[p] + dt[i]
                if best is None or v > best:
                    best, argmax = v, [i]
                elif v == best:
                    argmax.append(i)
            if a not in argmax or b not in argmax:
                return  # tie is below the hull: not a curve through this point
            key = frozenset(self.pts[i] for i in argmax)
            seg = edge_pts.get(key)
            if seg is None:
                suspicious = True  # point sits at a curve vertex
                continue
            assigned[t] = seg
        if suspicious:
            self.degenerate.append("a configuration point lies at a curve vertex")
            return
        if len(set(s.key() for s in assigned.values())) != self.r:
            self.degenerate.append("two configuration points share a curve edge")
            return
        anchor = self.pts[0]
        key = tuple(omega[p] - omega[anchor] for p in self.pts)
        if key in self.solutions:
            return
        scale = self.scale
        omega_true = WeightFunction(
            self.polygon, {p: (omega[p] - omega[anchor]) / scale for p in self.pts}
        )
        point_to_edge = tuple(
            assigned[self.order.index(k)] for k in range(self.r)
        )
        self.solutions[key] = CountedSolution(
            omega=omega_true,
            subdivision=s,
            point_to_edge=point_to_edge,
            mu=mikhalkin_multiplicity(s),
        )


class _Rref:
    """Incremental reduced row echelon form over the rationals.

    Variables are the active indices; one extra pinned row fixes the first
    active variable to zero so solutions are unique modulo constants.
    """

    def __init__(self, active: Sequence[int], _copy=None):
        if _copy is not None:
            self.cols, self.pos, self.rows, self.pivots = _copy
            self.rows = [row[:] for row in self.rows]
            self.pivots = list(self.pivots)
            return
        self.cols = list(active)
        self.pos = {v: k for k, v in enumerate(self.cols)}
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        first = [Fraction(0)] * (len(self.cols) + 1)
        first[0] = Fraction(1)
        self._insert(first)

    def copy(self) -> "_Rref":
        return _Rref((), _copy=(self.cols, self.pos, self.rows, self.pivots))

    def dimension(self) -> int:
        return len(self.cols) - len(self.rows)

    def add(self, ids: Sequence[int], coeffs: Sequence[int], rhs) -> bool:
        """Reduce and insert a row; False exactly when it is inconsistent."""
        row = self._build(ids, coeffs, rhs)
        row = self._reduce(row)
        lead = next((k for k in range(len(self.cols)) if row[k] != 0), None)
        if lead is None:
            return row[-1] == 0
        self._insert(row)
        return True

    def _build(self, ids: Sequence[int], coeffs: Sequence[int], rhs) -> list[Fraction]:
        row = [Fraction(0)] * (len(self.cols) + 1)
        for i, c in zip(ids, coeffs):
            row[self.pos[i]] += Fraction(c)
        row[-1] = Fraction(rhs)
        return row

    def first_free_column(self) -> int:
        pivot_set = set(self.pivots)
        return next(k for k in range(len(self.cols)) if k not in pivot_set)

    def reduce_only(self, ids: Sequence[int], coeffs: Sequence[int], rhs):
        """Residual of a row against the current system; None if it vanishes.

        A nonzero constant residual (an inconsistent row) also returns None:
        such a row can never be part of a completion.
        """
        row = self._reduce(self._build(ids, coeffs, rhs))
        if all(row[k] == 0 for k in range(len(self.cols))):
            return None
        return row

    def insert_reduced(self, row: list[Fraction]) -> None:
        self._insert(row)

    def _reduce(self, row: list[Fraction]) -> list[Fraction]:
        for r, p in zip(self.rows, self.pivots):
            f = row[p]
            if f != 0:
                for k in range(p, len(row)):
                    row[k] -= f * r[k]
        return row

    def _insert(self, row: list[Fraction]) -> None:
        lead = next(k for k in range(len(self.cols)) if row[k] != 0)
        inv = row[lead]
        row = [x / inv for x in row]
        for r in self.rows:
            f = r[lead]
            if f != 0:
                for k in range(lead, len(row)):
                    r[k] -= f * row[k]
        at = next((i for i, p in enumerate(self.pivots) if p > lead), len(self.pivots))
        self.rows.insert(at, row)
        self.pivots.insert(at, lead)

    def solve(self) -> dict[int, Fraction]:
        if self.dimension() != 0:
            raise InternalInvariantError("solve called on underdetermined system")
        out: dict[int, Fraction] = {}
        for r, p in zip(self.rows, self.pivots):
            out[self.cols[p]] = r[-1]
        return out


def _solve_by_subdivisions(
    polygon: LatticePolygon, delta: int, points: Sequence[RatPoint]
) -> list[CountedSolution]:
    return _DualSearch(polygon, delta, points).run()


# ---------------------------------------------------------------------------
# Combinatorial strategy: increasing paths


def _lambda_key(polygon: LatticePolygon):
    ys = [p[1] for p in polygon.lattice_points]
    spread = max(ys) - min(ys) + 1

    def key(p: Pt) -> int:
        return p[0] * (2 * spread) + p[1]

    return key


def _boundary_chains(polygon: LatticePolygon, key) -> tuple[tuple[Pt, ...], tuple[Pt, ...]]:
    cycle: list[Pt] = []
    for seg in polygon.edges():
        cycle.extend(seg.lattice_points()[:-1])
    lo = min(range(len(cycle)), key=lambda i: key(cycle[i]))
    hi = min(range(len(cycle)), key=lambda i: -key(cycle[i]))
    chain_a: list[Pt] = []
    i = lo
    while True:
        chain_a.append(cycle[i])
        if i == hi:
            break
        i = (i + 1) % len(cycle)
    chain_b = []
    i = lo
    while True:
        chain_b.append(cycle[i])
        if i == hi:
            break
        i = (i - 1) % len(cycle)
    return tuple(chain_a), tuple(chain_b)


def _path_multiplicity(
    path: tuple[Pt, ...],
    chain: tuple[Pt, ...],
    turn_sign: int,
    polygon: LatticePolygon,
    memo: dict,
) -> int:
    """Recursive one-sided path multiplicity via corner cuts and reflections."""
    if path == chain:
        return 1
    cached = memo.get(path)
    if cached is not None:
        return cached
    total = 0
    for k in range(1, len(path) - 1):
        u, v, w = path[k - 1], path[k], path[k + 1]
        turn = cross(sub(v, u), sub(w, v))
        if turn == 0 or (turn > 0) != (turn_sign > 0):
            continue
        tri = abs(cross(sub(v, u), sub(w, u)))
        total += tri * _path_multiplicity(
            path[:k] + path[k + 1 :], chain, turn_sign, polygon, memo
        )
        reflected = (u[0] + w[0] - v[0], u[1] + w[1] - v[1])
        if polygon.contains(reflected) and reflected not in (u, w):
            total += _path_multiplicity(
                path[:k] + (reflected,) + path[k + 1 :], chain, turn_sign, polygon, memo
            )
        break  # compress at the first eligible corner only
    memo[path] = total
    return total


def _count_by_paths(polygon: LatticePolygon, delta: int) -> int:
    key = _lambda_key(polygon)
    pts = sorted(polygon.lattice_points, key=key)
    r = len(pts) - delta - 1
    chain_a, chain_b = _boundary_chains(polygon, key)
    start, end = pts[0], pts[-1]
    middles = pts[1:-1]
    total = 0
    memo_a: dict = {}
    memo_b: dict = {}
    from itertools import combinations

    for chosen in combinations(range(len(middles)), r - 1):
        path = (start,) + tuple(middles[i] for i in chosen) + (end,)
        # corners poking away from a chain (peaks, for the chain the polygon
        # lies above) are the ones compressible toward it
        mu_a = _path_multiplicity(path, chain_a, -1, polygon, memo_a)
        if mu_a == 0:
            continue
        mu_b = _path_multiplicity(path, chain_b, +1, polygon, memo_b)
        total += mu_a * mu_b
    return total


# ---------------------------------------------------------------------------
# Orchestration


def count_through_points(
    spec: SeveriSpec,
    config: PointConfiguration,
    strategy: Strategy = Strategy.BOTH,
    jobs: int = 1,
) -> SeveriDegreeReport:
    """Severi degree report for a polygon, node count and point configuration.

    Runs the requested strategies; when both run their totals must agree.
    Raises ConfigDegenerate when the a-posteriori genericity certificates
    fail, in which case the caller should reseed.
    """
    r = severi_dimension(spec)
    if len(config.points) != r:
        raise SchemaError(f"configuration must have {r} points, has {len(config.points)}")
    strategy = Strategy(strategy)
    degrees: list[tuple[str, int]] = []
    solutions: tuple[CountedSolution, ...] = ()
    if strategy in (Strategy.SUBDIVISION, Strategy.BOTH):
        if jobs > 1:
            sols = _solve_parallel(spec.polygon, spec.delta, config.points, jobs)
        else:
            sols = _solve_by_subdivisions(spec.polygon, spec.delta, config.points)
        solutions = tuple(sols)
        degrees.append((Strategy.SUBDIVISION.value, sum(s.mu for s in solutions)))
    if strategy in (Strategy.PATH, Strategy.BOTH):
        degrees.append((Strategy.PATH.value, _count_by_paths(spec.polygon, spec.delta)))
    values = {d for _, d in degrees}
    if len(values) != 1:
        raise InternalInvariantError(f"strategy totals disagree: {degrees}")
    return SeveriDegreeReport(
        spec=spec,
        configuration=config,
        solutions=solutions,
        degree=values.pop(),
        strategy=strategy,
        degrees=tuple(degrees),
    )


def independence_check(
    spec: SeveriSpec, seeds: Sequence[int], strategy: Strategy = Strategy.BOTH
) -> bool:
    """All seeds must give one and the same degree."""
    if len(seeds) < 2:
        raise PreconditionError("need at least two seeds")
    r = severi_dimension(spec)
    degrees = {
        count_through_points(spec, stretched_config(r, seed), strategy).degree
        for seed in seeds
    }
    return len(degrees) == 1


# ---------------------------------------------------------------------------
# Parallel driver: split the first point's pair choices across processes


def _worker(args):
    vertices, delta, points, chunk = args
    polygon = LatticePolygon(vertices)
    search = _DualSearch(
        polygon,
        delta,
        [(Fraction(x), Fraction(y)) for x, y in points],
        first_pairs=chunk,
    )
    search._dfs(0)
    return sorted(search.solutions.items()), sorted(set(search.degenerate))


def _solve_parallel(
    polygon: LatticePolygon, delta: int, points: Sequence[RatPoint], jobs: int
) -> list[CountedSolution]:
    from concurrent.futures import ProcessPoolExecutor

    probe = _DualSearch(polygon, delta, points)
    chunks: list[list[tuple[int, int]]] = [[] for _ in range(jobs)]
    for k, pair in enumerate(probe.pairs):
        chunks[k % jobs].append(pair)
    point_data = [(str(Fraction(x)), str(Fraction(y))) for x, y in points]
    args = [
        (polygon.vertices, delta, point_data, chunk) for chunk in chunks if chunk
    ]
    merged: dict[tuple, CountedSolution] = {}
    degenerate: list[str] = []
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for sols, degs in pool.map(_worker, args):
            degenerate.extend(degs)
            for key, solution in sols:
                merged.setdefault(key, solution)
    if degenerate:
        raise ConfigDegenerate("; ".join(sorted(set(degenerate))))
    return [merged[k] for k in sorted(merged)]
