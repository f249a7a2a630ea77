"""Incidence graphs between Cartesian-product point sets and curve families."""

from __future__ import annotations

import bisect
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ComplexityGuard, DuplicateLabel, DuplicatePoint, InvariantViolation, ZeroPolynomial
from .exact import GaussianRational, gaussian_sqrt, gr
from .poly import BivariatePoly, UnivariatePoly

DEFAULT_KST_CAP = 10**8


def _sorted_unique(values: Iterable, name: str) -> tuple[GaussianRational, ...]:
    vals = [gr(v) for v in values]
    seen: dict[GaussianRational, int] = {}
    for idx, v in enumerate(vals):
        if v in seen:
            raise DuplicatePoint(f"{name}[{idx}] duplicates {name}[{seen[v]}]: {v}")
        seen[v] = idx
    return tuple(sorted(vals, key=GaussianRational.sort_key))


@dataclass(frozen=True)
class CartesianPointSet:
    """P = A x B.  Points are addressed by index pairs (iA, iB)."""

    A: tuple[GaussianRational, ...]
    B: tuple[GaussianRational, ...]

    def __init__(self, A: Iterable, B: Iterable):
        object.__setattr__(self, "A", _sorted_unique(A, "A"))
        object.__setattr__(self, "B", _sorted_unique(B, "B"))

    def __len__(self) -> int:
        return len(self.A) * len(self.B)

    def point(self, ia: int, ib: int) -> tuple[GaussianRational, GaussianRational]:
        return self.A[ia], self.B[ib]

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.A) and all(v.is_real() for v in self.B)


@dataclass(frozen=True)
class CurveFamily:
    curves: tuple[tuple[str, BivariatePoly], ...]

    def __init__(self, curves: Iterable[tuple[str, BivariatePoly]] = ()):
        items = tuple((str(label), f) for label, f in curves)
        seen = set()
        for label, f in items:
            if label in seen:
                raise DuplicateLabel(f"curve label {label!r} is used twice")
            seen.add(label)
            if f.is_zero():
                raise ZeroPolynomial(f"curve {label!r} is the zero polynomial")
        object.__setattr__(self, "curves", items)

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    @property
    def labels(self) -> list[str]:
        return [label for label, _ in self.curves]

    @property
    def max_degree(self) -> int:
        return max((f.degree for _, f in self.curves), default=0)


Point = tuple[int, int]


@dataclass
class IncidenceGraph:
    """Bipartite point/curve incidence graph.

    ``edges`` holds ``(curve_index, iA, iB)`` triples ordered by curve label,
    then iA, then iB.  Curve indices refer to positions in ``family``.
    """

    points: CartesianPointSet
    family: CurveFamily
    edges: list[tuple[int, int, int]]
    by_curve: dict[int, list[Point]] = field(default_factory=dict)
    by_point: dict[Point, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.by_curve and self.edges:
            by_curve: dict[int, list[Point]] = defaultdict(list)
            by_point: dict[Point, list[int]] = defaultdict(list)
            for c, ia, ib in self.edges:
                by_curve[c].append((ia, ib))
                by_point[(ia, ib)].append(c)
            for lst in by_point.values():
                lst.sort()
            self.by_curve = dict(by_curve)
            self.by_point = dict(by_point)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def count(self) -> int:
        return len(self.edges)

    def curve_incidences(self, label: str) -> list[Point]:
        return self.by_curve.get(self.family.labels.index(label), [])

    def max_pair_multiplicity(self) -> int:
        """Largest number of curves through two distinct points (0 if none)."""
        pairs: Counter = Counter()
        for pts in self.by_curve.values():
            for a in range(len(pts)):
                for b in range(a + 1, len(pts)):
                    pairs[(pts[a], pts[b])] += 1
        return max(pairs.values(), default=0)

    def rows(self) -> list[tuple[str, int, int, str, str]]:
        """CSV rows ``label, iA, iB, a, b``."""
        labels = self.family.labels
        A, B = self.points.A, self.points.B
        return [(labels[c], ia, ib, str(A[ia]), str(B[ib])) for c, ia, ib in self.edges]


def _fiber_roots(fiber: UnivariatePoly, b_index: dict, B: Sequence[GaussianRational]) -> list[int]:
    """Indices of B that are roots of ``fiber`` (a polynomial in y)."""
    d = fiber.degree
    if d < 0:
        return list(range(len(B)))
    if d == 0:
        return []
    if d == 1:
        c0, c1 = fiber.coeffs
        ib = b_index.get(-c0 / c1)
        return [] if ib is None else [ib]
    if d == 2:
        c0, c1, c2 = fiber.coeffs
        s = gaussian_sqrt(c1 * c1 - 4 * c0 * c2)
        if s is None:
            return []
        two_a = 2 * c2
        found = {b_index.get((-c1 + s) / two_a), b_index.get((-c1 - s) / two_a)}
        found.discard(None)
        return sorted(found)
    return [ib for ib, b in enumerate(B) if not fiber(b)]


def curve_incidences(f: BivariatePoly, points: CartesianPointSet) -> list[Point]:
    """All (iA, iB) with f(A[iA], B[iB]) = 0, in index order.

    Each vertical fiber f(a, y) is solved exactly (directly up to degree two,
    by evaluation beyond) and its roots are looked up in B.
    """
    b_index = {b: ib for ib, b in enumerate(points.B)}
    col_polys = f.coeffs_in_y()
    out: list[Point] = []
    for ia, a in enumerate(points.A):
        fiber = UnivariatePoly._raw([F(a) for F in col_polys])
        out.extend((ia, ib) for ib in _fiber_roots(fiber, b_index, points.B))
    return out


def build_incidence_graph(points: CartesianPointSet, family: CurveFamily) -> IncidenceGraph:
    order = sorted(range(len(family)), key=lambda c: family.curves[c][0])
    edges: list[tuple[int, int, int]] = []
    by_curve: dict[int, list[Point]] = {}
    by_point: dict[Point, list[int]] = defaultdict(list)
    for c in order:
        pts = curve_incidences(family.curves[c][1], points)
        if pts:
            by_curve[c] = pts
        for p in pts:
            edges.append((c, p[0], p[1]))
            by_point[p].append(c)
    for lst in by_point.values():
        lst.sort()
    return IncidenceGraph(points, family, edges, by_curve, dict(by_point))


# ---------------------------------------------------------------------------
# K_{s,t} detection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KstResult:
    """Outcome of a K_{s,t} search.  ``witness_points`` / ``witness_curves``
    are empty when the graph passed."""

    passed: bool
    s: int
    t: int
    witness_points: tuple[Point, ...] = ()
    witness_curves: tuple[str, ...] = ()
    tests: int = 0

    def __bool__(self) -> bool:
        return self.passed


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.used > self.cap:
            raise ComplexityGuard(f"K_(s,t) search exceeded {self.cap} intersection tests")


def _biclique_search(left_adj: dict, right_adj: dict, size: int, need: int, budget: _Budget):
    """Find ``size`` left vertices sharing at least ``need`` right neighbours.

    Left vertices are added in increasing order; a candidate extension must be
    adjacent to some vertex in the current common neighbourhood, which keeps the
    search on nonempty intersections only.
    """
    lefts = sorted(v for v, nb in left_adj.items() if len(nb) >= need)
    for v in lefts:
        common = left_adj[v]
        if size == 1:
            return (v,), common
        found = _extend([v], common, left_adj, right_adj, size, need, budget)
        if found:
            return found
    return None


def _extend(chosen, common, left_adj, right_adj, size, need, budget):
    last = chosen[-1]
    candidates = set()
    for r in common:
        candidates.update(u for u in right_adj[r] if u > last)
    for u in sorted(candidates):
        budget.spend()
        nxt = common & left_adj[u]
        if len(nxt) < need:
            continue
        path = chosen + [u]
        if len(path) == size:
            return tuple(path), nxt
        found = _extend(path, nxt, left_adj, right_adj, size, need, budget)
        if found:
            return found
    return None


def verify_no_kst(graph: IncidenceGraph, s: int, t: int, cap: int = DEFAULT_KST_CAP) -> KstResult:
    """Search exhaustively for s points and t curves that are all incident.

    The search grows whichever side is smaller (points when ``s <= t``); both
    sides prune on shrinking common neighbourhoods.  Raises
    :class:`ComplexityGuard` once more than ``cap`` set intersections are
    tested.
    """
    if s < 1 or t < 1:
        raise ValueError("s and t must be positive")
    point_adj = {p: frozenset(cs) for p, cs in graph.by_point.items()}
    curve_adj = {c: frozenset(ps) for c, ps in graph.by_curve.items()}
    budget = _Budget(cap)
    labels = graph.family.labels
    if s <= t:
        hit = _biclique_search(point_adj, curve_adj, s, t, budget)
        if hit:
            pts, curves = hit
            chosen = sorted(curves, key=lambda c: labels[c])[:t]
            return KstResult(False, s, t, tuple(pts), tuple(labels[c] for c in chosen), budget.used)
    else:
        hit = _biclique_search(curve_adj, point_adj, t, s, budget)
        if hit:
            curves, pts = hit
            return KstResult(False, s, t, tuple(sorted(pts)[:s]), tuple(labels[c] for c in curves), budget.used)
    return KstResult(True, s, t, tests=budget.used)


# ---------------------------------------------------------------------------
# Quadruple energy
# ---------------------------------------------------------------------------


def value_multiplicities(A: Sequence, B: Sequence, f: BivariatePoly) -> Counter:
    """Counter mapping each value f(a, b) to its number of preimages."""
    A = [gr(a) for a in A]
    B = [gr(b) for b in B]
    cols = f.coeffs_in_y()
    counts: Counter = Counter()
    for a in A:
        fiber = UnivariatePoly._raw([F(a) for F in cols])
        for b in B:
            counts[fiber(b)] += 1
    return counts


def quadruple_energy(A: Sequence, B: Sequence, f: BivariatePoly) -> int:
    """Number of quadruples (a, b, a', b') with f(a, b) = f(a', b')."""
    counts = value_multiplicities(A, B, f)
    energy = sum(k * k for k in counts.values())
    total = len(A) * len(B)
    # Cauchy-Schwarz: E * |f(A,B)| >= (|A||B|)^2
    if counts and energy * len(counts) < total * total:
        raise InvariantViolation(f"energy {energy} below (|A||B|)^2/|image| = {total * total}/{len(counts)}")
    return energy
