"""Grid partitions of a real Cartesian product and the I1/I2 incidence split.

Everything here is real: A, B are rationals and curves have rational
coefficients.  Cuts are chosen strictly between consecutive elements, so no
point of A x B ever lies on a grid line.
"""

from __future__ import annotations

import bisect
import math
import warnings
from collections import defaultdict
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DegenerateLine, InvariantViolation, LineOutsideField, RTooLarge
from .exact import GaussianRational
from .incidence import CartesianPointSet, CurveFamily, IncidenceGraph, build_incidence_graph
from .poly import BivariatePoly, axis_parallel_lines, sturm_count


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ceil_cube_root(q: Fraction) -> int:
    """Smallest integer r >= 0 with r**3 >= q, for rational q >= 0."""
    if q <= 0:
        return 0
    num, den = q.numerator, q.denominator
    lo, hi = 0, 1
    while hi**3 * den < num:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid**3 * den >= num:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class RChoice:
    r: int
    raw: int
    lower_clamped: bool
    upper_clamped: bool

    @property
    def clamped(self) -> bool:
        return self.lower_clamped or self.upper_clamped


def select_r(d: int, M: int, n_points: int, n_curves: int, n_a: int | None = None) -> RChoice:
    """Round up ``(M n_points^2 / (d n_curves))^(1/3)`` and clamp it to [d, n_a].

    A lower clamp signals that ``d^4 |C| <= M |P|^2`` is violated (the rounded
    root falls below d); an upper clamp that ``d |C| >= M |B|^2 / |A|`` is
    (the root exceeds |A|).  ``n_a=None`` skips the upper clamp.
    """
    if min(d, M, n_points, n_curves) < 1:
        raise ValueError("select_r needs positive arguments")
    raw = ceil_cube_root(Fraction(M * n_points * n_points, d * n_curves))
    r = raw
    lower = r < d
    if lower:
        r = d
    upper = n_a is not None and r > n_a
    if upper:
        r = n_a
    return RChoice(r, raw, lower, upper)


def _gap_point(lo: Fraction, hi: Fraction, avoid) -> Fraction:
    """The midpoint of (lo, hi), or failing that the first of 1/3, 2/3,
    1/4, 3/4, ... of the way across that is not in ``avoid``."""
    q = 2
    while True:
        for p in range(1, q):
            if math.gcd(p, q) == 1:
                c = lo + (hi - lo) * Fraction(p, q)
                if c not in avoid:
                    return c
        q += 1


def choose_cuts(values: Sequence, r: int, avoid=frozenset()) -> list[Fraction]:
    """Cut points splitting sorted ``values`` into at most r blocks.

    Blocks have ``ceil(len(values)/r)`` consecutive elements (the last may be
    shorter); each cut is the midpoint of the gap between two blocks unless
    that value is in ``avoid``, in which case another point of the same gap
    is used.
    """
    vals = sorted(_real(v) for v in values)
    n = len(vals)
    if r < 1:
        raise ValueError("r must be positive")
    if r > n:
        raise RTooLarge(f"r = {r} exceeds the {n} available values")
    size = ceil_div(n, r)
    return [_gap_point(vals[k - 1], vals[k], avoid) for k in range(size, n, size)]


def _real(v) -> Fraction:
    if isinstance(v, GaussianRational):
        if v.im:
            raise ValueError("partitioning needs real coordinates")
        return v.re
    return Fraction(v)


@dataclass(frozen=True)
class GridPartition:
    cuts_x: tuple[Fraction, ...]
    cuts_y: tuple[Fraction, ...]
    r: int

    def cell_of(self, x: Fraction, y: Fraction) -> tuple[int, int]:
        return bisect.bisect_left(self.cuts_x, x), bisect.bisect_left(self.cuts_y, y)


def build_grid(points: CartesianPointSet, r: int, avoid_x=frozenset(), avoid_y=frozenset()) -> GridPartition:
    """Cut both axes with the same r; the B axis uses min(r, |B|) blocks,
    which still leaves at most ``ceil(|B|/r)`` elements per interval.

    ``avoid_x``/``avoid_y`` list values no vertical/horizontal cut may take
    (the intercepts of lines contained in the curves).
    """
    cuts_x = choose_cuts(points.A, r, avoid_x)
    cuts_y = choose_cuts(points.B, min(r, len(points.B)), avoid_y)
    return GridPartition(tuple(cuts_x), tuple(cuts_y), r)


def contained_line_intercepts(family: CurveFamily) -> tuple[frozenset, frozenset]:
    """Real intercepts of the vertical and horizontal lines inside the curves."""
    xs, ys = set(), set()
    for _, f in family:
        with warnings.catch_warnings():
            # irrational intercepts can never coincide with a rational cut
            warnings.simplefilter("ignore", LineOutsideField)
            lines = axis_parallel_lines(f)
        xs.update(v.re for v in lines.vertical if v.is_real())
        ys.update(v.re for v in lines.horizontal if v.is_real())
    return frozenset(xs), frozenset(ys)


def interval_loads(values: Sequence, cuts: Sequence[Fraction]) -> list[int]:
    loads = [0] * (len(cuts) + 1)
    for v in values:
        loads[bisect.bisect_left(cuts, _real(v))] += 1
    return loads


def check_grid(points: CartesianPointSet, grid: GridPartition) -> None:
    """Raise InvariantViolation unless the grid satisfies its invariants."""
    for name, vals, cuts in (("A", points.A, grid.cuts_x), ("B", points.B, grid.cuts_y)):
        reals = {_real(v) for v in vals}
        if any(c in reals for c in cuts):
            raise InvariantViolation(f"a cut coincides with an element of {name}")
        if len(cuts) > grid.r:
            raise InvariantViolation(f"{len(cuts)} cuts on the {name} axis exceed r = {grid.r}")
        cap = ceil_div(len(vals), grid.r)
        if max(interval_loads(vals, cuts)) > cap:
            raise InvariantViolation(f"an interval of {name} holds more than ceil(|{name}|/r) = {cap} elements")


# ---------------------------------------------------------------------------
# Gridline crossings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    label: str
    axis: str  # "x" for a vertical line x = c, "y" for a horizontal line y = c
    cut: Fraction
    count: int


def gridline_crossings(family: CurveFamily, grid: GridPartition) -> list[Crossing]:
    """Real intersection counts of every curve with every grid line.

    The count for a vertical line x = c is the number of distinct real roots
    of f(c, y), obtained by Sturm sequences; each count is checked against
    the curve degree.
    """
    out: list[Crossing] = []
    for label, f in family:
        if not f.is_real():
            raise ValueError(f"curve {label!r} has non-real coefficients")
        lines = axis_parallel_lines(f)
        bad_x = set(grid.cuts_x) & {v.re for v in lines.vertical if v.is_real()}
        bad_y = set(grid.cuts_y) & {v.re for v in lines.horizontal if v.is_real()}
        if bad_x or bad_y:
            raise DegenerateLine(f"curve {label!r} contains a grid line")
        for axis, cuts, fiber in (("x", grid.cuts_x, f.fiber_y), ("y", grid.cuts_y, f.fiber_x)):
            for c in cuts:
                p = fiber(c)
                if p.is_zero():
                    raise DegenerateLine(f"curve {label!r} contains the line {axis} = {c}")
                count = 0 if p.degree == 0 else sturm_count(p)
                if count > f.degree:
                    raise InvariantViolation(f"curve {label!r} crosses {axis} = {c} in {count} > {f.degree} points")
                out.append(Crossing(label, axis, c, count))
    return out


# ---------------------------------------------------------------------------
# I1 / I2 decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DecompositionReport:
    """``I1``: incidences alone in their (curve, cell); ``I2``: the rest.

    ``per_cell_max`` is the largest number of incidences (over all curves)
    inside one cell.  ``crossings_per_line_max`` is filled in only when the
    gridline crossings were computed.
    """

    I1: int
    I2: int
    total: int
    per_cell_max: int
    crossings_per_line_max: int | None = None

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class CellCount:
    cell_x: int
    cell_y: int
    label: str
    count: int


def cell_groups(graph: IncidenceGraph, grid: GridPartition) -> dict[tuple[int, tuple[int, int]], int]:
    A, B = graph.points.A, graph.points.B
    groups: dict[tuple[int, tuple[int, int]], int] = defaultdict(int)
    for c, ia, ib in graph.edges:
        groups[(c, grid.cell_of(_real(A[ia]), _real(B[ib])))] += 1
    return groups


def decompose_incidences(graph: IncidenceGraph, grid: GridPartition) -> DecompositionReport:
    groups = cell_groups(graph, grid)
    i1 = sum(1 for k in groups.values() if k == 1)
    i2 = sum(k for k in groups.values() if k > 1)
    per_cell: dict[tuple[int, int], int] = defaultdict(int)
    for (_, cell), k in groups.items():
        per_cell[cell] += k
    report = DecompositionReport(i1, i2, len(graph.edges), max(per_cell.values(), default=0))
    if report.I1 + report.I2 != report.total:
        raise InvariantViolation("I1 + I2 differs from the incidence count")
    return report


def cell_counts(graph: IncidenceGraph, grid: GridPartition) -> list[CellCount]:
    labels = graph.family.labels
    rows = [CellCount(cell[0], cell[1], labels[c], k) for (c, cell), k in cell_groups(graph, grid).items()]
    return sorted(rows, key=lambda r: (r.cell_x, r.cell_y, r.label))


@dataclass
class PartitionRun:
    grid: GridPartition
    r_choice: RChoice | None
    report: DecompositionReport
    crossings: list[Crossing]
    cells: list[CellCount]
    graph: IncidenceGraph


def run_partition(points: CartesianPointSet, family: CurveFamily, r: int | str = "auto") -> PartitionRun:
    """Build the incidence graph, cut the plane and verify the decomposition.

    With ``r="auto"`` the cube-root rule is used, with M the largest number of
    curves through two points (at least 1) and d the largest curve degree.
    Cuts steer clear of any axis-parallel line lying inside a curve.
    """
    if not points.is_real():
        raise ValueError("partitioning needs real point coordinates")
    graph = build_incidence_graph(points, family)
    choice = None
    if r == "auto":
        d = max(family.max_degree, 1)
        M = max(graph.max_pair_multiplicity(), 1)
        choice = select_r(d, M, len(points), max(len(family), 1), len(points.A))
        r = choice.r
    grid = build_grid(points, int(r), *contained_line_intercepts(family))
    check_grid(points, grid)
    report = decompose_incidences(graph, grid)
    crossings = gridline_crossings(family, grid)
    report = DecompositionReport(
        report.I1, report.I2, report.total, report.per_cell_max,
        max((c.count for c in crossings), default=0),
    )
    return PartitionRun(grid, choice, report, crossings, cell_counts(graph, grid), graph)
