"""Three incidence applications: rich inversions, A + 1/A expansion and
distances between points on two lines.

Each builder returns a report and re-verifies the facts its curve family is
supposed to satisfy (richness, witness incidences, K_{2,3}-freeness, the
energy inequality).  Failed checks are recorded in ``report.failures``;
callers decide whether to raise.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .bounds import decimal_text, scaled_root
from .errors import DegenerateSlope, KTooSmall, ZeroInA
from .exact import GaussianRational, gr
from .incidence import (
    DEFAULT_KST_CAP,
    CartesianPointSet,
    CurveFamily,
    KstResult,
    build_incidence_graph,
    quadruple_energy,
    value_multiplicities,
    verify_no_kst,
)
from .poly import BivariatePoly

X = BivariatePoly.x()
Y = BivariatePoly.y()


def _distinct(values: Iterable, name: str = "A") -> list[GaussianRational]:
    vals = [gr(v) for v in values]
    if len(set(vals)) != len(vals):
        raise ValueError(f"{name} contains repeated elements")
    return vals


def _ratio(numerator: int, radicand: int, k: int) -> Fraction:
    """numerator / radicand^(1/k), floored to six decimals when inexact."""
    root, _ = scaled_root(Fraction(1), radicand, k)
    return Fraction(numerator) / root


# ---------------------------------------------------------------------------
# Rich inversion transformations  z -> a / (z + b)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InversionMap:
    a: GaussianRational
    b: GaussianRational
    richness: int

    def __call__(self, z) -> GaussianRational | None:
        den = gr(z) + self.b
        return None if not den else self.a / den

    def curve(self) -> BivariatePoly:
        """y (x + b) - a, whose zero set is the graph of the map."""
        return Y * (X + self.b) - self.a

    @property
    def label(self) -> str:
        return f"C[a={self.a},b={self.b}]"

    def sort_key(self):
        return (self.a.sort_key(), self.b.sort_key())


def inversion_richness(a: GaussianRational, b: GaussianRational, A: Sequence[GaussianRational], members: set | None = None) -> int:
    """|phi(A) ∩ A| for phi(z) = a/(z+b); the pole z = -b is skipped."""
    members = set(A) if members is None else members
    count = 0
    for x in A:
        den = x + b
        if den and a / den in members:
            count += 1
    return count


def inversion_candidates(A: Sequence[GaussianRational]):
    """Every (a, b) fixed by two mapping pairs x -> y, x' -> y' inside A.

    From y(x + b) = a = y'(x' + b) we get (y - y') b = y'x' - yx; pairs with
    y = y' determine nothing and a = 0 is not a transformation.
    """
    for (x, y), (x2, y2) in product(product(A, repeat=2), repeat=2):
        if y == y2:
            continue
        b = (y2 * x2 - y * x) / (y - y2)
        a = y * (x + b)
        if a:
            yield a, b


def rich_inversions(A: Iterable, k: int) -> list[InversionMap]:
    """All inversions phi_ab with |phi_ab(A) ∩ A| >= k, sorted by (a, b).

    Complete for k >= 2 because such a map realises at least two mapping
    pairs inside A, and two pairs determine (a, b).
    """
    if k < 2:
        raise KTooSmall("pair enumeration only finds maps with at least two mapping pairs")
    A = _distinct(A)
    if len(A) < 2:
        raise ValueError("rich_inversions needs |A| >= 2")
    members = set(A)
    seen = set()
    out = []
    for a, b in inversion_candidates(A):
        if (a, b) in seen:
            continue
        seen.add((a, b))
        rich = inversion_richness(a, b, A, members)
        if rich >= k:
            out.append(InversionMap(a, b, rich))
    out.sort(key=InversionMap.sort_key)
    return out


def inversion_family(maps: Sequence[InversionMap]) -> CurveFamily:
    return CurveFamily((m.label, m.curve()) for m in maps)


@dataclass
class InversionReport:
    n: int
    k: int
    maps: list[InversionMap]
    incidences: int
    kst: KstResult
    failures: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.maps)

    @property
    def normalized(self) -> Fraction:
        """|R_k(A)| k^3 / n^4, the quantity the O(n^4/k^3) bound controls."""
        return Fraction(self.count * self.k**3, self.n**4)

    def to_json(self) -> dict:
        return {
            "app": "inversion",
            "n": self.n,
            "k": self.k,
            "rich_maps": self.count,
            "maps": [{"a": str(m.a), "b": str(m.b), "richness": m.richness} for m in self.maps],
            "incidences": self.incidences,
            "k23_free": self.kst.passed,
            "normalized": str(self.normalized),
            "normalized_decimal": decimal_text(self.normalized),
            "failures": list(self.failures),
        }


def inversion_experiment(A: Iterable, k: int, cap: int = DEFAULT_KST_CAP) -> InversionReport:
    A = _distinct(A)
    maps = rich_inversions(A, k)
    failures = []
    members = set(A)
    for m in maps:
        if inversion_richness(m.a, m.b, A, members) < k:
            failures.append(f"{m.label} is not {k}-rich")
    family = inversion_family(maps)
    graph = build_incidence_graph(CartesianPointSet(A, A), family)
    # every k-rich map has at least k incidences on A x A
    for c, (label, _) in enumerate(family):
        if len(graph.by_curve.get(c, ())) < k:
            failures.append(f"{label} has fewer than {k} incidences on A x A")
    kst = verify_no_kst(graph, 2, 3, cap=cap)
    if not kst.passed:
        failures.append(f"K_2,3 found: points {kst.witness_points}, curves {kst.witness_curves}")
    return InversionReport(len(A), k, maps, len(graph), kst, failures)


# ---------------------------------------------------------------------------
# A + 1/A
# ---------------------------------------------------------------------------


def sumset(A: Iterable, B: Iterable) -> list[GaussianRational]:
    B = [gr(b) for b in B]
    return sorted({gr(a) + b for a in A for b in B}, key=GaussianRational.sort_key)


def reciprocals(A: Iterable) -> list[GaussianRational]:
    return [1 / gr(a) for a in A]


def expansion_curve(a: GaussianRational, b: GaussianRational) -> BivariatePoly:
    """(x - a)(y - 1/b) - 1, the graph of y = 1/(x - a) + 1/b."""
    return (X - a) * (Y - 1 / b) - 1


@dataclass
class ExpansionReport:
    n: int
    sum_size: int  # |A + A|
    reciprocal_sum_size: int  # |1/A + 1/A|
    mixed_size: int  # |A + 1/A|
    incidences: int
    curves_checked: int
    min_curve_incidences: int
    kst: KstResult
    failures: list[str] = field(default_factory=list)

    @property
    def mixed_ratio(self) -> Fraction:
        """|A + 1/A| / n^(5/4)."""
        return _ratio(self.mixed_size, self.n**5, 4)

    @property
    def product_ratio(self) -> Fraction:
        """|A + A| |1/A + 1/A| / n^(5/2)."""
        return _ratio(self.sum_size * self.reciprocal_sum_size, self.n**5, 2)

    def to_json(self) -> dict:
        return {
            "app": "sumset",
            "n": self.n,
            "A+A": self.sum_size,
            "1/A+1/A": self.reciprocal_sum_size,
            "A+1/A": self.mixed_size,
            "incidences": self.incidences,
            "curves_checked": self.curves_checked,
            "min_curve_incidences": self.min_curve_incidences,
            "k23_free": self.kst.passed,
            "ratio_mixed_n^(5/4)": decimal_text(self.mixed_ratio),
            "ratio_product_n^(5/2)": decimal_text(self.product_ratio),
            "failures": list(self.failures),
        }


def sumset_expander(A: Iterable, cap: int = DEFAULT_KST_CAP) -> ExpansionReport:
    """Build P = (A+A) x (1/A+1/A) and the |A|^2 curves C_ab, and check them.

    Each C_ab must contain the |A| witness points (a + a', 1/a' + 1/b); the
    incidence graph must therefore have at least |A|^3 edges and, as any two
    points lie on at most two of the curves, no K_{2,3}.
    """
    A = _distinct(A)
    if not A:
        raise ValueError("A must be nonempty")
    if any(not a for a in A):
        raise ZeroInA("0 has no reciprocal")
    inv = reciprocals(A)
    ss, rr, mixed = sumset(A, A), sumset(inv, inv), sumset(A, inv)
    points = CartesianPointSet(ss, rr)
    labels, curves = [], []
    failures = []
    for a, b in product(A, A):
        f = expansion_curve(a, b)
        for a2 in A:
            if f.evaluate(a + a2, 1 / a2 + 1 / b):
                failures.append(f"witness (a+a', 1/a'+1/b) misses C[{a},{b}] for a'={a2}")
        labels.append(f"C[a={a},b={b}]")
        curves.append(f)
    family = CurveFamily(zip(labels, curves))
    graph = build_incidence_graph(points, family)
    n = len(A)
    per_curve = [len(graph.by_curve.get(c, ())) for c in range(len(family))]
    for c, cnt in enumerate(per_curve):
        if cnt < n:
            failures.append(f"{labels[c]} has {cnt} < {n} incidences")
    if len(graph) < n**3:
        failures.append(f"{len(graph)} incidences < n^3 = {n**3}")
    kst = verify_no_kst(graph, 2, 3, cap=cap)
    if not kst.passed:
        failures.append(f"K_2,3 found: points {kst.witness_points}, curves {kst.witness_curves}")
    return ExpansionReport(n, len(ss), len(rr), len(mixed), len(graph), len(family), min(per_curve), kst, failures)


# ---------------------------------------------------------------------------
# Distances between two lines
# ---------------------------------------------------------------------------


def distance_polynomial(m) -> BivariatePoly:
    """(x - y)^2 + m^2 y^2: squared distance from (x, 0) to (y, m y)."""
    m = gr(m)
    return (X - Y) ** 2 + (m * m) * Y**2


def hyperbola(b, b2, m) -> BivariatePoly:
    """f(x, b) - f(y, b'), i.e. (x - b)^2 - (y - b')^2 - m^2 (b'^2 - b^2)."""
    b, b2, m = gr(b), gr(b2), gr(m)
    m2 = m * m
    return (X - b) ** 2 + m2 * b * b - (Y - b2) ** 2 - m2 * b2 * b2


@dataclass
class DistanceReport:
    n: int
    m: GaussianRational
    distinct: int  # |D(A, B)|
    energy: int
    hyperbola_incidences: int
    diagonal_incidences: int
    kst: KstResult
    failures: list[str] = field(default_factory=list)

    @property
    def lower_bound(self) -> Fraction:
        """n^4 / |D(A, B)|."""
        return Fraction(self.n**4, self.distinct)

    @property
    def ratio(self) -> Fraction:
        """|D(A, B)| / n^(4/3)."""
        return _ratio(self.distinct, self.n**4, 3)

    def to_json(self) -> dict:
        return {
            "app": "distance",
            "n": self.n,
            "m": str(self.m),
            "distinct": self.distinct,
            "energy": self.energy,
            "lower_bound": str(self.lower_bound),
            "hyperbola_incidences": self.hyperbola_incidences,
            "diagonal_incidences": self.diagonal_incidences,
            "k23_free": self.kst.passed,
            "ratio_n^(4/3)": decimal_text(self.ratio),
            "failures": list(self.failures),
        }


def line_distance_set(A: Iterable, B: Iterable, m, cap: int = DEFAULT_KST_CAP, complex_ok: bool = False) -> DistanceReport:
    """Distinct distances between A on the x-axis and B on the line y = m x.

    Checks E >= n^4/|D| exactly, that E equals the number of incidences
    between A x A and all curves C_bb' (the b = b' curves included), and that
    the hyperbolas C_bb' with b != b' contain no K_{2,3}.
    """
    m = gr(m)
    if not m:
        raise DegenerateSlope("m = 0 makes the lines parallel")
    A = _distinct(A, "A")
    B = _distinct(B, "B")
    if len(A) != len(B):
        raise ValueError("|A| and |B| must be equal")
    if not complex_ok and not (m.is_real() and all(v.is_real() for v in A + B)):
        raise ValueError("complex input needs complex_ok=True")
    n = len(A)
    f = distance_polynomial(m)
    values = value_multiplicities(A, B, f)
    energy = quadruple_energy(A, B, f)
    failures = []
    if energy * len(values) < n**4:
        failures.append("energy below n^4/|D|")
    points = CartesianPointSet(A, A)
    off, diag = [], []
    for b, b2 in product(B, B):
        (off if b != b2 else diag).append((f"C[b={b},b'={b2}]", hyperbola(b, b2, m)))
    graph = build_incidence_graph(points, CurveFamily(off))
    diag_graph = build_incidence_graph(points, CurveFamily(diag))
    if energy != len(graph) + len(diag_graph):
        failures.append(f"energy {energy} != incidences {len(graph)} + {len(diag_graph)}")
    kst = verify_no_kst(graph, 2, 3, cap=cap)
    if not kst.passed:
        failures.append(f"K_2,3 found: points {kst.witness_points}, curves {kst.witness_curves}")
    return DistanceReport(n, m, len(values), energy, len(graph), len(diag_graph), kst, failures)
