"""Closed-form incidence bounds with all hidden constants set to 1.

Term values are exact rationals.  Fractional powers are computed as a single
integer root: when the root is exact the value is exact, otherwise it is
rounded down to six decimal places (``exact=False``).  Rounding down to a
fixed number of decimals keeps every evaluator monotone and makes reports
bit-identical across platforms.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

DECIMALS = 6
_SCALE = 10**DECIMALS


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for integers n >= 0, k >= 1."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


@dataclass(frozen=True)
class Term:
    name: str
    value: Fraction
    exact: bool
    expression: str = ""

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "expression": self.expression,
            "value": _fraction_text(self.value),
            "decimal": decimal_text(self.value),
            "exact": self.exact,
        }


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def decimal_text(q: Fraction, places: int = DECIMALS) -> str:
    """``q`` rounded down to a fixed number of decimal places."""
    scaled = (q.numerator * 10**places) // q.denominator
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def scaled_root(coefficient: Fraction, radicand: int, k: int) -> tuple[Fraction, bool]:
    """``coefficient * radicand^(1/k)``, exact when possible, else floored."""
    r = iroot(radicand, k)
    if r**k == radicand:
        return coefficient * r, True
    num, den = coefficient.numerator, coefficient.denominator
    # floor(num * 10^6 * radicand^(1/k)) computed as one integer root
    floored = iroot(radicand * (num * _SCALE) ** k, k)
    return Fraction(floored, den * _SCALE), False


def floor_log2(n: int) -> tuple[Fraction, bool]:
    """log2(n) exact for powers of two, else floored to six decimals."""
    if n < 1:
        raise ValueError("log2 needs n >= 1")
    if n & (n - 1) == 0:
        return Fraction(n.bit_length() - 1), True
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(n).ln() / Decimal(2).ln()
        floored = (value * _SCALE).to_integral_value(rounding=ROUND_FLOOR)
    return Fraction(int(floored), _SCALE), False


@dataclass(frozen=True)
class BoundReport:
    formula: str
    params: dict
    terms: tuple[Term, ...]
    observed: int | None = None
    notes: tuple[str, ...] = ()

    @property
    def total(self) -> Fraction:
        return sum((t.value for t in self.terms), Fraction(0))

    @property
    def dominant(self) -> str:
        best = self.terms[0]
        for t in self.terms[1:]:
            if t.value > best.value:
                best = t
        return best.name

    @property
    def ratio(self) -> Fraction | None:
        """observed / total rounded to six significant digits."""
        if self.observed is None:
            return None
        return significant(Fraction(self.observed) / self.total)

    def with_observed(self, observed: int) -> "BoundReport":
        return BoundReport(self.formula, self.params, self.terms, observed, self.notes)

    def to_json(self) -> dict:
        out = {
            "formula": self.formula,
            "params": dict(self.params),
            "terms": [t.to_json() for t in self.terms],
            "total": _fraction_text(self.total),
            "dominant": self.dominant,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.observed is not None:
            out["observed"] = self.observed
            out["ratio"] = _fraction_text(self.ratio)
            out["ratio_decimal"] = decimal_text(self.ratio)
        return out


def significant(q: Fraction, digits: int = 6) -> Fraction:
    """Round a nonnegative rational down to ``digits`` significant digits."""
    if q <= 0:
        return Fraction(0)
    e = 0
    while q >= 10 ** (e + 1):
        e += 1
    while q < 10**e:
        e -= 1
    shift = digits - 1 - e
    scaled = q * Fraction(10) ** shift
    return Fraction(math.floor(scaled)) / Fraction(10) ** shift


def _check_positive(**kwargs):
    for name, v in kwargs.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer")


def _log_term(M: int, d: int, n_points: int) -> Term:
    log, exact = floor_log2(M * d)
    return Term("log", M * (log + 1) * n_points, exact, "M*(log2 M + log2 d + 1)*|P|")


def bound_main(d: int, M: int, n_points: int, n_curves: int) -> BoundReport:
    """d^(4/3) M^(1/3) |P|^(2/3) |C|^(2/3) + M (log2 M + log2 d + 1) |P| + d^4 |C|."""
    _check_positive(d=d, M=M, n_points=n_points, n_curves=n_curves)
    first, exact = scaled_root(Fraction(1), d**4 * M * n_points**2 * n_curves**2, 3)
    terms = (
        Term("main", first, exact, "d^(4/3)*M^(1/3)*|P|^(2/3)*|C|^(2/3)"),
        _log_term(M, d, n_points),
        Term("curves", Fraction(d**4 * n_curves), True, "d^4*|C|"),
    )
    return BoundReport("main", {"d": d, "M": M, "nP": n_points, "nC": n_curves}, terms)


def bound_real(d: int, M: int, n_points: int, n_curves: int) -> BoundReport:
    """d^(2/3) M^(1/3) |P|^(2/3) |C|^(2/3) + M (log2 M + log2 d + 1) |P| + d^2 |C|."""
    _check_positive(d=d, M=M, n_points=n_points, n_curves=n_curves)
    first, exact = scaled_root(Fraction(1), d**2 * M * n_points**2 * n_curves**2, 3)
    terms = (
        Term("main", first, exact, "d^(2/3)*M^(1/3)*|P|^(2/3)*|C|^(2/3)"),
        _log_term(M, d, n_points),
        Term("curves", Fraction(d**2 * n_curves), True, "d^2*|C|"),
    )
    return BoundReport("real", {"d": d, "M": M, "nP": n_points, "nC": n_curves}, terms)


def bound_kst(s: int, t: int, n_x: int, n_y: int) -> BoundReport:
    """t^(1/s) |X| |Y|^(1-1/s) + s |Y| for a K_{s,t}-free bipartite graph."""
    _check_positive(s=s, t=t)
    if n_x < 0 or n_y < 0:
        raise ValueError("sizes must be nonnegative")
    first, exact = scaled_root(Fraction(n_x), t * n_y ** (s - 1), s)
    terms = (
        Term("main", first, exact, "t^(1/s)*|X|*|Y|^(1-1/s)"),
        Term("linear", Fraction(s * n_y), True, "s*|Y|"),
    )
    return BoundReport("kst", {"s": s, "t": t, "nX": n_x, "nY": n_y}, terms)


def bound_general_st(s: int, n_points: int, n_curves: int) -> BoundReport:
    """|P|^(s/(2s-1)) |C|^((2s-2)/(2s-1)) + |P| + |C|."""
    if not isinstance(s, int) or s < 2:
        raise ValueError("s must be an integer >= 2")
    _check_positive(n_points=n_points, n_curves=n_curves)
    first, exact = scaled_root(Fraction(1), n_points**s * n_curves ** (2 * s - 2), 2 * s - 1)
    terms = (
        Term("main", first, exact, "|P|^(s/(2s-1))*|C|^((2s-2)/(2s-1))"),
        Term("points", Fraction(n_points), True, "|P|"),
        Term("curves", Fraction(n_curves), True, "|C|"),
    )
    note = "constants depending on d, s, t are not represented"
    return BoundReport("general", {"s": s, "nP": n_points, "nC": n_curves}, terms, notes=(note,))


FORMULAS = {
    "main": (bound_main, ("d", "M", "nP", "nC")),
    "real": (bound_real, ("d", "M", "nP", "nC")),
    "kst": (bound_kst, ("s", "t", "nX", "nY")),
    "general": (bound_general_st, ("s", "nP", "nC")),
}


def evaluate(formula: str, params: dict) -> BoundReport:
    fn, names = FORMULAS[formula]
    missing = [n for n in names if n not in params]
    if missing:
        raise ValueError(f"missing parameters for {formula}: {', '.join(missing)}")
    return fn(*(int(params[n]) for n in names))


@dataclass
class TrendTable:
    rows: list[dict] = field(default_factory=list)

    @property
    def ratios(self) -> list[Fraction]:
        return [r["ratio"] for r in self.rows]

    @property
    def max_ratio(self) -> Fraction:
        return max(self.ratios)

    @property
    def min_ratio(self) -> Fraction:
        return min(self.ratios)

    def to_csv(self) -> str:
        buf = io.StringIO()
        names = [t for t in self.rows[0]["terms"]]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "observed", *names, "ratio"])
        for r in self.rows:
            writer.writerow([r["n"], r["observed"], *(decimal_text(v) for v in r["terms"].values()), decimal_text(r["ratio"])])
        writer.writerow(["max", "", *([""] * len(names)), decimal_text(self.max_ratio)])
        writer.writerow(["min", "", *([""] * len(names)), decimal_text(self.min_ratio)])
        return buf.getvalue()


def trend_table(rows: Sequence[tuple[int, int, BoundReport]]) -> TrendTable:
    """Observed/bound ratios for a series of (n, observed, report) rows."""
    if not rows:
        raise ValueError("trend table needs at least one row")
    ns = [n for n, _, _ in rows]
    if ns != sorted(ns):
        raise ValueError("rows must be sorted by n")
    table = TrendTable()
    for n, observed, report in rows:
        rep = report.with_observed(observed)
        table.rows.append({
            "n": n,
            "observed": observed,
            "terms": {t.name: t.value for t in rep.terms},
            "ratio": rep.ratio,
        })
    return table
