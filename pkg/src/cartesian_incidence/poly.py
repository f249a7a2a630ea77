"""Univariate and bivariate polynomials over Q(i).

Degrees of bivariate polynomials are total degrees (max i+j).  Everything is
exact; the only routines that leave Q(i) are the real-root counters, which
report counts, never roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Mapping, Sequence
import warnings

from .errors import (
    DegenerateInput,
    LineOutsideField,
    ParseError,
    RootAtEndpoint,
    ZeroPolynomial,
)
from .exact import ONE, ZERO, I, GaussianRational, gaussian_sqrt, gr, parse_gaussian

_FZERO = Fraction(0)


# ---------------------------------------------------------------------------
# Univariate polynomials
# ---------------------------------------------------------------------------


class UnivariatePoly:
    """Dense polynomial with Q(i) coefficients, lowest degree first.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [gr(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, cs: list) -> "UnivariatePoly":
        while cs and not cs[-1]:
            cs.pop()
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(cs))
        return obj

    @classmethod
    def constant(cls, c) -> "UnivariatePoly":
        return cls._raw([gr(c)])

    @classmethod
    def x(cls) -> "UnivariatePoly":
        return cls._raw([ZERO, ONE])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UnivariatePoly":
        p = cls._raw([ONE])
        for r in roots:
            p = p * cls._raw([-gr(r), ONE])
        return p

    def __setattr__(self, name, value):
        raise AttributeError("UnivariatePoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def lc(self) -> GaussianRational:
        return self.coeffs[-1] if self.coeffs else ZERO

    def is_real(self) -> bool:
        return all(not c.im for c in self.coeffs)

    def real_coeffs(self) -> list[Fraction]:
        if not self.is_real():
            raise ValueError("polynomial has non-real coefficients")
        return [c.re for c in self.coeffs]

    def real_part(self) -> "UnivariatePoly":
        return UnivariatePoly._raw([GaussianRational(c.re) for c in self.coeffs])

    def imag_part(self) -> "UnivariatePoly":
        return UnivariatePoly._raw([GaussianRational(c.im) for c in self.coeffs])

    def conj(self) -> "UnivariatePoly":
        return UnivariatePoly._raw([c.conj() for c in self.coeffs])

    def __call__(self, x) -> GaussianRational:
        cs = self.coeffs
        if not cs:
            return ZERO
        acc = cs[-1]
        for k in range(len(cs) - 2, -1, -1):
            acc = acc * x + cs[k]
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, UnivariatePoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "UnivariatePoly":
        return UnivariatePoly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "UnivariatePoly":
        if not isinstance(other, UnivariatePoly):
            other = UnivariatePoly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return UnivariatePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "UnivariatePoly":
        if not isinstance(other, UnivariatePoly):
            other = UnivariatePoly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "UnivariatePoly":
        return UnivariatePoly.constant(other) - self

    def __mul__(self, other) -> "UnivariatePoly":
        if not isinstance(other, UnivariatePoly):
            c = gr(other)
            return UnivariatePoly._raw([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UnivariatePoly._raw([])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return UnivariatePoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UnivariatePoly":
        result = UnivariatePoly._raw([ONE])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "UnivariatePoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lc = other.lc.inv()
        if len(rem) - 1 < db:
            return UnivariatePoly._raw([]), self
        quot = [ZERO] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if not c:
                continue
            q = c * inv_lc
            quot[k - db] = q
            for j in range(db + 1):
                rem[k - db + j] = rem[k - db + j] - q * bc[j]
        return UnivariatePoly._raw(quot), UnivariatePoly._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "UnivariatePoly") -> "UnivariatePoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return q

    def derivative(self) -> "UnivariatePoly":
        return UnivariatePoly._raw([c * k for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UnivariatePoly":
        if not self.coeffs:
            return self
        inv = self.lc.inv()
        return UnivariatePoly._raw([c * inv for c in self.coeffs])

    def compose(self, inner: "UnivariatePoly") -> "UnivariatePoly":
        acc = UnivariatePoly._raw([])
        for c in reversed(self.coeffs):
            acc = acc * inner + UnivariatePoly._raw([c])
        return acc

    def __repr__(self) -> str:
        return f"UnivariatePoly({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        return _format_terms(((k, 0), c) for k, c in enumerate(self.coeffs)) or "0"


def poly_gcd(a: UnivariatePoly, b: UnivariatePoly) -> UnivariatePoly:
    """Monic gcd; gcd(0, 0) is the zero polynomial.

    Real inputs run a primitive remainder sequence over the integers, which
    keeps coefficient growth in check; complex inputs use plain Euclid.
    """
    if a.is_real() and b.is_real():
        g = _int_gcd(_positive_multiple(a.real_coeffs()), _positive_multiple(b.real_coeffs()))
        return UnivariatePoly(g).monic()
    while b:
        a, b = b, a % b
    return a.monic()


def _int_trim(p: list[int]) -> list[int]:
    while p and not p[-1]:
        p.pop()
    return p


def _int_primitive(p: list[int]) -> list[int]:
    """Divide by the positive content (signs unchanged)."""
    g = math.gcd(*p)
    return [c // g for c in p] if g > 1 else list(p)


def _int_prem(a: list[int], b: list[int]) -> tuple[list[int], int]:
    """Pseudo-remainder ``lc(b)^k * a mod b``; returns it with the sign of
    the multiplier ``lc(b)^k``."""
    a = list(a)
    db = len(b) - 1
    lc = b[-1]
    steps = 0
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        a = [v * lc for v in a]
        steps += 1
        for j in range(db + 1):
            a[k - db + j] -= c * b[j]
    sign = -1 if lc < 0 and steps % 2 else 1
    return _int_trim(a[:db]), sign


def _int_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _int_trim(list(a)), _int_trim(list(b))
    if not a:
        return _int_primitive(b) if b else []
    while b:
        r, _ = _int_prem(a, b) if len(a) >= len(b) else (a, 1)
        a, b = b, (_int_primitive(r) if r else [])
    return _int_primitive(a)


def _positive_multiple(p: Sequence[Fraction]) -> list[int]:
    """Integer polynomial equal to p times a positive constant."""
    if not p:
        return []
    den = math.lcm(*(Fraction(c).denominator for c in p))
    return [int(c * den) for c in p]


def squarefree_part(p: UnivariatePoly) -> UnivariatePoly:
    """``p / gcd(p, p')`` made monic."""
    if p.degree <= 0:
        return p.monic()
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


# ---------------------------------------------------------------------------
# Bivariate polynomials
# ---------------------------------------------------------------------------


class BivariatePoly:
    """Sparse polynomial in x, y with Q(i) coefficients.

    ``terms`` maps exponent pairs ``(i, j)`` (meaning x^i y^j) to nonzero
    coefficients.
    """

    __slots__ = ("terms", "degree")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = (((i, j), c) for i, j, c in terms)
        acc: dict[tuple[int, int], GaussianRational] = {}
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            key = (int(i), int(j))
            acc[key] = acc.get(key, ZERO) + gr(c)
        self._init({k: v for k, v in acc.items() if v})

    def _init(self, terms: dict):
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "degree", max((i + j for i, j in terms), default=-1))

    @classmethod
    def _raw(cls, terms: dict) -> "BivariatePoly":
        obj = object.__new__(cls)
        obj._init({k: v for k, v in terms.items() if v})
        return obj

    @classmethod
    def x(cls) -> "BivariatePoly":
        return cls._raw({(1, 0): ONE})

    @classmethod
    def y(cls) -> "BivariatePoly":
        return cls._raw({(0, 1): ONE})

    @classmethod
    def constant(cls, c) -> "BivariatePoly":
        return cls._raw({(0, 0): gr(c)})

    @classmethod
    def from_univariate(cls, p: UnivariatePoly, var: str = "x") -> "BivariatePoly":
        if var == "x":
            return cls._raw({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls._raw({(0, k): c for k, c in enumerate(p.coeffs)})

    def __setattr__(self, name, value):
        raise AttributeError("BivariatePoly is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    @property
    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def is_real(self) -> bool:
        return all(not c.im for c in self.terms.values())

    def __eq__(self, other) -> bool:
        if isinstance(other, BivariatePoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- arithmetic -----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "BivariatePoly":
        if isinstance(other, BivariatePoly):
            return other
        return BivariatePoly.constant(other)

    def __neg__(self) -> "BivariatePoly":
        return BivariatePoly._raw({k: -c for k, c in self.terms.items()})

    def __add__(self, other) -> "BivariatePoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return BivariatePoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "BivariatePoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BivariatePoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BivariatePoly":
        other = self._coerce(other)
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, ZERO) + c1 * c2
        return BivariatePoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BivariatePoly":
        result = BivariatePoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- evaluation and views -------------------------------------------

    def evaluate(self, x, y) -> GaussianRational:
        x, y = gr(x), gr(y)
        xp = _powers(x, self.degree_x)
        yp = _powers(y, self.degree_y)
        acc = ZERO
        for (i, j), c in self.terms.items():
            acc = acc + c * xp[i] * yp[j]
        return acc

    __call__ = evaluate

    def coeffs_in_y(self) -> list[UnivariatePoly]:
        """``[F_0, ..., F_m]`` with ``f = sum F_j(x) y^j``."""
        cols: list[list] = [[] for _ in range(self.degree_y + 1)]
        for (i, j), c in self.terms.items():
            col = cols[j]
            if len(col) <= i:
                col.extend([ZERO] * (i + 1 - len(col)))
            col[i] = c
        return [UnivariatePoly._raw(col) for col in cols]

    def coeffs_in_x(self) -> list[UnivariatePoly]:
        """``[G_0, ..., G_n]`` with ``f = sum G_i(y) x^i``."""
        return self.swap().coeffs_in_y()

    def swap(self) -> "BivariatePoly":
        return BivariatePoly._raw({(j, i): c for (i, j), c in self.terms.items()})

    def fiber_y(self, a) -> UnivariatePoly:
        """The univariate polynomial ``f(a, y)``."""
        return UnivariatePoly._raw([F(a) for F in self.coeffs_in_y()])

    def fiber_x(self, b) -> UnivariatePoly:
        """The univariate polynomial ``f(x, b)``."""
        return UnivariatePoly._raw([G(b) for G in self.coeffs_in_x()])

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "j": j, "c": str(c)} for (i, j), c in sorted(self.terms.items())
            ]
        }

    @classmethod
    def from_json(cls, obj) -> "BivariatePoly":
        """Parse ``{"terms": [{"i":0,"j":1,"c":"1"}, ...]}``.

        Repeated exponent pairs are a parse error; the zero polynomial is
        returned as-is (callers decide whether it is acceptable).
        """
        if not isinstance(obj, Mapping) or "terms" not in obj:
            raise ParseError("polynomial object must have a 'terms' list")
        raw = obj["terms"]
        if not isinstance(raw, list):
            raise ParseError("'terms' must be a list")
        terms: dict = {}
        for idx, t in enumerate(raw):
            if not isinstance(t, Mapping) or set(t) != {"i", "j", "c"}:
                raise ParseError(f"terms[{idx}] must have exactly the keys i, j, c")
            i, j, c = t["i"], t["j"], t["c"]
            if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or isinstance(j, bool) or i < 0 or j < 0:
                raise ParseError(f"terms[{idx}] exponents must be nonnegative integers")
            if (i, j) in terms:
                raise ParseError(f"terms[{idx}] repeats exponent ({i}, {j})")
            try:
                terms[(i, j)] = parse_gaussian(c)
            except ParseError as exc:
                raise ParseError(f"terms[{idx}].c: {exc}") from None
        return cls._raw(terms)

    def __repr__(self) -> str:
        return f"BivariatePoly({str(self)!r})"

    def __str__(self) -> str:
        return _format_terms(sorted(self.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]))) or "0"


def _powers(v: GaussianRational, n: int) -> list[GaussianRational]:
    out = [ONE]
    for _ in range(n):
        out.append(out[-1] * v)
    return out


def _format_terms(items) -> str:
    parts = []
    for (i, j), c in items:
        if not c:
            continue
        mono = "*".join(
            s for s in (
                ("x" if i == 1 else f"x^{i}") if i else "",
                ("y" if j == 1 else f"y^{j}") if j else "",
            ) if s
        )
        text = str(c)
        if c.im and c.re:
            text = f"({text})"
        if mono:
            if c == 1:
                text = ""
            elif c == -1:
                text = "-"
            else:
                text += "*"
        parts.append(text + mono)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Resultants and Bezout
# ---------------------------------------------------------------------------


def bareiss_determinant(matrix: list[list[UnivariatePoly]]) -> UnivariatePoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        return UnivariatePoly.constant(1)
    m = [list(row) for row in matrix]
    sign = 1
    prev = UnivariatePoly.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next((r for r in range(k + 1, n) if m[r][k]), None)
            if pivot is None:
                return UnivariatePoly()
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pkk = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                num = pkk * row_i[j] - mik * row_k[j]
                row_i[j] = num.exact_div(prev) if prev.degree > 0 else num * prev.lc.inv()
            row_i[k] = UnivariatePoly()
        prev = pkk
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def sylvester_matrix(f_coeffs: Sequence[UnivariatePoly], g_coeffs: Sequence[UnivariatePoly]) -> list[list[UnivariatePoly]]:
    m, n = len(f_coeffs) - 1, len(g_coeffs) - 1
    size = m + n
    zero = UnivariatePoly()
    rows = []
    for r in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(f_coeffs)):
            row[r + k] = c
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(g_coeffs)):
            row[r + k] = c
        rows.append(row)
    return rows


def resultant_y(f: BivariatePoly, g: BivariatePoly) -> UnivariatePoly:
    """Sylvester resultant of f and g with respect to y, as a polynomial in x.

    Sign convention: ``Res(f, g) = lc_y(f)^deg_y(g) * prod g(x, beta)`` over
    the roots beta of f.
    """
    if f.degree_y <= 0 or g.degree_y <= 0:
        raise DegenerateInput("resultant_y needs positive y-degree in both polynomials")
    return bareiss_determinant(sylvester_matrix(f.coeffs_in_y(), g.coeffs_in_y()))


def resultant_x(f: BivariatePoly, g: BivariatePoly) -> UnivariatePoly:
    """Resultant with respect to x, as a polynomial in y."""
    return resultant_y(f.swap(), g.swap())


def content_y(f: BivariatePoly) -> UnivariatePoly:
    """Monic gcd of the x-polynomial coefficients of f viewed in y."""
    g = UnivariatePoly()
    for c in f.coeffs_in_y():
        g = poly_gcd(g, c)
        if g.degree == 0:
            break
    return g


def content_x(f: BivariatePoly) -> UnivariatePoly:
    return content_y(f.swap())


@dataclass(frozen=True)
class IntersectionSummary:
    common_component: bool
    distinct_x_bound: int | None
    resultant: UnivariatePoly | None = None


def bezout_check(f: BivariatePoly, g: BivariatePoly) -> IntersectionSummary:
    """Decide whether f and g share a component and bound their distinct x-values.

    A shared factor of positive y-degree shows up as an identically vanishing
    y-resultant; a shared factor in x alone shows up as a common factor of the
    y-contents.  Without a common component, the number of distinct x-values
    of common zeros is at most the degree of the squarefree part of the
    resultant, which in turn is at most ``deg f * deg g``.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("bezout_check needs nonzero polynomials")
    cf, cg = content_y(f), content_y(g)
    x_common = poly_gcd(cf, cg).degree > 0
    my, ny = f.degree_y, g.degree_y
    if my > 0 and ny > 0:
        res = resultant_y(f, g)
        common = x_common or res.is_zero()
        bound = None if common else max(squarefree_part(res).degree, 0)
        return IntersectionSummary(common, bound, res)
    if x_common:
        return IntersectionSummary(True, None, None)
    if my == 0 and ny == 0:
        return IntersectionSummary(False, 0, None)
    # exactly one of them is a polynomial in x alone
    xonly = cf if my == 0 else cg
    return IntersectionSummary(False, max(squarefree_part(xonly).degree, 0), None)


# ---------------------------------------------------------------------------
# Real roots: Sturm sequences
# ---------------------------------------------------------------------------


def _frac_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def sturm_sequence(coeffs: Sequence[Fraction]) -> list[list[Fraction]]:
    """Sturm sequence of a real polynomial, each member scaled by a positive
    constant to a primitive integer polynomial (sign patterns are unchanged)."""
    return [[Fraction(c) for c in p] for p in _int_sturm_sequence(coeffs)]


def _int_sturm_sequence(coeffs: Sequence[Fraction]) -> list[list[int]]:
    p0 = _frac_trim([Fraction(c) for c in coeffs])
    if not p0:
        raise ZeroPolynomial("Sturm sequence of the zero polynomial")
    p0 = _int_primitive(_positive_multiple(p0))
    p1 = _int_trim([c * k for k, c in enumerate(p0)][1:])
    seq = [p0]
    while p1:
        p1 = _int_primitive(p1)
        seq.append(p1)
        r, sign = _int_prem(seq[-2], p1)
        # positive multiple of -rem(seq[-2], p1)
        p1 = [-sign * c for c in r]
    return seq


def _variations(signs: Iterable[int]) -> int:
    count = 0
    last = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            count += 1
        last = s
    return count


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _int_sign_at(p: Sequence[int], x: Fraction) -> int:
    """Sign of an integer polynomial at a rational point, in integers only."""
    num, den = x.numerator, x.denominator
    acc = p[-1]
    dpow = 1
    for c in reversed(p[:-1]):
        dpow *= den
        acc = acc * num + c * dpow
    return _sign(acc)


def _variations_at(seq: list[list[int]], x: Fraction) -> int:
    return _variations(_int_sign_at(p, x) for p in seq)


def _variations_at_infinity(seq: list[list[Fraction]], positive: bool) -> int:
    if positive:
        return _variations(_sign(p[-1]) for p in seq)
    return _variations(_sign(p[-1]) * (-1) ** (len(p) - 1) for p in seq)


def _as_endpoint(v, default: float):
    if v is None:
        return default
    if isinstance(v, float):
        if v in (math.inf, -math.inf):
            return v
        raise TypeError("finite endpoints must be exact rationals")
    if isinstance(v, GaussianRational):
        if v.im:
            raise ValueError("endpoint must be real")
        return v.re
    return Fraction(v)


def _count_with_sequence(seq, lo, hi) -> int:
    v_lo = _variations_at_infinity(seq, False) if lo == -math.inf else _variations_at(seq, lo)
    v_hi = _variations_at_infinity(seq, True) if hi == math.inf else _variations_at(seq, hi)
    return v_lo - v_hi


def sturm_count(p, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in the open interval (lo, hi).

    ``p`` is a :class:`UnivariatePoly` with real coefficients or a sequence of
    rationals (lowest degree first).  ``None`` (or ``±math.inf``) stands for an
    infinite endpoint.
    """
    coeffs = p.real_coeffs() if isinstance(p, UnivariatePoly) else [Fraction(c) for c in p]
    lo = _as_endpoint(lo, -math.inf)
    hi = _as_endpoint(hi, math.inf)
    if not lo < hi:
        raise ValueError("need lo < hi")
    seq = _int_sturm_sequence(coeffs)
    for end in (lo, hi):
        if end not in (math.inf, -math.inf) and _int_sign_at(seq[0], end) == 0:
            raise RootAtEndpoint(f"polynomial vanishes at endpoint {end}")
    return _count_with_sequence(seq, lo, hi)


def _frac_squarefree(p: list[Fraction]) -> list[Fraction]:
    q = squarefree_part(UnivariatePoly(p))
    return q.real_coeffs()


def real_rational_roots(p) -> list[Fraction]:
    """All distinct rational roots of a real polynomial, sorted.

    Sturm bisection isolates every real root in an interval holding exactly
    one root.  Each interval is then narrowed by plain sign bisection until
    it is shorter than ``1/Q^2``, where Q bounds every possible denominator
    (the leading coefficient after clearing denominators).  Such an interval
    contains at most one rational of denominator <= Q; it is reconstructed by
    best rational approximation and confirmed exactly.
    """
    coeffs = p.real_coeffs() if isinstance(p, UnivariatePoly) else [Fraction(c) for c in p]
    coeffs = _frac_trim(list(coeffs))
    if len(coeffs) <= 1:
        return []
    q = _frac_squarefree(coeffs)
    if len(q) == 2:
        return [-q[0] / q[1]]
    ints = _positive_multiple(q)
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    Q = abs(ints[-1])
    bound = 1 + max(Fraction(abs(c), abs(ints[-1])) for c in ints[:-1])
    width = Fraction(1, Q * Q)
    seq = _int_sturm_sequence(ints)
    roots: list[Fraction] = []
    isolated: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations_at(seq, lo) - _variations_at(seq, hi)
        if n == 0:
            continue
        if n == 1:
            isolated.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if _int_sign_at(ints, mid) == 0:
            roots.append(mid)
        stack.append((lo, mid))
        stack.append((mid, hi))
    for lo, hi in isolated:
        s_lo = _int_sign_at(ints, lo)
        if s_lo == 0:
            # the root sits on an endpoint and was recorded as a midpoint
            continue
        if _int_sign_at(ints, hi) == 0:
            continue
        root = None
        while hi - lo >= width:
            mid = (lo + hi) / 2
            s_mid = _int_sign_at(ints, mid)
            if s_mid == 0:
                root = mid
                break
            if s_mid == s_lo:
                lo = mid
            else:
                hi = mid
        if root is None:
            cand = ((lo + hi) / 2).limit_denominator(Q)
            if lo < cand < hi and _int_sign_at(ints, cand) == 0:
                root = cand
        if root is not None:
            roots.append(root)
    return sorted(set(roots))


def _real_rational_roots_complex(p: UnivariatePoly) -> list[Fraction]:
    """Rational roots of a Q(i)-polynomial that lie on the real line."""
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    common = poly_gcd(p.real_part(), p.imag_part())
    return real_rational_roots(common) if common.degree > 0 else []


def gaussian_rational_roots(p: UnivariatePoly) -> list[GaussianRational]:
    """All distinct roots of ``p`` that lie in Q(i), sorted by (re, im).

    Degrees one and two are solved directly.  Higher degrees go through the
    real parts: every root ``u + iv`` has ``u`` among the rational roots of
    ``Res_y(p(y), conj(p)(2x - y))``, and for each such ``u`` the imaginary
    part is a real rational root of ``p(u + iv)`` in v.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every root")
    q = squarefree_part(p)
    d = q.degree
    if d <= 0:
        return []
    if d == 1:
        return [-q.coeffs[0]]
    if d == 2:
        c0, c1 = q.coeffs[0], q.coeffs[1]
        s = gaussian_sqrt(c1 * c1 - 4 * c0)
        if s is None:
            return []
        return sorted({(-c1 + s) / 2, (-c1 - s) / 2}, key=GaussianRational.sort_key)
    g1 = BivariatePoly.from_univariate(q, "y")
    shifted = BivariatePoly.x() * 2 - BivariatePoly.y()
    g2 = BivariatePoly.constant(0)
    for c in reversed(q.conj().coeffs):
        g2 = g2 * shifted + c
    found = set()
    for u in _real_rational_roots_complex(resultant_y(g1, g2)):
        fiber = q.compose(UnivariatePoly._raw([GaussianRational(u), I]))
        for v in _real_rational_roots_complex(fiber):
            z = GaussianRational(u, v)
            if not q(z):
                found.add(z)
    return sorted(found, key=GaussianRational.sort_key)


# ---------------------------------------------------------------------------
# Axis-parallel lines
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxisLines:
    """Vertical lines ``x = a`` and horizontal lines ``y = b`` inside Z(f).

    The ``*_outside_field`` flags are set when the curve contains such a line
    whose intercept is not in Q(i) (so it cannot be listed).
    """

    vertical: list
    horizontal: list
    vertical_outside_field: bool = False
    horizontal_outside_field: bool = False

    @property
    def empty(self) -> bool:
        return not (self.vertical or self.horizontal or self.vertical_outside_field or self.horizontal_outside_field)


def _lines_from_content(content: UnivariatePoly) -> tuple[list, bool]:
    if content.degree <= 0:
        return [], False
    roots = gaussian_rational_roots(content)
    return roots, squarefree_part(content).degree > len(roots)


def axis_parallel_lines(f: BivariatePoly) -> AxisLines:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial contains every line")
    vertical, v_out = _lines_from_content(content_y(f))
    horizontal, h_out = _lines_from_content(content_x(f))
    if v_out or h_out:
        warnings.warn(f"{f} contains an axis-parallel line with intercept outside Q(i)", LineOutsideField, stacklevel=2)
    return AxisLines(vertical, horizontal, v_out, h_out)


# ---------------------------------------------------------------------------
# Realification
# ---------------------------------------------------------------------------

Exponent4 = tuple[int, int, int, int]


@dataclass(frozen=True)
class RealSurfacePair:
    """``h1 = Re f`` and ``h2 = Im f`` in the real variables x1..x4, where
    ``x = x1 + i x2`` and ``y = x3 + i x4``."""

    h1: dict = field(default_factory=dict)
    h2: dict = field(default_factory=dict)

    @staticmethod
    def _deg(h: dict) -> int:
        return max((sum(e) for e in h), default=-1)

    @property
    def degree_h1(self) -> int:
        return self._deg(self.h1)

    @property
    def degree_h2(self) -> int:
        return self._deg(self.h2)

    @staticmethod
    def _eval(h: dict, pt: Sequence[Fraction]) -> Fraction:
        total = _FZERO
        for e, c in h.items():
            term = c
            for v, k in zip(pt, e):
                if k:
                    term *= v ** k
            total += term
        return total

    def evaluate(self, pt: Sequence) -> tuple[Fraction, Fraction]:
        pt = [Fraction(v) for v in pt]
        return self._eval(self.h1, pt), self._eval(self.h2, pt)

    def vanishes_at(self, z: tuple) -> bool:
        x, y = gr(z[0]), gr(z[1])
        a, b = self.evaluate((x.re, x.im, y.re, y.im))
        return not a and not b


def _complex_linear_power(k: int, offset: int) -> dict:
    """Expand ``(u + i v)^k`` where u, v are variables ``offset``, ``offset+1``."""
    out: dict = {}
    for m in range(k + 1):
        c = comb(k, m) * (I ** m)
        e = [0, 0, 0, 0]
        e[offset] = k - m
        e[offset + 1] = m
        out[tuple(e)] = c
    return out


def realify(f: BivariatePoly) -> RealSurfacePair:
    if f.is_zero():
        raise ZeroPolynomial("cannot realify the zero polynomial")
    xpow = [_complex_linear_power(k, 0) for k in range(f.degree_x + 1)]
    ypow = [_complex_linear_power(k, 2) for k in range(f.degree_y + 1)]
    acc: dict = {}
    for (i, j), c in f.terms.items():
        for (ex, cx), (ey, cy) in product(xpow[i].items(), ypow[j].items()):
            e = tuple(a + b for a, b in zip(ex, ey))
            acc[e] = acc.get(e, ZERO) + c * cx * cy
    h1 = {e: c.re for e, c in acc.items() if c.re}
    h2 = {e: c.im for e, c in acc.items() if c.im}
    return RealSurfacePair(h1, h2)
