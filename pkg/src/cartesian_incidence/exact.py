"""Exact arithmetic in Q and Q(i).

Rationals are plain :class:`fractions.Fraction` values (always in lowest terms
with a positive denominator).  :class:`GaussianRational` pairs two of them.

Text grammar for Gaussian rationals::

    INT := ['-'] digits
    RAT := INT ['/' digits]
    GR  := RAT | RAT ('+'|'-') RAT 'i' | ['-'] RAT 'i' | ['-'] 'i'

No whitespace is allowed anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

from .errors import DivisionByZero, ParseError

Rational = Fraction
Scalar = Union[int, Fraction, "GaussianRational"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GaussianRational:
    """An element ``re + im*i`` of Q(i).  Immutable and hashable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_gaussian(value)
        return cls._make(_as_fraction(value), _ZERO)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    # -- predicates -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # -- arithmetic -----------------------------------------------------

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._make(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational._make(self.re + other.re, self.im)
            if not self.im:
                return GaussianRational._make(self.re + other.re, other.im)
            return GaussianRational._make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if not other.im:
                return GaussianRational._make(self.re - other.re, self.im)
            return GaussianRational._make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational._make(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b:
                if not d:
                    return GaussianRational._make(a * c, _ZERO)
                return GaussianRational._make(a * c, a * d)
            if not d:
                return GaussianRational._make(a * c, b * c)
            return GaussianRational._make(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            if not self.im:
                return GaussianRational._make(self.re * other, _ZERO)
            return GaussianRational._make(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conj(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|z|^2``, always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def inv(self) -> "GaussianRational":
        if not self.im:
            if not self.re:
                raise DivisionByZero("inverse of zero")
            return GaussianRational._make(1 / self.re, _ZERO)
        n = self.norm()
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            if not other.im:
                if not other.re:
                    raise DivisionByZero("division by zero")
                if not self.im:
                    return GaussianRational._make(self.re / other.re, _ZERO)
                return GaussianRational._make(self.re / other.re, self.im / other.re)
            return self * other.inv()
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return GaussianRational._make(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return self.inv() * other
        return NotImplemented

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inv() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        return format_gaussian(self)

    def __repr__(self) -> str:
        return f"GaussianRational({format_gaussian(self)!r})"


ZERO = GaussianRational._make(_ZERO, _ZERO)
ONE = GaussianRational._make(_ONE, _ZERO)
I = GaussianRational._make(_ZERO, _ONE)


def gr(value) -> GaussianRational:
    """Coerce an int, Fraction, string or GaussianRational."""
    return GaussianRational.coerce(value)


def _format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    """Canonical text form; ``parse_gaussian(format_gaussian(z)) == z``."""
    re, im = z.re, z.im
    if not im:
        return _format_rational(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = _format_rational(im) + "i"
    if not re:
        return imag
    if im == 1 or im == -1:
        # the mixed form requires an explicit coefficient
        imag = _format_rational(im) + "i"
    if im > 0:
        return f"{_format_rational(re)}+{imag}"
    return f"{_format_rational(re)}{imag}"


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def error(self, message: str):
        offset = len(self.text[: self.pos].encode("utf-8"))
        raise ParseError(message, offset, self.text)

    def digits(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            self.error("expected digits")
        return int(self.text[start : self.pos])

    def rational(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            sign = -1
            self.pos += 1
        num = self.digits()
        den = 1
        if self.peek() == "/":
            self.pos += 1
            den_pos = self.pos
            den = self.digits()
            if den == 0:
                self.pos = den_pos
                self.error("zero denominator")
        return Fraction(sign * num, den)


def parse_gaussian(text: str) -> GaussianRational:
    """Parse the GR grammar.  Raises :class:`ParseError` with a byte offset."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    s = _Scanner(text)
    if not text:
        s.error("empty input")
    # ['-'] 'i'
    if text in ("i", "-i"):
        return GaussianRational._make(_ZERO, Fraction(-1 if text[0] == "-" else 1))
    first = s.rational()
    if s.peek() == "":
        return GaussianRational._make(first, _ZERO)
    if s.peek() == "i":
        s.pos += 1
        if s.peek() != "":
            s.error("unexpected trailing input")
        return GaussianRational._make(_ZERO, first)
    if s.peek() in "+-":
        sign = -1 if s.peek() == "-" else 1
        s.pos += 1
        second = s.rational()
        if s.peek() != "i":
            s.error("expected 'i'")
        s.pos += 1
        if s.peek() != "":
            s.error("unexpected trailing input")
        return GaussianRational._make(first, sign * second)
    s.error(f"unexpected character {s.peek()!r}")


def rational_sqrt(q: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def gaussian_sqrt(z: GaussianRational) -> GaussianRational | None:
    """A square root of ``z`` inside Q(i), or None when none exists."""
    if not z.im:
        if z.re >= 0:
            r = rational_sqrt(z.re)
            return None if r is None else GaussianRational._make(r, _ZERO)
        r = rational_sqrt(-z.re)
        return None if r is None else GaussianRational._make(_ZERO, r)
    modulus = rational_sqrt(z.norm())
    if modulus is None:
        return None
    u = rational_sqrt((z.re + modulus) / 2)
    if u is None or not u:
        return None
    root = GaussianRational._make(u, z.im / (2 * u))
    return root if root * root == z else None
