"""Instance files, instance generators and atomic output helpers.

Instance JSON::

    {"name": "...", "seed": 0, "generator": "arithmetic",
     "A": ["1", "1/2", ...], "B": [...],
     "curves": [{"label": "C_1", "terms": [{"i": 0, "j": 1, "c": "1"}, ...]}]}

Only ``A``, ``B`` and ``curves`` are required.  All scalars use the Gaussian
rational text grammar.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import DuplicatePoint, ParseError, ZeroPolynomial
from .exact import GaussianRational, gr, parse_gaussian
from .incidence import CartesianPointSet, CurveFamily
from .poly import BivariatePoly, UnivariatePoly

GENERATORS = ("arithmetic", "geometric", "random")


@dataclass(frozen=True)
class Instance:
    points: CartesianPointSet
    family: CurveFamily
    name: str = ""
    seed: int | None = None
    generator: str | None = None

    def to_json(self) -> dict:
        out: dict = {}
        if self.name:
            out["name"] = self.name
        if self.seed is not None:
            out["seed"] = self.seed
        if self.generator is not None:
            out["generator"] = self.generator
        out["A"] = [str(a) for a in self.points.A]
        out["B"] = [str(b) for b in self.points.B]
        out["curves"] = [{"label": label, **f.to_json()} for label, f in self.family]
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"


def _parse_scalars(raw, name: str) -> list[GaussianRational]:
    if not isinstance(raw, list):
        raise ParseError(f"'{name}' must be a list of strings")
    values = []
    seen: dict[GaussianRational, int] = {}
    for idx, text in enumerate(raw):
        try:
            v = parse_gaussian(text)
        except ParseError as exc:
            raise ParseError(f"{name}[{idx}]: {exc}") from None
        if v in seen:
            raise DuplicatePoint(f"{name}[{idx}] = {text!r} duplicates {name}[{seen[v]}]")
        seen[v] = idx
        values.append(v)
    return values


def instance_from_json(obj) -> Instance:
    if not isinstance(obj, dict):
        raise ParseError("instance must be a JSON object")
    for key in ("A", "B", "curves"):
        if key not in obj:
            raise ParseError(f"instance is missing '{key}'")
    A = _parse_scalars(obj["A"], "A")
    B = _parse_scalars(obj["B"], "B")
    if not isinstance(obj["curves"], list):
        raise ParseError("'curves' must be a list")
    curves = []
    for idx, c in enumerate(obj["curves"]):
        if not isinstance(c, dict) or not isinstance(c.get("label"), str):
            raise ParseError(f"curves[{idx}] needs a string 'label'")
        try:
            f = BivariatePoly.from_json(c)
        except ParseError as exc:
            raise ParseError(f"curves[{idx}]: {exc}") from None
        if f.is_zero():
            raise ZeroPolynomial(f"curves[{idx}] ({c['label']!r}) is the zero polynomial")
        curves.append((c["label"], f))
    seed = obj.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise ParseError("'seed' must be an integer")
    return Instance(
        CartesianPointSet(A, B),
        CurveFamily(curves),
        name=str(obj.get("name", "")),
        seed=seed,
        generator=obj.get("generator"),
    )


def loads_instance(text: str) -> Instance:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})", exc.pos) from None
    return instance_from_json(obj)


def parse_instance(path) -> Instance:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads_instance(text)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def factor_set(kind: str, n: int, rng: random.Random) -> list[GaussianRational]:
    if n < 1:
        raise ValueError("n must be at least 1")
    if kind == "arithmetic":
        return [gr(k) for k in range(1, n + 1)]
    if kind == "geometric":
        return [gr(2**k) for k in range(n)]
    if kind == "random":
        seen: set[Fraction] = set()
        out = []
        while len(out) < n:
            q = Fraction(rng.randint(-1000, 1000), rng.randint(1, 1000))
            if q not in seen:
                seen.add(q)
                out.append(gr(q))
        return out
    raise ValueError(f"unknown generator kind {kind!r}")


def _interpolant(xs: list[GaussianRational], ys: list[GaussianRational]) -> UnivariatePoly:
    total = UnivariatePoly()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = UnivariatePoly.constant(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = term * UnivariatePoly([-xj, 1]) * (1 / (xi - xj))
        total = total + term
    return total


def random_graph_curves(A, B, count: int, rng: random.Random, max_degree: int = 2) -> list[tuple[str, BivariatePoly]]:
    """Curves y = g(x) interpolating randomly chosen points of A x B.

    Each curve passes through deg+1 grid points (with distinct x); constant
    interpolants are replaced by a slope-one line so no curve is horizontal.
    """
    A, B = list(A), list(B)
    curves = []
    for idx in range(count):
        deg = min(rng.randint(1, max_degree), len(A) - 1)
        if deg < 1:
            a, b = A[0], rng.choice(B)
            g = UnivariatePoly([b - a, 1])
        else:
            xs = rng.sample(A, deg + 1)
            ys = [rng.choice(B) for _ in xs]
            g = _interpolant(xs, ys)
            if g.degree < 1:
                g = UnivariatePoly([ys[0] - xs[0], 1])
        f = BivariatePoly.y() - BivariatePoly.from_univariate(g, "x")
        curves.append((f"C_{idx + 1}", f))
    return curves


def generate_instance(kind: str, n: int, seed: int = 0) -> Instance:
    """A = B from the chosen generator plus n seeded graph curves."""
    rng = random.Random(seed)
    A = factor_set(kind, n, rng)
    B = list(A)
    family = CurveFamily(random_graph_curves(A, B, n, rng))
    return Instance(CartesianPointSet(A, B), family, name=f"{kind}-{n}", seed=seed, generator=kind)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


TREND_HEADER = ["app", "n", "observed", "bound_terms", "ratio"]


def append_trend_rows(path, rows: list[list]) -> None:
    """Append rows to a trend CSV, writing the header for a new file."""
    path = Path(path)
    existing = path.read_text(encoding="utf-8") if path.exists() else ""
    if not existing:
        existing = csv_text(TREND_HEADER, [])
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    atomic_write_text(path, existing + buf.getvalue())
