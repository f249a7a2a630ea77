"""Independent brute-force oracles and random instance builders for tests.

Nothing here calls the fast paths it is used to check: incidences are found
by evaluating every (point, curve) pair, resultants by numeric Sylvester
determinants, K_{s,t} by enumerating all subsets, energies by enumerating
quadruples.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, product

from cartesian_incidence.exact import GaussianRational, gr
from cartesian_incidence.poly import BivariatePoly, UnivariatePoly

X = BivariatePoly.x()
Y = BivariatePoly.y()


def naive_edges(A, B, curves):
    """Set of (label, iA, iB) by direct evaluation of every pair."""
    A = sorted((gr(a) for a in A), key=GaussianRational.sort_key)
    B = sorted((gr(b) for b in B), key=GaussianRational.sort_key)
    out = set()
    for label, f in curves:
        for ia, a in enumerate(A):
            for ib, b in enumerate(B):
                if not f.evaluate(a, b):
                    out.add((label, ia, ib))
    return out


def det_gaussian(matrix):
    """Determinant over Q(i) by plain Gaussian elimination."""
    m = [list(map(gr, row)) for row in matrix]
    n = len(m)
    det = gr(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if m[r][k]), None)
        if piv is None:
            return gr(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det = det * m[k][k]
        for r in range(k + 1, n):
            factor = m[r][k] / m[k][k]
            for c in range(k, n):
                m[r][c] = m[r][c] - factor * m[k][c]
    return det


def sylvester_numeric(p, q):
    """Sylvester matrix of two univariate coefficient lists (lowest first)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for r in range(n):
        row = [0] * size
        for k, c in enumerate(reversed(p)):
            row[r + k] = c
        rows.append(row)
    for r in range(m):
        row = [0] * size
        for k, c in enumerate(reversed(q)):
            row[r + k] = c
        rows.append(row)
    return rows


def resultant_at(f: BivariatePoly, g: BivariatePoly, x0):
    """Res_y(f, g) evaluated at x = x0, via the specialised Sylvester matrix.

    Uses the formal y-degrees of f and g, so it matches the specialisation
    of the symbolic resultant even where leading coefficients vanish.
    """
    my, ny = f.degree_y, g.degree_y
    fp = [gr(0)] * (my + 1)
    gp = [gr(0)] * (ny + 1)
    for (i, j), c in f.terms.items():
        fp[j] = fp[j] + c * gr(x0) ** i
    for (i, j), c in g.terms.items():
        gp[j] = gp[j] + c * gr(x0) ** i
    return det_gaussian(sylvester_numeric(fp, gp))


def brute_kst(edges_by_point: dict, s: int, t: int) -> bool:
    """True when some s points share at least t curves (all s-subsets tried)."""
    pts = sorted(edges_by_point)
    for combo in combinations(pts, s):
        common = set(edges_by_point[combo[0]])
        for p in combo[1:]:
            common &= set(edges_by_point[p])
        if len(common) >= t:
            return True
    return False


def brute_energy(A, B, f) -> int:
    vals = [f.evaluate(a, b) for a in A for b in B]
    return sum(1 for u in vals for v in vals if u == v)


def brute_rich_inversions(A, k):
    """Every pair-derived candidate, no dedup before scoring, richness by
    linear scan over A."""
    A = [gr(a) for a in A]
    found = set()
    for x, y, x2, y2 in product(A, repeat=4):
        if y == y2:
            continue
        b = (y2 * x2 - y * x) / (y - y2)
        a = y * (x + b)
        if not a:
            continue
        rich = 0
        for z in A:
            if z + b == 0:
                continue
            w = a / (z + b)
            if any(w == u for u in A):
                rich += 1
        if rich >= k:
            found.add((a, b, rich))
    return found


# ---------------------------------------------------------------------------
# random objects
# ---------------------------------------------------------------------------


def rand_rational(rng: random.Random, num: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_gaussian(rng: random.Random, complex_prob: float = 0.5, num: int = 6, den: int = 4) -> GaussianRational:
    re = rand_rational(rng, num, den)
    im = rand_rational(rng, num, den) if rng.random() < complex_prob else 0
    return GaussianRational(re, im)


def rand_poly(rng: random.Random, degree: int, complex_prob: float = 0.0, density: float = 0.7) -> BivariatePoly:
    """Random polynomial of total degree exactly ``degree``."""
    while True:
        terms = {}
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                if rng.random() < density:
                    terms[(i, j)] = rand_gaussian(rng, complex_prob, 5, 3)
        f = BivariatePoly(terms)
        if f.degree == degree:
            return f


def through(f: BivariatePoly, x, y) -> BivariatePoly:
    """Shift f by a constant so that it vanishes at (x, y)."""
    return f - f.evaluate(x, y)


def line_through(p, q) -> BivariatePoly:
    (x1, y1), (x2, y2) = p, q
    return (Y - y1) * (x2 - x1) - (X - x1) * (y2 - y1)


def random_curve_on_grid(rng: random.Random, A, B, max_degree: int = 3, complex_prob: float = 0.0) -> BivariatePoly:
    """A curve of degree <= max_degree with a decent chance of many incidences."""
    kind = rng.randrange(5)
    pt = lambda: (rng.choice(A), rng.choice(B))  # noqa: E731
    if kind == 0:
        f = through(rand_poly(rng, rng.randint(1, max_degree), complex_prob), *pt())
    elif kind == 1:
        f = BivariatePoly.constant(1)
        for _ in range(rng.randint(1, max_degree)):
            p, q = pt(), pt()
            if len(A) * len(B) == 1:
                q = (p[0] + 1, p[1] + 1)
            while p == q:
                q = pt()
            f = f * line_through(p, q)
    elif kind == 2:
        # y = g(x) through grid points
        deg = rng.randint(1, max_degree)
        xs = rng.sample(list(A), min(deg + 1, len(A)))
        g = UnivariatePoly()
        for i, xi in enumerate(xs):
            term = UnivariatePoly.constant(rng.choice(B))
            for j, xj in enumerate(xs):
                if j != i:
                    term = term * UnivariatePoly([-xj, 1]) * (1 / (xi - xj))
            g = g + term
        f = Y - BivariatePoly.from_univariate(g, "x")
    elif kind == 3:
        # contains a vertical or horizontal line
        line = (X - rng.choice(A)) if rng.random() < 0.5 else (Y - rng.choice(B))
        rest_degree = rng.randint(0, max_degree - 1)
        rest = through(rand_poly(rng, rest_degree, complex_prob), *pt()) if rest_degree else BivariatePoly.constant(1)
        f = line * rest if rest else line
    else:
        f = rand_poly(rng, rng.randint(1, max_degree), complex_prob)
    if f.is_zero() or f.degree > max_degree or f.degree < 1:
        return line_through((A[0], B[0]), (A[-1], B[-1])) if (A[0], B[0]) != (A[-1], B[-1]) else X - A[0]
    return f


def random_factor_set(rng: random.Random, size: int, complex_prob: float = 0.0) -> list:
    out = set()
    while len(out) < size:
        out.add(rand_gaussian(rng, complex_prob, 8, 3))
    return sorted(out, key=GaussianRational.sort_key)
