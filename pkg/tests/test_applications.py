import random
from fractions import Fraction

import pytest

from cartesian_incidence.applications import (
    InversionMap,
    distance_polynomial,
    expansion_curve,
    hyperbola,
    inversion_experiment,
    inversion_richness,
    line_distance_set,
    rich_inversions,
    sumset,
    sumset_expander,
)
from cartesian_incidence.errors import DegenerateSlope, KTooSmall, ZeroInA
from cartesian_incidence.exact import gr

from oracles import brute_energy, brute_rich_inversions, random_factor_set


def as_triples(maps):
    return {(m.a, m.b, m.richness) for m in maps}


# -- inversions ----------------------------------------------------------------


def test_plus_minus_one():
    maps = rich_inversions([1, -1], 2)
    assert [(m.a, m.b) for m in maps] == [(gr(-1), gr(0)), (gr(1), gr(0))]
    assert all(m.richness == 2 for m in maps)


def test_one_two_matches_oracle():
    assert as_triples(rich_inversions([1, 2], 2)) == brute_rich_inversions([1, 2], 2)


def test_two_elements_cannot_be_three_rich():
    assert rich_inversions([1, 2], 3) == []


def test_k_too_small():
    with pytest.raises(KTooSmall):
        rich_inversions([1, 2, 3], 1)


def test_needs_two_elements():
    with pytest.raises(ValueError):
        rich_inversions([1], 2)


def test_pole_is_not_counted():
    A = [gr(v) for v in (-1, 1, 2)]
    # z -> 2/(z + 1): -1 is the pole, 1 -> 1, 2 -> 2/3
    assert inversion_richness(gr(2), gr(1), A) == 1
    assert InversionMap(gr(2), gr(1), 1)(-1) is None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_arithmetic_progression_matches_oracle(n):
    A = list(range(1, n + 1))
    for k in (2, 3):
        assert as_triples(rich_inversions(A, k)) == brute_rich_inversions(A, k)


@pytest.mark.parametrize("seed", range(8))
def test_random_sets_match_oracle(seed):
    rng = random.Random(seed)
    A = random_factor_set(rng, rng.randint(2, 5), complex_prob=0.3)
    assert as_triples(rich_inversions(A, 2)) == brute_rich_inversions(A, 2)


def test_inversion_experiment_checks_pass():
    rep = inversion_experiment(range(1, 7), 2)
    assert rep.failures == [] and rep.kst.passed
    assert rep.incidences >= 2 * rep.count
    assert rep.normalized == Fraction(rep.count * 8, 6**4)
    for m in rep.maps:
        assert sum(1 for z in range(1, 7) if m(z) in {gr(v) for v in range(1, 7)}) == m.richness


def test_inversion_curve_is_graph_of_map():
    m = InversionMap(gr(3), gr("1/2"), 0)
    for z in (1, 2, gr("i")):
        assert m.curve().evaluate(z, m(z)) == 0


# -- A + 1/A -----------------------------------------------------------------


def test_sumset_examples():
    rep = sumset_expander([1])
    assert rep.mixed_size == 1
    assert sumset([1], [1]) == [gr(2)]
    rep = sumset_expander([1, 2])
    assert sumset([1, 2], [1, Fraction(1, 2)]) == [gr("3/2"), gr(2), gr("5/2"), gr(3)]
    assert rep.mixed_size == 4


@pytest.mark.parametrize("n", range(2, 9))
def test_sumset_on_progression(n):
    A = list(range(1, n + 1))
    oracle = {Fraction(a) + Fraction(1, b) for a in A for b in A}
    assert len(oracle) == n * n
    rep = sumset_expander(A)
    assert rep.mixed_size == n * n
    assert rep.failures == [] and rep.kst.passed
    assert rep.min_curve_incidences >= n and rep.incidences >= n**3
    assert rep.curves_checked == n * n


def test_sumset_rejects_zero():
    with pytest.raises(ZeroInA):
        sumset_expander([0, 1])


def test_expansion_curve_witnesses():
    a, b = gr(2), gr(3)
    f = expansion_curve(a, b)
    for a2 in (gr(1), gr(5), gr("1/2")):
        assert f.evaluate(a + a2, 1 / a2 + 1 / b) == 0


# -- distances between lines ---------------------------------------------------


def test_distance_examples():
    rep = line_distance_set([0], [0], 5)
    assert rep.distinct == 1
    rep = line_distance_set([0, 1], [0, 1], 1)
    assert rep.distinct == 3 and rep.energy == 6
    assert rep.energy >= rep.lower_bound == Fraction(16, 3)


def test_distance_polynomial_is_squared_distance():
    m = gr("3/2")
    f = distance_polynomial(m)
    for x, y in [(0, 0), (1, 2), (-3, gr("1/3"))]:
        x, y = gr(x), gr(y)
        # (x, 0) to (y, m y)
        assert f.evaluate(x, y) == (x - y) ** 2 + (m * y) ** 2


def test_hyperbola_is_difference_of_distances():
    m = gr(2)
    f = distance_polynomial(m)
    h = hyperbola(1, 3, m)
    for x, y in [(0, 0), (5, -2), (gr("1/2"), 7)]:
        assert h.evaluate(x, y) == f.evaluate(x, 1) - f.evaluate(y, 3)


def test_degenerate_slope():
    with pytest.raises(DegenerateSlope):
        line_distance_set([0, 1], [0, 1], 0)


def test_complex_inputs_need_flag():
    with pytest.raises(ValueError):
        line_distance_set([gr("i"), 1], [0, 1], 1)
    rep = line_distance_set([gr("i"), 1], [0, 1], 1, complex_ok=True)
    assert rep.failures == []


@pytest.mark.parametrize("n, m", [(3, 1), (4, 2), (5, Fraction(1, 3)), (6, 1)])
def test_distance_energy_matches_oracle(n, m):
    A = list(range(n))
    rep = line_distance_set(A, A, m)
    f = distance_polynomial(m)
    gA = [gr(a) for a in A]
    assert rep.energy == brute_energy(gA, gA, f)
    assert rep.distinct == len({f.evaluate(a, b) for a in gA for b in gA})
    assert rep.energy * rep.distinct >= n**4
    assert rep.failures == [] and rep.kst.passed
