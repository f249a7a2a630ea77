import json
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from cartesian_incidence.bounds import (
    bound_general_st,
    bound_kst,
    bound_main,
    bound_real,
    decimal_text,
    evaluate,
    floor_log2,
    iroot,
    scaled_root,
    significant,
    trend_table,
)


def values(report):
    return {t.name: t.value for t in report.terms}


# -- helpers -----------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 10**40), st.integers(1, 7))
def test_iroot_brackets(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**12), st.integers(2, 5))
def test_scaled_root_is_floor_to_six_places(radicand, k):
    value, exact = scaled_root(Fraction(1), radicand, k)
    if exact:
        assert value**k == radicand
    else:
        assert value**k < radicand < (value + Fraction(1, 10**6)) ** k
        assert (value * 10**6).denominator == 1


def test_floor_log2():
    assert floor_log2(1) == (0, True)
    assert floor_log2(1024) == (10, True)
    v, exact = floor_log2(3)
    assert not exact and v == Fraction(1584962, 10**6)
    assert v <= Fraction(math.log2(3)) < v + Fraction(1, 10**6)


def test_significant_and_decimal_text():
    assert significant(Fraction(2, 3)) == Fraction(666666, 10**6)
    assert significant(Fraction(123456789)) == 123456000
    assert significant(Fraction(0)) == 0
    assert decimal_text(Fraction(1, 3)) == "0.333333"
    assert decimal_text(Fraction(256)) == "256.000000"


# -- evaluator examples -------------------------------------------------------


def test_main_examples():
    assert list(values(bound_main(1, 1, 1, 1)).values()) == [1, 1, 1]
    rep = bound_main(1, 1, 64, 64)
    assert rep.terms[0].value == 256 and rep.terms[0].exact
    rep = bound_main(2, 1, 1, 1)
    assert values(rep)["curves"] == 16 and rep.dominant == "curves"


def test_real_examples():
    assert list(values(bound_real(1, 1, 1, 1)).values()) == [1, 1, 1]
    v = values(bound_real(8, 1, 1, 1))
    assert v["main"] == 4 and v["curves"] == 64
    assert values(bound_real(1, 4, 10, 1))["log"] == 120


def test_kst_examples():
    rep = bound_kst(2, 2, 16, 16)
    v = values(rep)
    assert decimal_text(v["main"]) == "90.509667" and not rep.terms[0].exact
    assert v["linear"] == 32
    assert values(bound_kst(2, 1, 100, 1)) == {"main": 100, "linear": 2}
    # s = 1: t^(1) |X| |Y|^0 + |Y|
    assert values(bound_kst(1, 5, 7, 3)) == {"main": 35, "linear": 3}


def test_general_examples():
    v = values(bound_general_st(2, 32, 32))
    assert decimal_text(v["main"]) == "101.593667"
    assert list(values(bound_general_st(2, 1, 1)).values()) == [1, 1, 1]
    rep = bound_general_st(3, 243, 1)
    assert values(rep) == {"main": 27, "points": 243, "curves": 1}
    assert rep.terms[0].exact and rep.notes


def test_general_needs_s_at_least_two():
    with pytest.raises(ValueError):
        bound_general_st(1, 4, 4)


def test_rejects_nonpositive():
    with pytest.raises(ValueError):
        bound_main(0, 1, 1, 1)
    with pytest.raises(ValueError):
        bound_kst(0, 1, 1, 1)


def test_dominant_ties_take_first_listed():
    assert bound_main(1, 1, 1, 1).dominant == "main"


def test_ratio_only_with_observed():
    rep = bound_main(1, 1, 64, 64)
    assert rep.ratio is None and "ratio" not in rep.to_json()
    rep = rep.with_observed(100)
    assert rep.ratio == significant(Fraction(100) / rep.total)
    assert rep.to_json()["ratio_decimal"] == decimal_text(rep.ratio)


def test_evaluate_dispatch():
    assert evaluate("main", {"d": 1, "M": 1, "nP": 64, "nC": 64}).terms[0].value == 256
    with pytest.raises(ValueError):
        evaluate("kst", {"s": 2})


# -- properties ---------------------------------------------------------------

GRID = [1, 2, 5, 17]


@pytest.mark.parametrize("fn", [bound_main, bound_real])
def test_four_argument_evaluators_are_monotone(fn):
    for args in product(GRID, repeat=4):
        base = fn(*args)
        for k in range(4):
            bigger = list(args)
            bigger[k] += 1
            other = fn(*bigger)
            for a, b in zip(base.terms, other.terms):
                assert a.value <= b.value, (args, k, a.name)


def test_kst_monotone_in_t_and_sizes():
    for s, t, nx, ny in product(GRID, repeat=4):
        base = bound_kst(s, t, nx, ny).total
        for k in (1, 2, 3):
            bigger = [s, t, nx, ny]
            bigger[k] += 1
            assert bound_kst(*bigger).total >= base


def test_kst_is_not_monotone_in_s():
    # t^(1/s) shrinks as s grows: a property of the formula, not of rounding
    assert bound_kst(2, 4, 10, 1).total < bound_kst(1, 4, 10, 1).total


def test_general_monotone_in_sizes():
    for s, p, c in product([2, 3, 4], GRID, GRID):
        base = bound_general_st(s, p, c).total
        assert bound_general_st(s, p + 1, c).total >= base
        assert bound_general_st(s, p, c + 1).total >= base


def test_exact_cases_are_exact():
    for n in (1, 8, 27, 64, 1000):
        rep = bound_main(1, 1, n, n)
        # (n^4)^(1/3) is an integer exactly when n is a cube
        assert rep.terms[0].exact and rep.terms[0].value == iroot(n, 3) ** 4


def test_reports_serialise_identically():
    a = json.dumps(bound_main(3, 2, 100, 50).with_observed(77).to_json(), sort_keys=True)
    b = json.dumps(bound_main(3, 2, 100, 50).with_observed(77).to_json(), sort_keys=True)
    assert a == b


# -- trend table ----------------------------------------------------------------


def test_trend_single_zero_row():
    table = trend_table([(4, 0, bound_main(1, 1, 4, 4))])
    assert table.ratios == [0]


def test_trend_constant_ratio():
    rep = bound_main(1, 1, 64, 64)
    total = rep.total
    assert total.denominator == 1
    table = trend_table([(1, int(total) // 2, rep), (2, int(total) // 2, rep)])
    assert table.max_ratio == table.min_ratio == Fraction(1, 2)
    lines = table.to_csv().splitlines()
    assert lines[0] == "n,observed,main,log,curves,ratio"
    assert lines[-2].endswith("0.500000") and lines[-1].startswith("min")


def test_trend_rejects_unsorted_and_empty():
    rep = bound_main(1, 1, 1, 1)
    with pytest.raises(ValueError):
        trend_table([])
    with pytest.raises(ValueError):
        trend_table([(3, 1, rep), (2, 1, rep)])
