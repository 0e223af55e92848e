from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordlab.exppoly import ExpPoly, eventual_sign, nonneg_from, positive_from, sign_at
from oracles import first_stable_sign

rhos = st.sampled_from([Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(9, 10), Fraction(3, 2)])
terms = st.lists(st.tuples(st.integers(-6, 6).map(Fraction), rhos, st.integers(-2, 2)), min_size=1, max_size=3)


def test_evaluation():
    f = ExpPoly([(3, Fraction(1, 2), 1), (-1, 1, 0)])
    assert f(2) == Fraction(3 * 2, 4) - 1


def test_arithmetic_matches_pointwise():
    f = ExpPoly([(1, Fraction(1, 2), 0)])
    g = ExpPoly([(2, 1, -1)])
    for n in range(1, 8):
        assert (f + g)(n) == f(n) + g(n)
        assert (f - g)(n) == f(n) - g(n)
        assert (f * g)(n) == f(n) * g(n)


def test_limit_and_dominant():
    f = ExpPoly([(5, Fraction(1, 2), 3), (2, 1, -1), (7, 1, 0)])
    assert f.limit() == 7
    assert f.dominant()[0] == (Fraction(1), 0)


@pytest.mark.parametrize("f, expected", [
    (ExpPoly([(1, 1, -1)]), 1),
    (ExpPoly([(1, 1, -1), (Fraction(-1, 5), 1, 0)]), None),
    (ExpPoly([(3, 1, 0), (-10, Fraction(1, 2), 0)]), 2),
    (ExpPoly(), None),
])
def test_positive_from(f, expected):
    assert positive_from(f) == expected


def test_crossing_point_is_exact():
    # 1/n - 1/100 is nonnegative exactly up to n = 100
    f = ExpPoly([(1, 1, -1), (Fraction(-1, 100), 1, 0)])
    s = eventual_sign(f)
    assert not s.nonneg and s.index == 101
    assert sign_at(f, 100) == 0 and sign_at(f, 101) == -1


def test_nonneg_from_after_late_crossing():
    # n - 50 (as n**1 with rho 1) is nonnegative from 50
    f = ExpPoly([(1, 1, 1), (-50, 1, 0)])
    assert nonneg_from(f) == 50


@settings(max_examples=150, deadline=None)
@given(terms)
def test_eventual_sign_matches_scan(ts):
    f = ExpPoly(ts)
    if f.is_zero():
        return
    s = eventual_sign(f)
    N, nonneg = first_stable_sign(f, 1, horizon=max(400, s.index + 50))
    assert s.nonneg == nonneg
    assert s.index == N
