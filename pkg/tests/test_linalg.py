from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordlab.linalg import (format_rational, inverse, matmul, matvec, nullspace, parse_rational, rank,
                           solve, identity)
from oracles import gauss_rank, gauss_solve

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@pytest.mark.parametrize("text, value", [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), ("4/6", Fraction(2, 3)),
                                         (" 7 ", Fraction(7)), (5, Fraction(5))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["1/0", "abc", "1.5", 1.5, "", None])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, TypeError, ZeroDivisionError)):
        parse_rational(bad)


def test_format_rational_drops_unit_denominator():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"


@given(small)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


@settings(max_examples=60)
@given(matrices(3, 4))
def test_rank_matches_oracle(A):
    assert rank(A) == gauss_rank(A)


@settings(max_examples=60)
@given(matrices(3, 5))
def test_nullspace_is_annihilated_and_complete(A):
    N = nullspace(A, 5)
    for v in N:
        assert all(x == 0 for x in matvec(A, v))
    assert len(N) == 5 - gauss_rank(A)


@settings(max_examples=60)
@given(matrices(3, 3), st.lists(small, min_size=3, max_size=3))
def test_solve_agrees_with_oracle(A, b):
    ref = gauss_solve(A, b)
    if ref is None:
        return
    assert solve(A, b) == ref


def test_inverse_of_triangular():
    A = ((1, 2), (0, 1))
    assert matmul(A, inverse(A)) == identity(2)
    assert inverse(A) == ((1, -2), (0, 1))
