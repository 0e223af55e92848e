import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ordlab.corpus import random_families, random_matrix
from ordlab.gallery import UnitVectors
from ordlab.operators import (LinOp, ModulusAdditivityError, check_kat, classify, elin_operator,
                              is_positive, is_semiorder_bounded, lattice_ops_Lb, modulus, modulus_at,
                              op_neg, probe_modulus_additivity, semiorder_continuity)
from ordlab.semiorder import SemiOrderSpace
from ordlab.space import K4, ORTH
from oracles import orthant_modulus

O2, O3 = ORTH(2), ORTH(3)


def test_positivity():
    assert is_positive(LinOp(O2, O2, ((1, 2), (0, 1)))).holds
    res = is_positive(LinOp(O2, O2, ((1, -1), (0, 1))))
    assert res.fails and res.witness is not None
    # K4 -> R^1 via the third coordinate is positive
    assert is_positive(LinOp(K4, ORTH(1), ((0, 0, 1),))).holds


def test_shape_is_checked():
    with pytest.raises(ValueError):
        LinOp(O2, O3, ((1, 0), (0, 1)))


def test_finite_dimensional_operators_are_continuous():
    op = LinOp(O3, O2, ((1, -2, 0), (3, 0, 1)))
    assert semiorder_continuity(op).holds
    assert is_semiorder_bounded(op).holds
    rep = classify(op, budget=10)
    assert rep.order_continuous.holds and rep.otilde_continuous.holds
    assert check_kat(rep).holds and not rep.violations()


def test_elin_operator_classification():
    op = elin_operator()
    assert is_positive(op).holds
    assert semiorder_continuity(op, [UnitVectors(Fraction(1))]).fails
    rep = classify(op)
    assert not rep.violations()
    assert check_kat(rep).holds


def test_semiorder_domain_kernel_obstruction():
    sos = SemiOrderSpace(3, O2, ((1, 0, 0), (0, 1, 0)))
    op = LinOp(sos, O3, ((0, 0, 1), (0, 0, 0), (0, 0, 0)))
    res = semiorder_continuity(op, random_families(3, 20, 1))
    assert res.fails


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_modulus_matches_sign_pattern_oracle(seed):
    rng = random.Random(seed)
    T = random_matrix(rng, 3, 3)
    op = LinOp(O3, O3, T)
    x = tuple(Fraction(rng.randint(0, 4), rng.choice((1, 2))) for _ in range(3))
    assert modulus_at(op, x) == orthant_modulus(T, x)
    M = modulus(op)
    assert [list(r) for r in M.rep] == [[abs(Fraction(a)) for a in r] for r in T]
    assert modulus(op_neg(op)).rep == M.rep


def test_lattice_operations_on_operators():
    T = LinOp(O2, O2, ((1, -2), (0, 3)))
    S = LinOp(O2, O2, ((0, 1), (2, -1)))
    ops = lattice_ops_Lb(T, S)
    assert [list(r) for r in ops["sup"].rep] == [[1, 1], [2, 3]]
    assert [list(r) for r in ops["inf"].rep] == [[0, -2], [0, -1]]


def test_modulus_needs_positive_argument():
    with pytest.raises(ValueError):
        modulus_at(LinOp(O2, O2, ((1, 0), (0, 1))), (-1, 0))


def test_modulus_on_a_non_lattice_domain_is_not_additive():
    op = LinOp(K4, ORTH(1), ((1, 1, 0),))
    with pytest.raises(ModulusAdditivityError):
        probe_modulus_additivity(op)
