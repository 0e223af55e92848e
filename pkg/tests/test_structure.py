import random

import pytest

from ordlab.corpus import random_pairs
from ordlab.cover import make_cover
from ordlab.space import K4, ORTH, Subspace
from ordlab.structure import (band_projection, disjoint_complement, disjoint_direct, disjoint_via_cover,
                              is_band, is_disjoint, is_ideal, is_projection)
from oracles import orthant_disjoint


def test_k4_disjoint_pair_by_both_routes():
    v = is_disjoint(K4, (1, 1, 1), (-1, -1, 1))
    assert v.direct_result and v.cover_result and v.agree


def test_k4_non_disjoint_pair():
    v = is_disjoint(K4, (0, 0, 1), (1, 0, 1))
    assert not v.direct_result and v.agree


@pytest.mark.parametrize("space", [ORTH(3), K4])
def test_routes_agree_on_random_pairs(space):
    cov = make_cover(space).witness
    for x, y in random_pairs(space, 40, seed=9, cover_rows=cov.embedding):
        assert disjoint_direct(space, x, y) == disjoint_via_cover(cov, x, y)


def test_orthant_disjointness_matches_supports():
    rng = random.Random(1)
    for _ in range(100):
        x = tuple(rng.choice([0, 0, 1, -2]) for _ in range(3))
        y = tuple(rng.choice([0, 0, 3, -1]) for _ in range(3))
        assert disjoint_direct(ORTH(3), x, y) == orthant_disjoint(x, y)


def test_ideals_in_orthant():
    assert is_ideal(Subspace(ORTH(3), [(1, 0, 0), (0, 1, 0)])).holds
    assert is_ideal(Subspace(ORTH(3), [(1, 1, 0)])).fails


def test_k4_band_without_projection():
    b = Subspace(K4, [(1, 1, 1)])
    res = is_band(b)
    assert res.holds
    comp = res.witness
    assert len(comp.basis) == 1
    c = comp.basis[0]
    assert c[0] == c[1] == -c[2]
    proj = band_projection(K4, b)
    assert proj.fails and proj.witness == 2


def test_orthant_band_projection():
    res = band_projection(ORTH(3), Subspace(ORTH(3), [(1, 0, 0), (0, 0, 1)]))
    assert res.holds
    P = res.witness
    assert P == ((1, 0, 0), (0, 0, 0), (0, 0, 1))
    assert is_projection(P)


def test_disjoint_complement_of_axis():
    res = disjoint_complement(ORTH(3), [(1, 0, 0)])
    assert res.holds
    assert {tuple(v) for v in res.witness.basis} <= {(0, 1, 0), (0, 0, 1)}
    assert len(res.witness.basis) == 2
