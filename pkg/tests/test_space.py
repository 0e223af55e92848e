import random
from fractions import Fraction

import pytest

from ordlab.space import (HALF, K4, ORTH, Cone, OrderedSpace, Subspace, cone_axioms, has_rdp, infimum,
                          is_lattice, is_majorizing, is_order_bounded, is_order_dense, leq, order_interval,
                          space_by_name, supremum, upper_bounds)
from ordlab.corpus import random_vector


def test_space_names():
    assert space_by_name("ORTH3") == ORTH(3)
    assert space_by_name("K4") is K4
    with pytest.raises(KeyError):
        space_by_name("L2")


def test_cone_from_facets_and_generators_agree():
    A = Cone.from_generators([(1, 0), (1, 1)], 2)
    B = Cone.from_facets([(0, 1), (1, -1)], 2)
    for x in [(1, 0), (2, 1), (0, 1), (-1, 0), (3, 3)]:
        assert A.contains(x) == B.contains(x)


def test_ray_cone_is_pointed_but_not_generating():
    ax = cone_axioms(HALF)
    assert ax.is_pointed and not ax.is_generating
    assert cone_axioms(K4).is_archimedean


@pytest.mark.parametrize("space", [ORTH(3), K4, HALF])
def test_partial_order_laws(space):
    rng = random.Random(5)
    for _ in range(200):
        x, y, z = (random_vector(rng, space.dim, -2, 2) for _ in range(3))
        assert leq(space, x, x)
        if leq(space, x, y) and leq(space, y, z):
            assert leq(space, x, z)
        if leq(space, x, y) and leq(space, y, x) and cone_axioms(space).is_pointed:
            assert x == y


def test_orthant_lattice_operations():
    s = supremum(ORTH(2), [(1, -1), (0, 2)])
    i = infimum(ORTH(2), [(1, -1), (0, 2)])
    assert s.holds and s.witness == (1, 2)
    assert i.holds and i.witness == (0, -1)


def test_k4_is_not_a_lattice():
    res = is_lattice(K4)
    assert res.fails
    assert set(res.witness) == {(1, 0, 1), (-1, 0, 1)}
    assert res.extra["infimum"].fails and res.extra["supremum"].fails


def test_k4_fails_riesz_decomposition():
    assert has_rdp(ORTH(3)).holds
    assert has_rdp(K4).fails


def test_order_interval_in_k4():
    P = order_interval(K4, (0, 0, 0), (0, 0, 1)).with_vrep()
    h = Fraction(1, 2)
    # two square pyramids glued at z = 1/2
    assert set(P.vrep.vertices) == {(0, 0, 0), (0, 0, 1), (h, h, h), (-h, h, h), (h, -h, h), (-h, -h, h)}


def test_unordered_interval_is_empty():
    assert order_interval(ORTH(2), (1, 1), (0, 0)).is_empty()


def test_bounded_sets():
    assert is_order_bounded(ORTH(2), [(1, -3), (-2, 5)]).holds
    lo, hi = is_order_bounded(K4, [(1, 1, 0), (5, -2, 1)]).witness
    for p in [(1, 1, 0), (5, -2, 1)]:
        assert leq(K4, lo, p) and leq(K4, p, hi)


def test_ray_cone_bounds_only_along_its_line():
    assert is_order_bounded(HALF, [(-100, 0), (3, 0)]).holds
    # a singleton bounds itself; two points off a common ray line do not
    assert is_order_bounded(HALF, [(0, 1)]).holds
    res = is_order_bounded(HALF, [(0, 0), (0, 1)])
    assert res.fails and res.witness is not None


def test_upper_bounds_of_k4_pair_have_no_least_element():
    U = upper_bounds(K4, [(1, 0, 1), (-1, 0, 1)]).with_vrep()
    assert len(U.vrep.vertices) >= 2


def test_majorizing_and_dense():
    sub = Subspace(ORTH(2), [(1, 1)])
    assert is_majorizing(sub).holds
    assert is_order_dense(Subspace(ORTH(2), [(1, 0), (0, 1)])).holds
    assert is_order_dense(sub).fails


def test_custom_space_cone_contains_generators():
    Q = OrderedSpace("Q", Cone.from_generators([(1, 0, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1)], 3))
    for g in Q.cone.rays:
        assert Q.cone.contains(g)


def test_symmetric_interval_in_k4():
    P = order_interval(K4, (0, 0, -1), (0, 0, 1)).with_vrep()
    assert set(P.vrep.vertices) == {(1, 1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, 1), (0, 0, -1)}
    # (1,0,0) lies on an edge, not at a vertex, yet attains max x1 = 1
    assert P.contains((1, 0, 0)) and (1, 0, 0) not in P.vrep.vertices
    from ordlab.lp import lp_optimize
    res = lp_optimize((1, 0, 0), P, "max")
    assert res.value == 1 and P.contains(res.point)
