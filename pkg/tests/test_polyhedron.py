import random
from fractions import Fraction

import pytest

from ordlab.corpus import random_polyhedra
from ordlab.polyhedron import (Polyhedron, cone_hrep, cone_vrep, hrep_to_vrep, polyhedron_equal,
                               polyhedron_subset, vrep_to_hrep)
from oracles import brute_vertices


def test_square_vertices():
    cons = [((1, 0), 0), ((0, 1), 0), ((-1, 0), -1), ((0, -1), -1)]
    P = hrep_to_vrep(Polyhedron.from_hrep(cons, 2))
    assert set(P.vrep.vertices) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert not P.vrep.rays and not P.vrep.lines


def test_halfplane_has_a_line():
    P = hrep_to_vrep(Polyhedron.from_hrep([((1, 0), 0)], 2))
    assert len(P.vrep.lines) == 1 and len(P.vrep.rays) == 1


def test_empty_polyhedron():
    P = Polyhedron.from_hrep([((1,), 1), ((-1,), 0)], 1)
    assert P.is_empty()


def test_orthant_cone_round_trip():
    rays, lines = cone_vrep([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    assert sorted(rays) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) and not lines
    facets, eqs = cone_hrep(rays, lines, 3)
    assert sorted(facets) == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) and not eqs


def test_ice_cream_square_cone():
    rays = [(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)]
    facets, _ = cone_hrep(rays, [], 3)
    assert len(facets) == 4
    for f in facets:
        assert all(sum(a * b for a, b in zip(f, r)) >= 0 for r in rays)


@pytest.mark.parametrize("seed", range(5))
def test_bounded_vertices_match_brute_force(seed):
    rng = random.Random(seed)
    for _ in range(10):
        dim = rng.randint(1, 3)
        cons = []
        for i in range(dim):
            e = tuple(1 if j == i else 0 for j in range(dim))
            cons += [(e, -2), (tuple(-v for v in e), -2)]
        for _ in range(rng.randint(0, 3)):
            cons.append((tuple(rng.randint(-2, 2) for _ in range(dim)), rng.randint(-2, 0)))
        P = hrep_to_vrep(Polyhedron.from_hrep(cons, dim))
        assert set(P.vrep.vertices) == brute_vertices(cons, dim)


def test_random_round_trips():
    for P in random_polyhedra(40, seed=11, max_dim=4):
        if P.hrep is not None:
            Q = vrep_to_hrep(Polyhedron(P.dim, None, hrep_to_vrep(P).vrep))
        else:
            Q = hrep_to_vrep(Polyhedron(P.dim, vrep_to_hrep(P).hrep, None))
        assert polyhedron_equal(P, Q)


def test_subset_is_strict_when_it_should_be():
    small = Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1)])
    big = Polyhedron.from_vrep([(0, 0), (2, 0), (0, 2)])
    assert polyhedron_subset(small, big)
    assert not polyhedron_subset(big, small)
    assert not polyhedron_equal(small, big)


def test_contains_uses_exact_arithmetic():
    P = Polyhedron.from_hrep([((3, 0), 1)], 2)
    assert P.contains((Fraction(1, 3), 0))
    assert not P.contains((Fraction(1, 3) - Fraction(1, 10**12), 0))
