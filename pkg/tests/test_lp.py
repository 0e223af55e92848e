import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ordlab.lp import LPStatus, farkas_holds, lp_feasible, lp_optimize
from ordlab.polyhedron import Polyhedron
from oracles import brute_min

small = st.integers(min_value=-3, max_value=3)


def _box(dim, r=3):
    cons = []
    for i in range(dim):
        e = tuple(1 if j == i else 0 for j in range(dim))
        cons += [(e, -r), (tuple(-v for v in e), -r)]
    return cons


def test_simple_optimum_and_dual():
    # min x + y on x >= 1, y >= 2
    P = Polyhedron.from_hrep([((1, 0), 1), ((0, 1), 2)], 2)
    res = lp_optimize((1, 1), P)
    assert res.status is LPStatus.OPTIMAL
    assert res.value == 3 and res.dual_value == 3
    assert res.point == (1, 2)


def test_unbounded_reports_ray():
    P = Polyhedron.from_hrep([((1, 0), 0)], 2)
    res = lp_optimize((1, 0), P, "max")
    assert res.status is LPStatus.UNBOUNDED
    x = (1, 5)
    assert all(sum(a * (xi + 10 * ri) for a, xi, ri in zip(av, x, res.ray)) >= b for av, b in P.hrep)


def test_infeasible_certificate():
    A = [(1, 0), (-1, 0)]
    b = [1, 0]  # x >= 1 and -x >= 0
    P = Polyhedron.from_hrep(list(zip(A, b)), 2)
    feas = lp_feasible(P)
    assert not feas
    assert farkas_holds(A, b, feas.certificate)
    assert lp_optimize((1, 1), P).status is LPStatus.INFEASIBLE


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.lists(small, min_size=2, max_size=2), st.integers(-4, 0)), min_size=1, max_size=4),
       st.lists(small, min_size=2, max_size=2))
def test_optimum_matches_vertex_oracle(rows, obj):
    cons = [(tuple(a), b) for a, b in rows] + _box(2)
    P = Polyhedron.from_hrep(cons, 2)
    res = lp_optimize(obj, P)
    ref = brute_min(obj, cons, 2)
    if ref is None:
        assert res.status is LPStatus.INFEASIBLE
        A = [a for a, _ in cons]
        assert farkas_holds(A, [Fraction(b) for _, b in cons], res.certificate)
    else:
        assert res.status is LPStatus.OPTIMAL
        assert res.value == ref == res.dual_value


def test_dual_solution_is_dual_feasible():
    rng = random.Random(3)
    for _ in range(30):
        cons = [(tuple(rng.randint(-2, 2) for _ in range(3)), rng.randint(-3, 0)) for _ in range(3)] + _box(3)
        P = Polyhedron.from_hrep(cons, 3)
        obj = tuple(rng.randint(-2, 2) for _ in range(3))
        res = lp_optimize(obj, P)
        if res.status is not LPStatus.OPTIMAL:
            continue
        y = res.dual
        assert all(v >= 0 for v in y)
        for j in range(3):
            assert sum(y[i] * cons[i][0][j] for i in range(len(cons))) == obj[j]
        assert sum(y[i] * cons[i][1] for i in range(len(cons))) == res.value
