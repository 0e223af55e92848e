from fractions import Fraction

from ordlab.cover import dual_extreme_rays, is_bipositive, is_preriesz, make_cover
from ordlab.space import HALF, K4, ORTH, leq, singleton_dual_test

K4_ROWS = {(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)}


def test_k4_dual_rays():
    assert set(dual_extreme_rays(K4.cone)) == K4_ROWS


def test_k4_cover_is_bipositive_and_dense():
    res = make_cover(K4)
    assert res.holds
    cov = res.witness
    assert set(cov.embedding) == K4_ROWS
    assert cov.order_dense_verified
    assert cov.target_dim == 4
    assert is_bipositive(K4, cov.embedding)


def test_cover_image_is_a_hyperplane():
    # every image u satisfies u1 + u2 = u3 + u4 in the fixed row order
    rows = [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1)]
    for x in [(1, 2, 3), (-5, 0, 1), (Fraction(1, 2), 7, -3)]:
        u = [sum(a * b for a, b in zip(r, x)) for r in rows]
        assert u[0] + u[1] == u[2] + u[3]


def test_preriesz_verdicts():
    assert is_preriesz(K4).holds
    assert is_preriesz(ORTH(3)).holds


def test_bipositive_detects_order_reversal():
    assert not is_bipositive(ORTH(2), ((1, 0), (0, -1)))


def test_singleton_dual_test():
    assert singleton_dual_test([(1, 0), (0, 1)]).holds


def test_cover_respects_order_exactly():
    cov = make_cover(K4).witness
    for x, y in [((0, 0, 0), (0, 0, 1)), ((0, 0, 0), (1, 0, 0)), ((1, 1, 1), (0, 0, 3))]:
        ux = [sum(a * b for a, b in zip(r, x)) for r in cov.embedding]
        uy = [sum(a * b for a, b in zip(r, y)) for r in cov.embedding]
        assert leq(K4, x, y) == all(p <= q for p, q in zip(ux, uy))


def test_half_plane_has_no_cover():
    assert not make_cover(HALF).holds
