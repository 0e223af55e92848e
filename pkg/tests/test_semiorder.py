from fractions import Fraction

import pytest

from ordlab.convergence import make_family
from ordlab.gallery import C0REP, ELIN_T, INCLUSION, LINFREP, UnitVectors
from ordlab.semiorder import (HalfspaceSet, SemiOrderSpace, check_convergence_transfer,
                              check_disjoint_bounded_null, semi_leq, standard_transfer_instances,
                              wt_band, wt_band_projection, wt_closed, wt_converges, wt_disjoint,
                              wt_ideal, wt_image_closed, wt_order_bounded)
from ordlab.space import K4, ORTH

O2, O3 = ORTH(2), ORTH(3)
PROJ = SemiOrderSpace(3, O2, ((1, 0, 0), (0, 1, 0)), "proj")
DIAG = SemiOrderSpace(2, O3, ((1, 0), (0, 1), (1, 1)), "diag")


def test_shape_is_validated():
    with pytest.raises(ValueError):
        SemiOrderSpace(2, O3, ((1, 0), (0, 1)))
    with pytest.raises(ValueError):
        SemiOrderSpace(C0REP, C0REP, ELIN_T)


def test_semi_order_is_a_preorder_through_the_kernel():
    assert semi_leq(PROJ, (0, 0, 5), (0, 0, -5))
    assert semi_leq(PROJ, (0, 0, -5), (0, 0, 5))
    assert not semi_leq(PROJ, (1, 0, 0), (0, 0, 0))
    assert not PROJ.kernel_trivial and DIAG.kernel_trivial


def test_wedge_contains_the_kernel():
    w = PROJ.wedge()
    assert w.contains((0, 0, 1)) and w.contains((0, 0, -1))


def test_bounded_sets():
    assert wt_order_bounded(PROJ, [(1, 2, 100), (-3, 0, -100)]).holds


def test_convergence_ignores_the_kernel():
    # growth along the kernel is invisible, growth elsewhere is not
    x = make_family(3, (0, 0, 0), [((1, 0, 0), 1, -1), ((0, 0, 1), 1, 1)])
    assert wt_converges(PROJ, x).converges
    z = make_family(3, (0, 0, 0), [((0, 1, 0), 1, 1)])
    assert wt_converges(PROJ, z).outcome == "NOT_CONVERGES"
    y = make_family(3, (0, 0, 9), [((1, 0, 0), 1, -1)])
    v = wt_converges(PROJ, y, (0, 0, -4))
    assert v.converges


def test_closedness_escapes_along_the_kernel():
    A = HalfspaceSet(3, (((0, 0, 1), 0),))
    x = make_family(3, (0, 0, 1), [((1, 0, 0), 1, -1)])
    res = wt_closed(PROJ, A, [x])
    assert res.fails and not A.contains(res.witness["limit"])
    assert not wt_image_closed(PROJ, A, [x]).fails


def test_bijective_closed_set_is_closed():
    sq = SemiOrderSpace(2, O2, ((1, 1), (0, 1)))
    A = HalfspaceSet(2, (((1, 0), 0),))
    assert wt_closed(sq, A, []).holds
    open_set = HalfspaceSet(2, (((1, 0), 0, True),))
    x = make_family(2, (0, 0), [((1, 0), 1, -1)])
    assert wt_closed(sq, open_set, [x]).fails


def test_ideals_and_bands_via_images():
    assert wt_ideal(DIAG, [(1, 0)]).fails
    assert wt_band(SemiOrderSpace(2, O2, ((1, 0), (0, 1))), [(1, 0)]).holds


def test_band_projection_needs_injectivity_on_the_subspace():
    res = wt_band_projection(PROJ, [(0, 0, 1)])
    assert res.fails and "not injective" in res.reason
    ok = wt_band_projection(PROJ, [(1, 0, 0)])
    assert ok.holds
    P = ok.witness
    assert [list(r) for r in P] == [[1, 0, 0], [0, 0, 0], [0, 0, 0]]


def test_disjointness_via_images():
    assert wt_disjoint(PROJ, [(1, 0, 4), (0, 1, -2)]).holds
    assert wt_disjoint(DIAG, [(1, 0), (0, 1)]).fails


def test_gallery_semiorder_space():
    sos = SemiOrderSpace(C0REP, LINFREP, INCLUSION)
    assert wt_converges(sos, UnitVectors(Fraction(1))).converges
    el = SemiOrderSpace(INCLUSION.source, LINFREP, ELIN_T)
    assert wt_converges(el, UnitVectors(Fraction(1))).outcome == "NOT_CONVERGES"
    assert wt_disjoint(el, UnitVectors(Fraction(1))).fails


def test_disjoint_bounded_null():
    sos = SemiOrderSpace(C0REP, LINFREP, INCLUSION)
    assert check_disjoint_bounded_null(sos, UnitVectors(Fraction(1))).verdict == "HOLDS"
    orth = SemiOrderSpace(3, O3, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert check_disjoint_bounded_null(orth, [(1, 0, 0), (0, 2, 0)]).verdict == "HOLDS"
    r = check_disjoint_bounded_null(orth, [(1, 1, 0), (0, 2, 0)])
    assert r.verdict == "HYPOTHESIS_FAILS" and r.hypotheses["disjoint"].fails
    k4 = SemiOrderSpace(3, K4, ((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert check_disjoint_bounded_null(k4, [(1, 0, 1)]).hypotheses["lattice"].fails


@pytest.mark.parametrize("inst", standard_transfer_instances(), ids=lambda i: "part" + i["part"])
def test_transfer_instances(inst):
    res = check_convergence_transfer(inst)
    assert res.status == "HOLDS", res.reason
