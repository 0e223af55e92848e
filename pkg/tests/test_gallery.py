from fractions import Fraction

from ordlab.gallery import (C0REP, ELIN_T, INCLUSION, LINFREP, ECSeq, ElinImages, FirstCoordinateGrowth,
                            Indicators, NoC0Bound, UnitVectors, apply_op, elin_apply, elin_triptych,
                            gallery_converges, gallery_disjoint, gallery_join, gallery_leq, gallery_meet,
                            gallery_tail_bounded, gallery_verify_certificate, unit_vector)


def test_ecseq_normalises_head():
    assert ECSeq([1, 0, 0], 0) == ECSeq([1])
    assert ECSeq([2, 2], 2).head == ()
    assert ECSeq([3], 1)[1] == 3 and ECSeq([3], 1)[7] == 1


def test_lattice_operations_are_coordinatewise():
    a, b = ECSeq([1, -2], 0), ECSeq([0, 3], 1)
    assert gallery_join(a, b) == ECSeq([1, 3], 1)
    assert gallery_meet(a, b) == ECSeq([0, -2], 0)
    assert gallery_leq(gallery_meet(a, b), a)
    assert gallery_disjoint(unit_vector(1), unit_vector(2))
    assert not gallery_disjoint(unit_vector(1), ECSeq([1], 1))


def test_elin_map():
    # e_k goes to k times the indicator of {1..k}
    y = elin_apply(ECSeq([1, 2, 3]))
    assert [y[i] for i in (1, 2, 3, 4)] == [14, 13, 9, 0]
    assert apply_op(ELIN_T, UnitVectors(Fraction(1))).at(3)[1] == 3


def test_triptych():
    t = elin_triptych()
    assert t["inclusion"].outcome == "CONVERGES"
    assert t["c0"].outcome == "NOT_CONVERGES"
    assert t["elin"].outcome == "NOT_CONVERGES"
    assert t["c0"].refutation.kind == "TAIL_UNBOUNDED"
    assert "supplied by this library" in t["c0"].reason


def test_indicator_witness_reverifies():
    t = elin_triptych()
    c = t["inclusion"].certificates[0]
    assert isinstance(c.witness.family, Indicators)
    assert gallery_verify_certificate(LINFREP, UnitVectors(Fraction(1)), ECSeq(), c).accepted


def test_refuters_produce_checkable_indices():
    z = ECSeq([5, 5, 5])
    r = NoC0Bound(Fraction(1))
    n = r.refute(z, 1)
    assert n > 3 and r.check(z, n)
    g = FirstCoordinateGrowth(Fraction(1))
    m = g.refute(ECSeq([10], 0), 1)
    assert g.check(ECSeq([10], 0), m)


def test_tail_boundedness():
    assert gallery_tail_bounded(LINFREP, UnitVectors(Fraction(1))).holds
    assert gallery_tail_bounded(C0REP, UnitVectors(Fraction(1))).fails
    assert gallery_tail_bounded(LINFREP, ElinImages(Fraction(1))).fails


def test_nonzero_target_is_refuted():
    v = gallery_converges(LINFREP, apply_op(INCLUSION, UnitVectors(Fraction(2))), ECSeq([1]))
    assert v.outcome == "NOT_CONVERGES"
