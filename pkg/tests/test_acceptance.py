"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import random
import time
from fractions import Fraction

import pytest

from ordlab.convergence import Refutation
from ordlab.corpus import random_families, random_matrix, random_pairs, random_polyhedra
from ordlab.cover import make_cover
from ordlab.gallery import (INCLUSION, LINFREP, FirstCoordinateGrowth, Indicators, NoC0Bound,
                            UnitVectors, elin_triptych, gallery_verify_certificate)
from ordlab.linalg import identity
from ordlab.lp import LPStatus, farkas_holds, lp_feasible, lp_optimize
from ordlab.operators import (InconsistentReportError, LinOp, ModulusAdditivityError, check_kat,
                              classify, elin_operator, lattice_ops_Lb, modulus, op_neg,
                              probe_modulus_additivity)
from ordlab.polyhedron import Polyhedron, hrep_to_vrep, polyhedron_equal, vrep_to_hrep
from ordlab.semiorder import (SemiOrderSpace, check_convergence_transfer, check_disjoint_bounded_null,
                              standard_transfer_instances)
from ordlab.space import K4, ORTH, Cone, OrderedSpace, Subspace, has_rdp, is_lattice
from ordlab.structure import band_projection, is_band, is_disjoint
from ordlab.suites import disjoint_lists, rule_battery, modulus_operators, sweep_operators
from oracles import brute_vertices, orthant_modulus

SEED = 0


@pytest.fixture
def report(capsys):
    def _report(n, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'}: {title}" + (f" [{detail}]" if detail else ""))
        assert ok, detail
    return _report


def test_criterion_1_convergence_rules(report):
    t0 = time.perf_counter()
    summary, bad = [], []
    for space in (ORTH(3), K4):
        sos = SemiOrderSpace(3, space, identity(3), space.name)
        res = rule_battery(sos, random_families(space, 100, SEED), SEED)
        for rule in ("shift", "positive_limit", "upper_bound", "uniqueness", "linearity", "sandwich"):
            n, failures = res[rule]
            if n < 100 or failures:
                bad.append(f"{space.name}.{rule}: {n} checked, {len(failures)} violations")
        summary.append(f"{space.name}: " + ", ".join(f"{k}={n}" for k, (n, _) in res.items()))
    secs = time.perf_counter() - t0
    if secs >= 60:
        bad.append(f"runtime {secs:.1f}s")
    report(1, "six convergence rules on 100 families per space, < 60 s", not bad,
           "; ".join(bad) or f"{secs:.1f}s; " + " | ".join(summary))


def test_criterion_2_elin_triptych(report):
    tri = elin_triptych()
    e = UnitVectors(Fraction(1))
    inc, c0, el = tri["inclusion"], tri["c0"], tri["elin"]
    checks = {}
    checks["inclusion converges"] = inc.outcome == "CONVERGES"
    cert = inc.certificates[0] if inc.certificates else None
    checks["indicator witness"] = cert is not None and isinstance(cert.witness.family, Indicators)
    checks["witness re-verifies"] = (cert is not None and
                                     gallery_verify_certificate(LINFREP, e, inc.limit, cert).accepted)
    checks["c0 not convergent"] = c0.outcome == "NOT_CONVERGES"
    checks["c0 tail refutation"] = (isinstance(c0.refutation, Refutation) and c0.refutation.kind == "TAIL_UNBOUNDED"
                                    and isinstance(c0.refutation.detail["refuter"], NoC0Bound))
    checks["elin not convergent"] = el.outcome == "NOT_CONVERGES"
    checks["elin growth refutation"] = (el.refutation is not None
                                        and isinstance(el.refutation.detail["refuter"], FirstCoordinateGrowth))
    # the refuters replay standalone against arbitrary candidate dominators
    rng = random.Random(SEED)
    for key, v in (("c0", c0), ("elin", el)):
        refuter = v.refutation.detail["refuter"]
        ok = True
        for _ in range(20):
            z = UnitVectors(Fraction(rng.randint(1, 9))).at(rng.randint(1, 6))
            start = rng.randint(1, 30)
            n = refuter.refute(z, start)
            ok &= n >= start and refuter.check(z, n)
        checks[f"{key} refutation replays"] = ok
    bad = [k for k, ok in checks.items() if not ok]
    report(2, "elin triptych with standalone re-verification", not bad, ", ".join(bad))


def _decomposition_empty(space, z, x1, x2):
    """Independent emptiness test of ``{z1 : 0 <= z1 <= x1, 0 <= z - z1 <= x2}`` by vertex enumeration."""
    cons = []
    for f in space.cone.facets:
        fz, f1, f2 = (sum(a * b for a, b in zip(f, v)) for v in (z, x1, x2))
        nf = tuple(-a for a in f)
        cons += [(f, 0), (nf, -f1), (nf, -fz), (f, fz - f2)]
    return not brute_vertices(cons, space.dim), cons


def test_criterion_3_k4_ground_truths(report):
    checks = {}
    lat = is_lattice(K4)
    checks["not a lattice"] = lat.fails
    checks["witness pair"] = set(lat.witness or ()) == {(1, 0, 1), (-1, 0, 1)}
    checks["inf and sup do not exist"] = lat.extra["infimum"].fails and lat.extra["supremum"].fails
    rdp = has_rdp(K4)
    checks["no RDP"] = rdp.fails
    z, x1, x2 = rdp.witness
    empty, cons = _decomposition_empty(K4, z, x1, x2)
    checks["RDP witness: decomposition set empty (oracle)"] = empty
    P = Polyhedron.from_hrep(cons, 3)
    feas = lp_feasible(P)
    A = [a for a, _ in P.hrep]
    b = [bb for _, bb in P.hrep]
    checks["RDP witness: Farkas certificate"] = (not feas) and farkas_holds(A, b, feas.certificate)
    checks["RDP witness: attached certificate"] = rdp.extra.get("certificate") is not None
    cov = make_cover(K4)
    checks["cover into Q^4"] = cov.holds and cov.witness.target_dim == 4 and cov.witness.order_dense_verified
    d = is_disjoint(K4, (1, 1, 1), (-1, -1, 1), cov.witness)
    checks["disjoint by both routes"] = d.direct_result is True and d.cover_result is True
    B = Subspace.spanned_by(K4, [(1, 1, 1)])
    band = is_band(B, cov.witness)
    checks["span(1,1,1) is a band"] = band.holds
    checks["complement span(-1,-1,1)"] = band.holds and band.witness == Subspace.spanned_by(K4, [(-1, -1, 1)])
    bp = band_projection(K4, B, cov.witness)
    checks["no band projection (dimension)"] = bp.fails and bp.witness == 2
    bad = [k for k, ok in checks.items() if not ok]
    report(3, "K4 ground truths", not bad, ", ".join(bad))


def test_criterion_4_disjointness_routes(report):
    out = []
    bad = 0
    for space in (ORTH(3), K4):
        cover = make_cover(space).witness
        pairs = random_pairs(space, 100, SEED, cover.embedding)
        verdicts = [is_disjoint(space, x, y, cover) for x, y in pairs]
        disagree = sum(v.cover_result is None or v.cover_result != v.direct_result for v in verdicts)
        bad += disagree + (len(pairs) < 100)
        out.append(f"{space.name}: {len(pairs)} pairs, {sum(v.direct_result for v in verdicts)} disjoint, "
                   f"{disagree} disagreements")
    report(4, "direct and cover disjointness agree on 100 pairs per space", bad == 0, "; ".join(out))


def test_criterion_5_classification_sweep(report):
    ops = sweep_operators(50, SEED)
    hard, kat_bad, uyi_bad = [], [], []
    mixed = sum(any(a < 0 for r in op.rep for a in r) and any(a > 0 for r in op.rep for a in r) for op in ops)
    for op in ops:
        try:
            r = classify(op, random_families(op.domain, 6, SEED))
        except InconsistentReportError as exc:
            hard.append(f"{op.name}: {exc}")
            continue
        if check_kat(r).fails:
            kat_bad.append(op.name)
        if r.positive.holds and r.order_continuous.holds and not r.otilde_continuous.holds:
            uyi_bad.append(op.name)
    domains = {op.domain.name for op in ops}
    el = classify(elin_operator())
    elin_ok = el.semiorder_continuous.fails and el.semiorder_bounded.fails and check_kat(el).holds
    ok = len(ops) == 50 and not hard and not kat_bad and not uyi_bad and elin_ok and "K4" in domains
    report(5, "50-operator consistency sweep and ELIN verdicts", ok,
           f"{len(hard)} hard, {len(kat_bad)} boundedness, {len(uyi_bad)} otilde inconsistencies; "
           f"{mixed} mixed-sign; domains {sorted(domains)}; ELIN ok={elin_ok}")


def test_criterion_6_modulus(report):
    rng = random.Random(SEED)
    ops = modulus_operators(20, SEED)
    bad = []
    for op in ops:
        m = modulus(op)
        if [list(r) for r in m.rep] != [[abs(a) for a in r] for r in op.rep]:
            bad.append(f"{op.name} not entrywise")
        for _ in range(3):
            x = tuple(Fraction(rng.randint(0, 5), rng.randint(1, 3)) for _ in range(op.domain.dim))
            img = tuple(sum(a * b for a, b in zip(r, x)) for r in m.rep)
            if img != orthant_modulus(op.rep, x):
                bad.append(f"{op.name} oracle at {x}")
        if m.rep != lattice_ops_Lb(op, op_neg(op))["sup"].rep:
            bad.append(f"{op.name} T v -T")
    # additivity on lattice domains that are not orthants
    wedge = OrderedSpace("wedge", Cone.from_generators([(1, 0), (1, 1)], 2))
    for _ in range(5):
        try:
            probe_modulus_additivity(LinOp(wedge, ORTH(2), random_matrix(rng, 2, 2)))
        except ModulusAdditivityError as exc:
            bad.append(f"probe fired on a lattice domain: {exc}")
    fired = 0
    for row in ((1, 1, 0), (1, 0, 0), (0, 1, 0)):
        try:
            probe_modulus_additivity(LinOp(K4, ORTH(1), (row,)))
        except ModulusAdditivityError:
            fired += 1
    if not fired:
        bad.append("probe never fired on K4")
    report(6, "modulus on 20 operators, T v -T, additivity probe", not bad,
           "; ".join(bad[:4]) or f"K4 probe fired on {fired} of 3 functionals")


def test_criterion_7_transfer(report):
    t0 = time.perf_counter()
    results = [check_convergence_transfer(inst) for inst in standard_transfer_instances()]
    secs = time.perf_counter() - t0
    parts = sorted({r.part for r in results})
    bad = [f"part {r.part}: {r.reason}" for r in results
           if r.status != "HOLDS" or r.check is None or not r.check.accepted]
    ok = not bad and parts == ["1", "2", "3", "4", "5"] and secs < 30
    report(7, "transfer instances for parts 1-5, < 30 s", ok,
           "; ".join(bad) or f"{len(results)} instances in {secs:.2f}s")


def test_criterion_8_disjoint_bounded_null(report):
    bad = []
    inc = SemiOrderSpace(INCLUSION.source, LINFREP, INCLUSION)
    r = check_disjoint_bounded_null(inc, UnitVectors(Fraction(1)))
    if r.verdict != "HOLDS" or not r.recheck.accepted or not r.convergence.certificates:
        bad.append("{e_n}: " + r.reason)
    sos = SemiOrderSpace(3, ORTH(3), identity(3), "ORTH3")
    lists = disjoint_lists(20, SEED)
    for i, xs in enumerate(lists):
        r = check_disjoint_bounded_null(sos, xs)
        if r.verdict != "HOLDS" or not r.recheck.accepted:
            bad.append(f"list {i}: {r.verdict} {r.reason}")
    report(8, "disjoint bounded families are null ({e_n} and 20 ORTH3 lists)", not bad and len(lists) == 20,
           "; ".join(bad[:3]))


def _lp_certified(P, c):
    H = P.with_hrep()
    A = [a for a, _ in H.hrep]
    b = [bb for _, bb in H.hrep]
    res = lp_optimize(c, H)
    if res.status is LPStatus.INFEASIBLE:
        return farkas_holds(A, b, res.certificate)
    if res.status is LPStatus.UNBOUNDED:
        r = res.ray
        return all(sum(x * y for x, y in zip(a, r)) >= 0 for a in A) and sum(x * y for x, y in zip(c, r)) < 0
    y = res.dual
    if any(v < 0 for v in y) or not H.contains(res.point):
        return False
    if any(sum(y[i] * A[i][j] for i in range(len(A))) != c[j] for j in range(P.dim)):
        return False
    return sum(yi * bi for yi, bi in zip(y, b)) == res.value == res.dual_value


def test_criterion_9_polyhedral_plumbing(report):
    rng = random.Random(SEED)
    polys = random_polyhedra(200, SEED, max_dim=5)
    dd_bad, lp_bad, oracle_checked = [], [], 0
    for i, P in enumerate(polys):
        if P.hrep is not None:
            V = hrep_to_vrep(P)
            back = Polyhedron.from_hrep(vrep_to_hrep(V).hrep, P.dim)
            if not V.vrep.lines:
                oracle_checked += 1
                if set(V.vrep.vertices) != brute_vertices(P.hrep, P.dim):
                    dd_bad.append(f"#{i} vertices")
        else:
            H = Polyhedron.from_hrep(vrep_to_hrep(P).hrep, P.dim)
            V = hrep_to_vrep(H).vrep
            back = Polyhedron.from_vrep(V.vertices, V.rays, V.lines, dim=P.dim)
        if not polyhedron_equal(P, back):
            dd_bad.append(f"#{i} round trip")
        c = tuple(Fraction(rng.randint(-3, 3)) for _ in range(P.dim))
        if not _lp_certified(P, c):
            lp_bad.append(f"#{i}")
    report(9, "DD round trip and LP certificates on 200 polyhedra", not dd_bad and not lp_bad,
           f"{len(dd_bad)} DD failures, {len(lp_bad)} LP failures, {oracle_checked} vertex sets checked by oracle "
           + " ".join((dd_bad + lp_bad)[:4]))
