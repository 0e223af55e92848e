"""Named regression suites.

Each suite returns a :class:`SuiteReport`, a list of named checks with a pass
flag and a short detail.  Suites are seeded and deterministic.  The CLI runs
them with ``ordlab suite NAME``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .convergence import (SeqFamily, family_add, family_in_cone, family_scale, family_sub, make_family,
                          map_linear, verify_certificate)
from .corpus import decreasing_families, random_disjoint_list, random_families, random_matrix
from .gallery import (ELIN_T, ElinImages, IDENTITY, INCLUSION, LINFREP, UnitVectors, elin_triptych,
                      gallery_verify_certificate)
from .linalg import add, identity, is_zero, matvec, scale, unit, zeros
from .operators import (InconsistentReportError, LinOp, ModulusAdditivityError, check_cover_composition,
                        check_kat, check_monotone_agreement, check_po, classify, elin_operator,
                        is_positive, lattice_ops_Lb, modulus, op_neg, probe_modulus_additivity,
                        semiorder_continuity)
from .semiorder import (SemiOrderSpace, check_convergence_transfer, check_disjoint_bounded_null, semi_leq,
                        standard_transfer_instances, wt_band_projection, wt_converges, wt_disjoint,
                        wt_order_bounded)
from .space import HALF, K4, ORTH, Subspace, order_interval
from .structure import band_projection

__all__ = ["Check", "SuiteReport", "SUITES", "run_suite", "rule_battery", "modulus_oracle",
           "rule_spaces"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class SuiteReport:
    name: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = ""):
        self.checks.append(Check(name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]


# -- convergence rule battery --------------------------------------------------------------------------


def _const(dim: int, v) -> SeqFamily:
    return make_family(dim, v)


def _interior_preimage(sos: SemiOrderSpace):
    """Some ``v`` in ``V`` whose image lies in the interior of the cone, if a simple one exists."""
    F = sos.w.cone.facets
    for v in [tuple(Fraction(1) for _ in range(sos.v))] + [unit(sos.v, i) for i in range(sos.v)]:
        w = sos.image(v)
        if all(sum(a * b for a, b in zip(f, w)) > 0 for f in F) and sos.w.cone.contains(w):
            return v
    return None


def _positive_shift(sos: SemiOrderSpace, x: SeqFamily, v0, attempts: int = 40):
    """``x + c v0`` with every image term in the cone, for ``c`` a power of 2."""
    c = Fraction(1)
    for _ in range(attempts):
        p = family_add(x, _const(sos.v, scale(c, v0)))
        if family_in_cone(sos.w, map_linear(p, sos.t, sos.w)).holds:
            return p
        c *= 2
    return None


def _kernel_or_perturbation(sos: SemiOrderSpace, rng: random.Random):
    """A kernel vector of ``T`` (zero when ``T`` is injective) and a vector outside the kernel."""
    ker = sos.kernel
    k = ker[0] if ker else zeros(sos.v)
    for i in range(sos.v):
        e = scale(Fraction(1, rng.randint(2, 9)), unit(sos.v, i))
        if not is_zero(sos.image(e)):
            return k, e
    raise ValueError("T is zero")


def rule_battery(sos: SemiOrderSpace, families, seed: int = 0) -> dict:
    """Six convergence rules plus certificate soundness, over one corpus.

    Returns ``{rule: (number checked, list of failure descriptions)}``.  The
    rules are read on the image of ``T``: shift invariance, closedness of the
    positive cone, upper bounds passing to limits, uniqueness of limits up
    to ``ker T``, linearity, and the sandwich rule.
    """
    rng = random.Random(seed)
    rules = ("shift", "positive_limit", "upper_bound", "uniqueness", "linearity", "sandwich", "soundness")
    out = {r: [0, []] for r in rules}
    W = sos.w
    v0 = _interior_preimage(sos)

    memo = {}

    def verdict(x, a):
        key = (x, tuple(a))
        if key not in memo:
            memo[key] = wt_converges(sos, x, a)
        return memo[key]

    def converges(x, a, tag, audit=False):
        """``audit`` re-verifies every certificate independently of the decision procedure."""
        v = verdict(x, a)
        if audit and v.outcome == "CONVERGES":
            img = map_linear(x, sos.t, W)
            for cert in v.certificates:
                out["soundness"][0] += 1
                if not verify_certificate(img, sos.image(a), cert, W).accepted:
                    out["soundness"][1].append(f"{tag}: {cert.kind} certificate rejected")
        return v.outcome == "CONVERGES"

    fams = list(families)
    for i, x in enumerate(fams):
        a = x.limit
        ok = converges(x, a, f"#{i}", audit=True)
        # shift: x -> a  iff  x - a -> 0
        out["shift"][0] += 1
        if ok != converges(family_sub(x, _const(sos.v, a)), zeros(sos.v), f"#{i}-shift", audit=True):
            out["shift"][1].append(f"#{i}")
        if not ok:
            continue
        # uniqueness: a + k is again a limit exactly for kernel vectors k
        k, e = _kernel_or_perturbation(sos, rng)
        out["uniqueness"][0] += 1
        if not converges(x, add(a, k), f"#{i}-ker") or sos.image(add(a, k)) != sos.image(a):
            out["uniqueness"][1].append(f"#{i}: kernel shift rejected")
        v_bad = wt_converges(sos, x, add(a, e))
        if v_bad.outcome != "NOT_CONVERGES":
            out["uniqueness"][1].append(f"#{i}: second limit {v_bad.outcome}")
        for c in verdict(x, a).certificates:
            if verify_certificate(map_linear(x, sos.t, W), sos.image(add(a, e)), c, W, search=False).accepted:
                out["uniqueness"][1].append(f"#{i}: one certificate accepted for two limits")
        if v0 is None:
            continue
        p = _positive_shift(sos, x, v0)
        if p is not None:
            # positive terms give a positive limit
            out["positive_limit"][0] += 1
            if not converges(p, p.limit, f"#{i}-pos") or not semi_leq(sos, zeros(sos.v), p.limit):
                out["positive_limit"][1].append(f"#{i}")
        m = _positive_shift(sos, family_scale(-1, x), v0)
        if m is not None:
            # x_n <= y for all n gives a <= y, with y = c v0 from the shift of -x
            y = add(m.limit, a)
            out["upper_bound"][0] += 1
            bounded = family_in_cone(W, map_linear(family_sub(_const(sos.v, y), x), sos.t, W)).holds
            if not bounded or not semi_leq(sos, a, y):
                out["upper_bound"][1].append(f"#{i}")
        # linearity with the next family
        z = fams[(i + 1) % len(fams)]
        lam, mu = Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        comb = family_add(family_scale(lam, x), family_scale(mu, z))
        out["linearity"][0] += 1
        if converges(z, z.limit, f"#{i}-z") and not converges(comb, add(scale(lam, a), scale(mu, z.limit)),
                                                              f"#{i}-lin"):
            out["linearity"][1].append(f"#{i}")
        # sandwich: x <= x + q with q >= 0 keeps the limits ordered
        if v0 is not None:
            q = _positive_shift(sos, z, v0)
            if q is not None:
                upper = family_add(x, q)
                out["sandwich"][0] += 1
                le = family_in_cone(W, map_linear(family_sub(upper, x), sos.t, W)).holds
                if not le or not converges(upper, upper.limit, f"#{i}-sand") or not semi_leq(sos, a, upper.limit):
                    out["sandwich"][1].append(f"#{i}")
    return {r: (n, fails) for r, (n, fails) in out.items()}


def _battery_checks(rep: SuiteReport, label: str, result: dict):
    for rule, (n, bad) in result.items():
        rep.add(f"{label}: {rule} ({n} checked)", n > 0 and not bad, "; ".join(bad[:3]))


def rule_spaces() -> list:
    return [ORTH(3), K4]


def suite_lemma21(seed: int = 0, budget: int = 200) -> SuiteReport:
    """The convergence rules on ordered spaces, ``min(budget, 100)`` families per space."""
    rep = SuiteReport("lemma21")
    count = max(1, min(budget, 100))
    for space in rule_spaces():
        sos = SemiOrderSpace(space.dim, space, identity(space.dim), space.name)
        _battery_checks(rep, space.name, rule_battery(sos, random_families(space, count, seed), seed))
    return rep


def semiorder_rule_spaces() -> list:
    """Semi-order spaces over ORTH3 and K4: identity, an injective 3x2 map and a rank-2 map."""
    inj = ((1, 0), (0, 1), (1, 1))
    deficient = ((1, 0, 0), (0, 1, 0), (1, 1, 0))
    out = []
    for W in (ORTH(3), K4):
        out.append(SemiOrderSpace(3, W, identity(3), f"{W.name}/id"))
        out.append(SemiOrderSpace(2, W, inj, f"{W.name}/inj"))
        out.append(SemiOrderSpace(3, W, deficient, f"{W.name}/rank2"))
    return out


def suite_lemma3x(seed: int = 0, budget: int = 200) -> SuiteReport:
    """The same rules for {W,T}-convergence, with uniqueness read as ``T a = T b``."""
    rep = SuiteReport("lemma3x")
    count = max(1, min(budget, 25))
    for sos in semiorder_rule_spaces():
        _battery_checks(rep, sos.name, rule_battery(sos, random_families(sos.v, count, seed), seed))
    return rep


# -- the gallery ----------------------------------------------------------------------------


def suite_elin(seed: int = 0, budget: int = 200) -> SuiteReport:
    rep = SuiteReport("elin")
    tri = elin_triptych()
    rep.add("e_n converges in LINFREP after inclusion", tri["inclusion"].outcome == "CONVERGES")
    rep.add("e_n does not converge in C0REP", tri["c0"].outcome == "NOT_CONVERGES", tri["c0"].reason)
    rep.add("e_n does not converge after ELIN_T", tri["elin"].outcome == "NOT_CONVERGES", tri["elin"].reason)
    e = UnitVectors(Fraction(1))
    for cert in tri["inclusion"].certificates:
        chk = gallery_verify_certificate(LINFREP, e, tri["inclusion"].limit, cert)
        rep.add(f"{cert.kind} certificate re-verifies", chk.accepted, chk.reason)
    for key in ("c0", "elin"):
        ref = tri[key].refutation
        ok = ref is not None
        if ok and ref.kind == "TAIL_UNBOUNDED":
            refuter = ref.detail["refuter"]
            z = UnitVectors(Fraction(7)).at(3)
            n = refuter.refute(z, 5)
            ok = n >= 5 and refuter.check(z, n)
        rep.add(f"{key} refutation replays", ok)
    inc = SemiOrderSpace(IDENTITY.source, LINFREP, INCLUSION)
    el = SemiOrderSpace(IDENTITY.source, LINFREP, ELIN_T)
    rep.add("{e_n} bounded under inclusion", wt_order_bounded(inc, e).holds)
    rep.add("{e_n} unbounded under ELIN_T", wt_order_bounded(el, e).fails)
    rep.add("unit vectors disjoint", wt_disjoint(inc, e).holds)
    rep.add("ELIN images not disjoint", wt_disjoint(inc, ElinImages(Fraction(1))).fails)
    rep.add("unit vectors not disjoint under ELIN_T", wt_disjoint(el, e).fails)
    rep.add("ELIN_T orders e_1 above 0", semi_leq(el, UnitVectors(Fraction(1)).at(2).scale(0),
                                                   UnitVectors(Fraction(1)).at(1)))
    r = classify(elin_operator())
    rep.add("ELIN operator positive", r.positive.holds)
    rep.add("ELIN operator not semi-order continuous", r.semiorder_continuous.fails)
    rep.add("ELIN operator not semi-order bounded", r.semiorder_bounded.fails)
    rep.add("ELIN report consistent", check_kat(r).holds)
    return rep


# -- band projections -----------------------------------------------------------------------


def suite_jhg(seed: int = 0, budget: int = 200) -> SuiteReport:
    """Band projections are otilde-continuous, in ordered and semi-order spaces."""
    rep = SuiteReport("jhg")
    count = max(1, min(budget, 12))
    space = ORTH(3)
    for basis in ([unit(3, 0)], [unit(3, 0), unit(3, 2)], [unit(3, 1)]):
        bp = band_projection(space, Subspace(space, basis))
        if not bp.holds:
            rep.add(f"band {basis} has a projection", False, bp.reason)
            continue
        P = bp.witness
        op = LinOp(space, space, P, "P")
        r = classify(op, random_families(space, count, seed))
        rep.add(f"P onto span{_fmt(basis)} positive", r.positive.holds)
        rep.add(f"P onto span{_fmt(basis)} otilde-continuous", r.otilde_continuous.holds, r.otilde_continuous.reason)
        bad = []
        for i, x in enumerate(random_families(space, count, seed + 1)):
            sos = SemiOrderSpace(3, space, P)
            if wt_converges(sos, x, x.limit).outcome != "CONVERGES":
                bad.append(i)
        rep.add(f"P x converges to P a (span{_fmt(basis)})", not bad, str(bad))
    sos = SemiOrderSpace(2, ORTH(3), ((1, 0), (0, 1), (0, 0)), "V2")
    bp = wt_band_projection(sos, [(1, 0)])
    rep.add("semi-order band projection exists", bp.holds, bp.reason)
    if bp.holds:
        op = LinOp(sos, sos, bp.witness, "P")
        rep.add("semi-order band projection continuous", semiorder_continuity(
            op, random_families(2, count, seed)).holds)
    return rep


def _fmt(vs) -> str:
    return "{" + ", ".join("(" + ",".join(str(a) for a in v) + ")" for v in vs) + "}"


# -- operator sweeps ------------------------------------------------------------------------


def sweep_operators(count: int, seed: int = 0) -> list:
    """Random operators between ORTH2, ORTH3, K4 and HALF, a third of them positive by filtering."""
    rng = random.Random(seed)
    spaces = [ORTH(2), ORTH(3), K4, HALF]
    ops = []
    while len(ops) < count:
        dom = spaces[rng.randrange(3)]
        cod = rng.choice(spaces)
        M = random_matrix(rng, cod.dim, dom.dim, -2, 2)
        if len(ops) % 3 == 0:
            # favour positive operators
            for _ in range(30):
                if is_positive(LinOp(dom, cod, M)).holds:
                    break
                M = random_matrix(rng, cod.dim, dom.dim, -1, 2)
        ops.append(LinOp(dom, cod, M, f"S{len(ops)}"))
    return ops


def suite_uyi(seed: int = 0, budget: int = 200) -> SuiteReport:
    """No classification report contradicts itself."""
    rep = SuiteReport("uyi")
    count = max(1, min(budget, 50))
    bad, n_pos_cont = [], 0
    for op in sweep_operators(count, seed):
        try:
            r = classify(op, random_families(op.domain, 6, seed))
        except InconsistentReportError as exc:
            bad.append(f"{op.name}: {exc}")
            continue
        if r.positive.holds and r.order_continuous.holds:
            n_pos_cont += 1
            if not r.otilde_continuous.holds:
                bad.append(f"{op.name}: positive, order continuous, not otilde")
    rep.add(f"{count} random operators classified consistently", not bad, "; ".join(bad[:3]))
    rep.add("positive order continuous operators occur", n_pos_cont > 0, str(n_pos_cont))
    return rep


def suite_kat(seed: int = 0, budget: int = 200) -> SuiteReport:
    """Semi-order continuity is never reported next to a boundedness failure."""
    rep = SuiteReport("kat")
    count = max(1, min(budget, 50))
    bad, nonvacuous = [], 0
    for op in sweep_operators(count, seed):
        try:
            r = classify(op, random_families(op.domain, 6, seed))
        except InconsistentReportError as exc:
            bad.append(f"{op.name}: {exc}")
            continue
        k = check_kat(r)
        if k.fails:
            bad.append(op.name)
        elif not k.reason.startswith("vacuous"):
            nonvacuous += 1
    rep.add("no continuous operator is unbounded", not bad, "; ".join(bad[:3]))
    rep.add("non-vacuous instances occur", nonvacuous > 0, str(nonvacuous))
    r = classify(elin_operator())
    rep.add("ELIN operator is a vacuous instance", check_kat(r).holds and r.semiorder_bounded.fails)
    return rep


def positive_operators(count: int, seed: int = 0) -> list:
    """Positive operators between ORTH3 and K4, by rejection sampling."""
    rng = random.Random(seed)
    pairs = [(ORTH(3), ORTH(3)), (ORTH(3), K4), (K4, ORTH(3)), (K4, K4)]
    out = []
    while len(out) < count:
        dom, cod = pairs[len(out) % len(pairs)]
        M = random_matrix(rng, cod.dim, dom.dim, -1, 2)
        op = LinOp(dom, cod, M, f"P{len(out)}")
        if is_positive(op).holds and any(any(r) for r in M):
            out.append(op)
    return out


def suite_ebadi(seed: int = 0, budget: int = 200) -> SuiteReport:
    """Positive operators between spaces with covers: the monotone criterion agrees with
    convergence through the cover, and composition with the cover keeps continuity."""
    rep = SuiteReport("ebadi")
    count = max(1, min(budget, 12))
    for op in positive_operators(count, seed):
        fams = decreasing_families(op.domain, 5, seed)
        agree = check_monotone_agreement(op, fams)
        rep.add(f"{op.name} {op.domain.name}->{op.codomain.name} monotone agreement", agree.holds, agree.reason)
        comp = check_cover_composition(op, random_families(op.domain, 4, seed))
        rep.add(f"{op.name} cover composition", comp.holds, comp.reason)
    return rep


# -- modulus --------------------------------------------------------------------------------


def modulus_oracle(op: LinOp, x) -> tuple:
    """``|S| x`` by enumerating the vertices of ``[-x, x]`` (orthant codomain)."""
    P = order_interval(op.domain, scale(-1, x), x).with_vrep()
    imgs = [matvec(op.rep, v) for v in P.vrep.vertices]
    return tuple(max(im[i] for im in imgs) for i in range(op.codomain.dim))


def modulus_operators(count: int, seed: int = 0) -> list:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        d = 2 + i % 2
        c = 2 + (i // 2) % 2
        out.append(LinOp(ORTH(d), ORTH(c), random_matrix(rng, c, d, -3, 3), f"M{i}"))
    return out


def suite_po(seed: int = 0, budget: int = 200) -> SuiteReport:
    rep = SuiteReport("po")
    count = max(2, min(budget, 20))
    ops = modulus_operators(count, seed)
    bad = []
    for op in ops:
        m = modulus(op)
        for g in op.domain.cone.rays:
            if matvec(m.rep, g) != modulus_oracle(op, g):
                bad.append(op.name)
        half = tuple(Fraction(j + 1, 2) for j in range(op.domain.dim))
        if matvec(m.rep, half) != modulus_oracle(op, half):
            bad.append(op.name + "@interior")
    rep.add(f"modulus matches vertex enumeration on {count} operators", not bad, str(bad[:3]))
    bad = [op.name for op in ops if modulus(op).rep != lattice_ops_Lb(op, op_neg(op))["sup"].rep]
    rep.add("|T| = T v (-T)", not bad, str(bad))
    pairs = [(ops[i], ops[j]) for i in range(len(ops)) for j in range(len(ops))
             if i < j and ops[i].rep and len(ops[i].rep) == len(ops[j].rep)
             and len(ops[i].rep[0]) == len(ops[j].rep[0])][:count]
    failures = check_po(pairs)
    for key, lst in failures.items():
        rep.add(f"lattice identity {key} ({len(pairs)} pairs)", not lst, str(len(lst)))
    f = LinOp(K4, ORTH(1), ((1, 1, 0),), "f")
    try:
        probe_modulus_additivity(f)
        rep.add("K4 modulus probe raises", False, "no exception")
    except ModulusAdditivityError as exc:
        rep.add("K4 modulus probe raises", True, str(exc))
    return rep


# -- disjoint null families -----------------------------------------------------------------


def disjoint_lists(count: int, seed: int = 0, dim: int = 3) -> list:
    rng = random.Random(seed)
    return [random_disjoint_list(rng, dim) for _ in range(count)]


def suite_disjoint_null(seed: int = 0, budget: int = 200) -> SuiteReport:
    rep = SuiteReport("disjoint-null")
    inc = SemiOrderSpace(IDENTITY.source, LINFREP, INCLUSION)
    r = check_disjoint_bounded_null(inc, UnitVectors(Fraction(1)))
    rep.add("{e_n} under inclusion is null", r.verdict == "HOLDS" and r.recheck.accepted, r.reason)
    sos = SemiOrderSpace(3, ORTH(3), identity(3), "ORTH3")
    count = max(1, min(budget, 20))
    bad = []
    for i, xs in enumerate(disjoint_lists(count, seed)):
        res = check_disjoint_bounded_null(sos, xs)
        if res.verdict != "HOLDS" or not res.recheck.accepted:
            bad.append(f"#{i}: {res.verdict} {res.reason}")
    rep.add(f"{count} disjoint ORTH3 lists are null", not bad, "; ".join(bad[:3]))
    res = check_disjoint_bounded_null(sos, make_family(3, unit(3, 0)))
    rep.add("constant e_1 fails the disjointness hypothesis", res.verdict == "HYPOTHESIS_FAILS", res.reason)
    return rep


# -- transfer -------------------------------------------------------------------------------


def suite_transfer(seed: int = 0, budget: int = 200) -> SuiteReport:
    rep = SuiteReport("transfer")
    for i, inst in enumerate(standard_transfer_instances()):
        res = check_convergence_transfer(inst)
        rep.add(f"part {res.part} instance {i}", res.status == "HOLDS", res.reason)
    return rep


SUITES = {
    "lemma21": suite_lemma21,
    "lemma3x": suite_lemma3x,
    "elin": suite_elin,
    "jhg": suite_jhg,
    "uyi": suite_uyi,
    "ebadi": suite_ebadi,
    "kat": suite_kat,
    "po": suite_po,
    "disjoint-null": suite_disjoint_null,
    "transfer": suite_transfer,
}


def run_suite(name: str, seed: int = 0, budget: int = 200) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(SUITES)}") from None
    return fn(seed=seed, budget=budget)
