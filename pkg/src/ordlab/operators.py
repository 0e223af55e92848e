"""Linear operators between ordered and semi-ordered spaces.

Classification follows one rule: FAILS needs a concrete family that
converges in the domain while its image does not (or a bounded set with an
unbounded image), HOLDS needs a sufficient condition whose hypotheses were
checked, and everything else is UNKNOWN.

For matrix operators between finite-dimensional spaces with pointed closed
cones the sufficient condition is exact.  Order limits there are norm limits
whose deviations eventually lie in the span of the cone, so ``S`` carries
{W1,T1}-convergence to {W2,T2}-convergence iff ``ker T1 <= ker T2 S`` and
``T2 S`` maps ``T1^{-1}(span K1)`` into ``span K2``.  When either condition
breaks, the failure is turned into an explicit family.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from .convergence import SeqFamily, is_decreasing_to_zero, make_family, map_linear
from .gallery import (C0REP, ELIN_T, INCLUSION, LINFREP, GalleryOp, GallerySpace, UnitVectors,
                      apply_op, gallery_converges, gallery_tail_bounded)
from .linalg import (Matrix, add, dot, identity, inverse, is_zero, mat, matmul, matvec, neg, nullspace,
                     scale, solve, sub, transpose, vec, zeros)
from .lp import LPStatus, lp_optimize
from .outcome import Outcome, fails, holds, unknown
from .polyhedron import Polyhedron
from .semiorder import SemiOrderSpace, wt_converges, wt_order_bounded
from .space import ORTH, OrderedSpace, is_lattice

__all__ = [
    "LinOp", "OperatorClassReport", "InconsistentReportError", "ModulusAdditivityError",
    "elin_operator", "op_add", "op_sub", "op_scale", "op_neg", "is_positive", "classify",
    "semiorder_continuity", "is_semiorder_bounded", "check_kat", "modulus", "modulus_at",
    "probe_modulus_additivity", "lattice_ops_Lb", "check_po", "directed_decomposition",
    "monotone_criterion", "check_monotone_agreement", "check_cover_composition",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 200


class InconsistentReportError(AssertionError):
    """A classification report contradicts one of the implications between verdicts."""


class ModulusAdditivityError(ArithmeticError):
    """The supremum formula for the modulus is not additive on the supplied pair."""

    def __init__(self, pair, left, right):
        super().__init__(f"modulus not additive on {pair}: {left} != {right}")
        self.pair, self.left, self.right = pair, left, right


@dataclass(frozen=True)
class LinOp:
    """``rep`` maps ``domain`` into ``codomain``; spaces are ordered or semi-ordered."""

    domain: OrderedSpace | SemiOrderSpace
    codomain: OrderedSpace | SemiOrderSpace | GallerySpace
    rep: Matrix | GalleryOp
    name: str = ""

    def __post_init__(self):
        if isinstance(self.rep, GalleryOp):
            return
        m = mat(self.rep)
        if len(m) != _dim(self.codomain) or any(len(r) != _dim(self.domain) for r in m):
            raise ValueError(f"matrix must be {_dim(self.codomain)} x {_dim(self.domain)}")
        object.__setattr__(self, "rep", m)

    @property
    def is_gallery(self) -> bool:
        return isinstance(self.rep, GalleryOp)

    def __call__(self, x):
        if self.is_gallery:
            return apply_op(self.rep, x)
        return matvec(self.rep, vec(x))


def _dim(space) -> int:
    if isinstance(space, SemiOrderSpace):
        return space.v
    return space.dim


def _as_sos(space) -> SemiOrderSpace:
    if isinstance(space, SemiOrderSpace):
        return space
    return SemiOrderSpace(space.dim, space, identity(space.dim), space.name)


def elin_operator() -> LinOp:
    """The operator ``e_n -> a_n`` from c0 (ordered through its inclusion into
    l-infinity) into l-infinity."""
    return LinOp(SemiOrderSpace(C0REP, LINFREP, INCLUSION), LINFREP, ELIN_T, "ELIN_T")


def _same_shape(S: LinOp, T: LinOp):
    if S.is_gallery or T.is_gallery or S.domain != T.domain or S.codomain != T.codomain:
        raise ValueError("operators must be matrices between the same spaces")


def op_add(S: LinOp, T: LinOp) -> LinOp:
    _same_shape(S, T)
    return LinOp(S.domain, S.codomain, tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(S.rep, T.rep)))


def op_scale(c, S: LinOp) -> LinOp:
    c = Fraction(c)
    return LinOp(S.domain, S.codomain, tuple(tuple(c * a for a in r) for r in S.rep))


def op_neg(S: LinOp) -> LinOp:
    return op_scale(-1, S)


def op_sub(S: LinOp, T: LinOp) -> LinOp:
    return op_add(S, op_neg(T))


# -- positivity ---------------------------------------------------------------------------


def _domain_generators(space):
    """Rays and lines generating the positive wedge of the domain."""
    if isinstance(space, SemiOrderSpace):
        cone = space.wedge()
    else:
        cone = space.cone
    return list(cone.rays), list(cone.lines)


def _codomain_positive(space, w) -> bool:
    if isinstance(space, SemiOrderSpace):
        return space.w.cone.contains(space.image(w))
    return space.cone.contains(w)


def is_positive(op: LinOp) -> Outcome:
    """Every positive element of the domain goes to a positive element."""
    if op.is_gallery:
        if op.rep.kind in ("inclusion", "identity"):
            return holds(None, "images equal their arguments")
        return holds(None, "e_k goes to a_k >= 0, and positive finitely supported sequences "
                           "are positive combinations of the e_k")
    rays, lines = _domain_generators(op.domain)
    for g in rays:
        if not _codomain_positive(op.codomain, op(g)):
            return fails(g, "a positive generator has a non-positive image")
    for l in lines:
        for s in (l, scale(-1, l)):
            if not _codomain_positive(op.codomain, op(s)):
                return fails(s, "a positive line direction has a non-positive image")
    return holds(None, "every generator of the positive wedge maps into the cone")


# -- continuity ---------------------------------------------------------------------------


def _pieces(op: LinOp):
    s1, s2 = _as_sos(op.domain), _as_sos(op.codomain)
    return s1, s2, matmul(s2.t, op.rep)


def _span_equalities(space: OrderedSpace):
    return list(space.cone.equalities)


def _structural_obstruction(op: LinOp):
    """``("kernel", k)`` or ``("span", d)`` when the exact finite-dimensional
    condition breaks, else ``None``."""
    s1, s2, M = _pieces(op)
    for k in s1.kernel:
        if not is_zero(matvec(M, k)):
            return "kernel", k
    eq1 = _span_equalities(s1.w)
    D = nullspace([matvec(transpose(s1.t), e) for e in eq1], s1.v) if eq1 else list(identity(s1.v))
    for d in D:
        Md = matvec(M, d)
        if any(sum(a * b for a, b in zip(e, Md)) != 0 for e in _span_equalities(s2.w)):
            return "span", d
    return None


def _counterexample(op: LinOp, family: SeqFamily, limit, dv=None) -> Outcome | None:
    """FAILS when ``family -> limit`` in the domain and ``S family -> S limit`` fails."""
    s1, s2 = _as_sos(op.domain), _as_sos(op.codomain)
    if dv is None:
        dv = wt_converges(s1, family, limit)
    if not dv.converges:
        return None
    img = map_linear(family, op.rep, s2.v)
    iv = wt_converges(s2, img, op(limit))
    if iv.outcome == "NOT_CONVERGES":
        return fails({"family": family, "limit": vec(limit), "domain": dv, "image": iv},
                     "convergent family whose image does not converge: " + iv.reason)
    return None


def semiorder_continuity(op: LinOp, corpus: Sequence = ()) -> Outcome:
    """Semi-order continuity of a matrix operator or a gallery operator."""
    if op.is_gallery:
        return _gallery_continuity(op, corpus)
    s1, s2, _ = _pieces(op)
    for fam in corpus:
        dv = wt_converges(s1, fam)
        if not dv.converges:
            continue
        x0 = solve(s1.t, dv.limit)
        if x0 is None:
            continue
        bad = _counterexample(op, fam, x0, dv)
        if bad is not None:
            return bad
    if s1.w.cone.lines or s2.w.cone.lines:
        return unknown("a cone with lines: order limits are not norm limits")
    obs = _structural_obstruction(op)
    if obs is None:
        return holds(None, "finite-dim equivalence: order limits are norm limits inside the span of the cone")
    kind, v = obs
    if kind == "kernel":
        fam = make_family(s1.v, zeros(s1.v))
        bad = _counterexample(op, fam, v)
    else:
        fam = make_family(s1.v, zeros(s1.v), [(v, 1, -1)])
        bad = _counterexample(op, fam, zeros(s1.v))
    if bad is not None:
        return bad
    return unknown("structural obstruction without a verified family")


def _gallery_continuity(op: LinOp, corpus) -> Outcome:
    corpus = list(corpus) or [UnitVectors(Fraction(1)), UnitVectors(Fraction(-2))]
    dom = op.domain
    for fam in corpus:
        dv = wt_converges(dom, fam)
        if not dv.converges:
            continue
        try:
            img = op(fam)
        except ValueError:
            continue
        target = op.codomain if isinstance(op.codomain, GallerySpace) else op.codomain.w
        iv = gallery_converges(target, img)
        if iv.outcome == "NOT_CONVERGES":
            return fails({"family": fam, "domain": dv, "image": iv},
                         "convergent family whose image does not converge: " + iv.reason)
    if (op.rep.kind in ("inclusion", "identity") and isinstance(op.codomain, GallerySpace)
            and isinstance(dom, SemiOrderSpace) and dom.w == op.codomain and dom.t.kind == "inclusion"):
        return holds(None, "the operator composed with the codomain order map equals the domain order map")
    return unknown("no counterexample among the supplied families")


def is_semiorder_bounded(op: LinOp, test_sets: Sequence = ()) -> Outcome:
    """Images of {W1,T1}-bounded sets are {W2,T2}-bounded.

    FAILS carries the set together with the failed bound for its image.
    """
    if op.is_gallery:
        sets = list(test_sets) or [UnitVectors(Fraction(1))]
        for A in sets:
            if not wt_order_bounded(op.domain, A).holds:
                continue
            img = op(A) if not isinstance(A, (list, tuple)) else [op(a) for a in A]
            if isinstance(img, list):
                continue
            target = op.codomain if isinstance(op.codomain, GallerySpace) else op.codomain.w
            tb = gallery_tail_bounded(target, img)
            if tb.fails:
                return fails({"set": A, "image": img, "refuter": tb.witness}, tb.reason)
        if op.rep.kind in ("inclusion", "identity"):
            return holds(None, "images are the same sequences")
        return unknown("no unbounded image among the supplied sets")
    s1, s2 = _as_sos(op.domain), _as_sos(op.codomain)
    for A in test_sets:
        bad = _unbounded_image(op, A)
        if bad is not None:
            return bad
    if s1.w.cone.lines or s2.w.cone.lines:
        return unknown("a cone with lines")
    obs = _structural_obstruction(op)
    if obs is None:
        return holds(None, "bounded sets lie in bounded boxes inside translates of the cone span, "
                           "and the image of such a box is again one")
    kind, v = obs
    origin = zeros(s1.v)
    A = (Polyhedron.from_vrep([origin], lines=[v], dim=s1.v) if kind == "kernel"
         else Polyhedron.from_vrep([origin, v], dim=s1.v))
    bad = _unbounded_image(op, A)
    return bad if bad is not None else unknown("structural obstruction without a verified set")


def _unbounded_image(op: LinOp, A) -> Outcome | None:
    s1, s2 = _as_sos(op.domain), _as_sos(op.codomain)
    if not wt_order_bounded(s1, A).holds:
        return None
    if isinstance(A, Polyhedron):
        V = A.with_vrep().vrep
        img = Polyhedron.from_vrep([op(p) for p in V.vertices], [op(r) for r in V.rays if not is_zero(op(r))],
                                   [op(l) for l in V.lines if not is_zero(op(l))], dim=s2.v)
    else:
        img = [op(a) for a in A]
    res = wt_order_bounded(s2, img)
    if res.fails:
        return fails({"set": A, "image": img, "obstruction": res.witness},
                     "bounded set with an unbounded image: " + res.reason)
    return None


@dataclass(frozen=True)
class OperatorClassReport:
    positive: Outcome
    order_continuous: Outcome
    otilde_continuous: Outcome
    semiorder_continuous: Outcome
    semiorder_bounded: Outcome
    codomain_dedekind_complete: bool = False
    notes: tuple = field(default=(), compare=False)

    def violations(self) -> list:
        out = []
        if self.positive.holds and self.order_continuous.holds and self.otilde_continuous.fails:
            out.append("positive and order continuous, yet not otilde-continuous")
        if self.codomain_dedekind_complete and self.otilde_continuous.holds and self.order_continuous.fails:
            out.append("otilde-continuous into a Dedekind complete lattice, yet not order continuous")
        if self.semiorder_continuous.holds and self.semiorder_bounded.fails:
            out.append("semi-order continuous, yet not semi-order bounded")
        return out

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("positive", "order_continuous", "otilde_continuous",
                                              "semiorder_continuous", "semiorder_bounded")}


def _dedekind_complete(space) -> bool:
    """Finite-dimensional lattices with a closed cone are Dedekind complete."""
    if not isinstance(space, OrderedSpace) or space.cone.lines or space.cone.equalities:
        return False
    return len(space.cone.rays) == space.dim and is_lattice(space).holds


def classify(op: LinOp, corpus: Sequence | None = None, budget: int = DEFAULT_BUDGET,
             seed: int = 0, test_sets: Sequence = ()) -> OperatorClassReport:
    """All verdicts for one operator; raises :class:`InconsistentReportError`
    when they contradict each other."""
    if corpus is None and not op.is_gallery:
        from .corpus import random_families
        corpus = random_families(_dim(op.domain), budget, seed)
    corpus = list(corpus or ())[:budget]
    pos = is_positive(op)
    semi = semiorder_continuity(op, corpus)
    bounded = is_semiorder_bounded(op, test_sets)
    notes = []
    if op.is_gallery or isinstance(op.domain, SemiOrderSpace) or isinstance(op.codomain, SemiOrderSpace):
        oc = ot = unknown("order and otilde continuity are classified between ordered spaces only")
    else:
        oc = Outcome(semi.status, semi.witness, semi.reason + " (order convergence)")
        ot = Outcome(semi.status, semi.witness, semi.reason + " (otilde convergence)")
        if pos.holds and oc.holds:
            ot = holds(None, ot.reason + "; also: positive and order continuous gives otilde-continuous")
            notes.append("positive+order continuous => otilde continuous")
    dc = _dedekind_complete(op.codomain)
    if dc and ot.holds and not oc.fails:
        notes.append("Dedekind complete codomain + otilde continuous => order continuous")
    report = OperatorClassReport(pos, oc, ot, semi, bounded, dc, tuple(notes))
    bad = report.violations()
    if bad:
        raise InconsistentReportError("; ".join(bad))
    return report


def check_kat(report: OperatorClassReport) -> Outcome:
    """Semi-order continuity must not coexist with a failed boundedness verdict."""
    if report.semiorder_continuous.holds and report.semiorder_bounded.fails:
        return fails(report, "VIOLATION: continuous but not bounded")
    if report.semiorder_continuous.holds:
        return holds(None, "continuous and not refuted bounded")
    return holds(None, "vacuous: continuity is not HOLDS")


# -- modulus and lattice operations --------------------------------------------------------


def _simplicial(space) -> bool:
    return (isinstance(space, OrderedSpace) and not space.cone.lines and not space.cone.equalities
            and len(space.cone.rays) == space.dim)


def _require_lattice_codomain(op: LinOp):
    if op.is_gallery or not _simplicial(op.codomain):
        raise ValueError("the modulus needs a simplicial (lattice) codomain")
    if not isinstance(op.domain, OrderedSpace):
        raise ValueError("the modulus needs an ordered domain")


def modulus_at(op: LinOp, x) -> tuple:
    """``sup {Sz : -x <= z <= x}`` for ``x >= 0``, one coordinate functional at a time."""
    _require_lattice_codomain(op)
    x = vec(x)
    if not op.domain.cone.contains(x):
        raise ValueError("the modulus is evaluated at positive elements")
    return _interval_sup(tuple(op.domain.cone.facets), tuple(op.codomain.cone.facets), mat(op.rep), x)


@lru_cache(maxsize=4096)
def _interval_sup(dom_facets, cod_facets, rep, x) -> tuple:
    # [-x, x] straight from the facets; the LP does not need an irredundant description
    cons = [(f, -dot(f, x)) for f in dom_facets] + [(neg(f), -dot(f, x)) for f in dom_facets]
    P = Polyhedron.from_hrep(cons, len(x))
    vals = []
    for f in cod_facets:
        res = lp_optimize(matvec(transpose(rep), f), P, "max")
        if res.status is not LPStatus.OPTIMAL:
            raise ArithmeticError(f"interval LP ended with status {res.status}")
        vals.append(res.value)
    return tuple(solve(list(cod_facets), vals))


def modulus(op: LinOp) -> LinOp:
    """``|S|`` as a matrix, assembled from its values on the domain generators.

    Additivity of the supremum formula is checked first, on every pair of
    domain generators, and a failure raises :class:`ModulusAdditivityError`.
    Assembly then needs a simplicial domain.
    """
    _require_lattice_codomain(op)
    rays = list(op.domain.cone.rays)
    probe_modulus_additivity(op, [(rays[i], rays[j]) for i in range(len(rays)) for j in range(i + 1, len(rays))])
    if not _simplicial(op.domain):
        raise ValueError("linear assembly needs a simplicial domain; use modulus_at for single values")
    values = [modulus_at(op, g) for g in rays]
    R = transpose(rays)
    M = matmul(transpose(values), inverse(R))
    return LinOp(op.domain, op.codomain, M, f"|{op.name}|" if op.name else "")


def probe_modulus_additivity(op: LinOp, pairs: Sequence | None = None) -> None:
    """Raise :class:`ModulusAdditivityError` unless ``|S|(x+y) = |S|x + |S|y`` on every pair."""
    if pairs is None:
        rays = list(op.domain.cone.rays)
        pairs = [(rays[i], rays[j]) for i in range(len(rays)) for j in range(i + 1, len(rays))]
    for x, y in pairs:
        left = modulus_at(op, add(vec(x), vec(y)))
        right = add(modulus_at(op, x), modulus_at(op, y))
        if left != right:
            raise ModulusAdditivityError((vec(x), vec(y)), left, right)


def lattice_ops_Lb(T: LinOp, S: LinOp) -> dict:
    """``T v S = (|T-S| + T + S)/2`` and ``T ^ S = (T + S - |T-S|)/2``."""
    _same_shape(T, S)
    D = modulus(op_sub(T, S))
    total = op_add(T, S)
    return {"sup": op_scale(Fraction(1, 2), op_add(D, total)),
            "inf": op_scale(Fraction(1, 2), op_sub(total, D))}


def _dominated(space: OrderedSpace, A: LinOp, B: LinOp) -> bool:
    """``A x <= B x`` on every generator of the domain cone."""
    return all(space.cone.contains(sub(B(g), A(g))) for g in A.domain.cone.rays)


def check_po(instances: Sequence) -> dict:
    """Lattice identities on pairs ``(T, S)`` of operators; returns per-identity failures."""
    failures = {k: [] for k in ("modulus_is_sup_with_negative", "commutative", "absorption",
                                "idempotent", "band")}
    for T, S in instances:
        mT = modulus(T)
        if mT.rep != lattice_ops_Lb(T, op_neg(T))["sup"].rep:
            failures["modulus_is_sup_with_negative"].append((T, S))
        ts, st = lattice_ops_Lb(T, S), lattice_ops_Lb(S, T)
        if ts["sup"].rep != st["sup"].rep or ts["inf"].rep != st["inf"].rep:
            failures["commutative"].append((T, S))
        if (lattice_ops_Lb(T, ts["sup"])["inf"].rep != T.rep
                or lattice_ops_Lb(T, ts["inf"])["sup"].rep != T.rep):
            failures["absorption"].append((T, S))
        if lattice_ops_Lb(T, T)["sup"].rep != T.rep:
            failures["idempotent"].append((T, S))
        if _dominated(T.codomain, modulus(S), mT) and semiorder_continuity(T).holds:
            if not semiorder_continuity(S).holds:
                failures["band"].append((T, S))
    return failures


def directed_decomposition(op: LinOp) -> tuple:
    """``(S+, S-)`` with ``S = S+ - S-``, both positive."""
    m = modulus(op)
    plus = op_scale(Fraction(1, 2), op_add(m, op))
    minus = op_scale(Fraction(1, 2), op_sub(m, op))
    if not (is_positive(plus).holds and is_positive(minus).holds):
        raise ArithmeticError("positive and negative parts are not positive")
    return plus, minus


# -- monotone criterion and covers ---------------------------------------------------------


def monotone_criterion(op: LinOp, families: Sequence) -> Outcome:
    """Images of families decreasing to 0 decrease to 0 (on the supplied families)."""
    for fam in families:
        if not is_decreasing_to_zero(op.domain, fam).holds:
            continue
        img = map_linear(fam, op.rep, op.codomain)
        res = is_decreasing_to_zero(op.codomain, img)
        if not res.holds:
            return fails(fam, "image of a decreasing family does not decrease to 0: " + res.reason)
    return holds(None, "every supplied decreasing family has a decreasing image")


def _cover_rows(space: OrderedSpace):
    from .cover import make_cover
    made = make_cover(space)
    return made.witness.embedding if made.holds else None


def check_monotone_agreement(op: LinOp, families: Sequence) -> Outcome:
    """For a positive operator between spaces with covers, compare per family:
    the image decreases to 0, and the image converges to 0 through the cover."""
    if not is_positive(op).holds:
        return unknown("operator is not positive")
    i2 = _cover_rows(op.codomain)
    if i2 is None or _cover_rows(op.domain) is None:
        return unknown("no certified cover")
    sos2 = SemiOrderSpace(op.codomain.dim, ORTH(len(i2)), i2)
    for fam in families:
        if not is_decreasing_to_zero(op.domain, fam).holds:
            continue
        img = map_linear(fam, op.rep, op.codomain)
        mono = is_decreasing_to_zero(op.codomain, img).holds
        conv = wt_converges(sos2, map_linear(fam, op.rep, op.codomain.dim), zeros(op.codomain.dim)).converges
        if mono != conv:
            return fails(fam, "monotone and convergence verdicts differ")
    return holds(None, "monotone and convergence verdicts agree on every family")


def check_cover_composition(op: LinOp, corpus: Sequence) -> Outcome:
    """An otilde-continuous operator stays otilde-continuous after the cover embedding."""
    rep = classify(op, corpus)
    if not rep.otilde_continuous.holds:
        return holds(None, "vacuous: not otilde-continuous")
    i = _cover_rows(op.codomain)
    if i is None:
        return unknown("codomain has no certified cover")
    lifted = LinOp(op.domain, ORTH(len(i)), matmul(i, op.rep))
    lrep = classify(lifted, corpus)
    if lrep.otilde_continuous.fails:
        return fails(lrep.otilde_continuous.witness, "composition with the cover is not otilde-continuous")
    return holds(lrep.otilde_continuous, "composition with the cover is otilde-continuous")
