"""Semi-order spaces: a vector space ``V`` ordered through a map ``T: V -> W``.

``x >=_V 0`` means ``Tx >= 0`` in ``W``; every order notion on ``V`` (bounded,
closed, ideal, band, disjoint, convergent) is the corresponding notion for
the image in ``W``.  Two representations are supported: ``V = Q^k`` with a
rational matrix into a finite-dimensional ordered space, and the gallery
sequence spaces with one of the named gallery operators.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .convergence import (ConvergenceCertificate, DecreasingWitness, SeqFamily,
                          Verdict, decide_o_convergence, family_leq_const,
                          family_scale, make_family, map_linear, verify_certificate)
from .exppoly import ExpPoly, eventual_sign, positive_from
from .gallery import (ECSeq, ElinImages, GalleryOp, GallerySpace, UnitVectors, apply_op,
                      gallery_converges, gallery_disjoint, gallery_join, gallery_leq,
                      gallery_tail_bounded)
from .linalg import (Matrix, dot, identity, inverse, is_zero, mat, matmul, matvec, neg, nullspace,
                     rank, scale, solve, sub, transpose, unit, vec, zeros)
from .lp import LPStatus, lp_optimize
from .outcome import Outcome, fails, holds, unknown
from .polyhedron import Polyhedron
from .space import (Cone, OrderedSpace, Subspace, is_lattice, is_order_bounded,
                    is_order_dense)
from .structure import band_projection, is_band, is_disjoint, is_ideal

__all__ = [
    "SemiOrderSpace", "HalfspaceSet", "semi_leq", "wt_order_bounded", "wt_converges",
    "wt_closed", "wt_image_closed", "wt_ideal", "wt_band", "wt_order_dense",
    "wt_band_projection", "wt_disjoint", "NullCheck", "check_disjoint_bounded_null",
    "TransferResult", "transfer_dense_lift", "transfer_ideal_meet", "transfer_ideal_restriction",
    "transfer_cover_lift", "standard_transfer_instances", "check_convergence_transfer",
    "induced_space",
]


@dataclass(frozen=True)
class SemiOrderSpace:
    """``{V, W, T}``.  ``v`` is a dimension or a gallery space."""

    v: int | GallerySpace
    w: OrderedSpace | GallerySpace
    t: Matrix | GalleryOp
    name: str = ""

    def __post_init__(self):
        if self.is_gallery:
            if not isinstance(self.t, GalleryOp) or not isinstance(self.v, GallerySpace):
                raise ValueError("gallery spaces need a gallery operator")
            if self.t.source != self.v or self.t.target != self.w:
                raise ValueError(f"operator {self.t.kind!r} does not map {self.v.kind} into {self.w.kind}")
            return
        t = mat(self.t)
        if len(t) != self.w.dim or any(len(r) != int(self.v) for r in t):
            raise ValueError(f"operator must be {self.w.dim} x {self.v}")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "v", int(self.v))

    @property
    def is_gallery(self) -> bool:
        return isinstance(self.w, GallerySpace)

    @cached_property
    def kernel_trivial(self) -> bool:
        if self.is_gallery:
            # the gallery operators are injective (ELIN_T is triangular on finite supports)
            return True
        return rank(self.t) == self.v

    @cached_property
    def kernel(self) -> list:
        if self.is_gallery:
            return []
        return nullspace(self.t, self.v)

    def image(self, x):
        if self.is_gallery:
            return apply_op(self.t, x)
        return matvec(self.t, vec(x))

    def wedge(self) -> Cone:
        """``{x : Tx >= 0}``; a cone (no lines) exactly when the kernel is trivial."""
        if self.is_gallery:
            raise ValueError("the wedge is only computed for matrix operators")
        return Cone.from_facets([matvec(transpose(self.t), f) for f in self.w.cone.facets], self.v)

    def __hash__(self):
        return hash((self.name, str(self.v), repr(self.w), str(self.t)))


def _check_v(sos: SemiOrderSpace, *xs):
    if sos.is_gallery:
        return
    for x in xs:
        if len(x) != sos.v:
            raise ValueError(f"dimension mismatch: {len(x)} vs {sos.v}")


def semi_leq(sos: SemiOrderSpace, x, y) -> bool:
    """``x <=_V y`` iff ``T(y - x) >= 0``."""
    if sos.is_gallery:
        return gallery_leq(sos.image(x), sos.image(y))
    x, y = vec(x), vec(y)
    _check_v(sos, x, y)
    return sos.w.cone.contains(sos.image(sub(y, x)))


# -- boundedness and convergence ------------------------------------------------------------


def wt_order_bounded(sos: SemiOrderSpace, A) -> Outcome:
    """Order boundedness of ``T(A)``; HOLDS carries a bounding pair in ``W``.

    ``A`` is a point list or a polyhedron (matrix case), or a point list or a
    supported family (gallery case).
    """
    if sos.is_gallery:
        if isinstance(A, (list, tuple)):
            z = ECSeq()
            for a in A:
                img = sos.image(a)
                z = gallery_join(z, abs(img))
            return holds((-z, z), "finite set")
        tb = gallery_tail_bounded(sos.w, sos.image(A))
        if tb.holds:
            return holds((-tb.witness, tb.witness), tb.reason)
        return tb
    if isinstance(A, Polyhedron):
        V = A.with_vrep().vrep
        if not V.vertices:
            return holds((zeros(sos.w.dim), zeros(sos.w.dim)), "empty set")
        img = Polyhedron.from_vrep([sos.image(p) for p in V.vertices],
                                   [r for r in (sos.image(r) for r in V.rays) if not is_zero(r)],
                                   [l for l in (sos.image(l) for l in V.lines) if not is_zero(l)],
                                   dim=sos.w.dim)
        return is_order_bounded(sos.w, img)
    pts = [vec(a) for a in A]
    _check_v(sos, *pts)
    return is_order_bounded(sos.w, [sos.image(p) for p in pts])


def wt_converges(sos: SemiOrderSpace, x, limit=None) -> Verdict:
    """{W,T}-convergence of a family in ``V``, decided on its image in ``W``.

    With ``limit=None`` the verdict reports the limit of the image in ``W``;
    any preimage of it is a {W,T}-limit.
    """
    if sos.is_gallery:
        try:
            img = sos.image(x)
        except ValueError as exc:
            return Verdict("UNKNOWN", reason=str(exc))
        lim = None if limit is None else sos.image(limit)
        return gallery_converges(sos.w, img, lim)
    if x.dim != sos.v:
        raise ValueError(f"family of dimension {x.dim} in a space of dimension {sos.v}")
    y = map_linear(x, sos.t, sos.w)
    target = None if limit is None else sos.image(limit)
    return decide_o_convergence(y, target, sos.w)


# -- closedness -----------------------------------------------------------------------------


@dataclass(frozen=True)
class HalfspaceSet:
    """Intersection of constraints ``a.x >= b`` (or ``a.x > b`` when strict)."""

    dim: int
    constraints: tuple = ()

    def __post_init__(self):
        cs = []
        for c in self.constraints:
            a, b = vec(c[0]), Fraction(c[1])
            strict = bool(c[2]) if len(c) > 2 else False
            if len(a) != self.dim:
                raise ValueError("constraint of the wrong dimension")
            cs.append((a, b, strict))
        object.__setattr__(self, "constraints", tuple(cs))

    @property
    def is_closed_descriptor(self) -> bool:
        return not any(s for _, _, s in self.constraints)

    def contains(self, x) -> bool:
        x = vec(x)
        return all(dot(a, x) > b if s else dot(a, x) >= b for a, b, s in self.constraints)

    def violated(self, x):
        x = vec(x)
        return next(((a, b, s) for a, b, s in self.constraints
                     if not (dot(a, x) > b if s else dot(a, x) >= b)), None)


def _family_inside(A: HalfspaceSet, x: SeqFamily) -> bool:
    """Every term of the family lies in ``A``."""
    P = x.prefix_max
    for n in range(1, P + 1):
        if not A.contains(x.at(n)):
            return False
    for a, b, strict in A.constraints:
        f = x.functional(a) - b
        if strict:
            if positive_from(f, P + 1) != P + 1:
                return False
        else:
            sg = eventual_sign(f, P + 1)
            if not sg.nonneg or sg.index != P + 1:
                return False
    return True


def _escape_point(A: HalfspaceSet, x0, kernel):
    """A point of ``x0 + ker T`` outside ``A``, or ``None`` if the whole fibre is inside."""
    if not A.contains(x0):
        return x0
    for a, b, strict in A.constraints:
        for k in kernel:
            ak = dot(a, k)
            if ak != 0:
                t = (b - dot(a, x0) - 1) / ak
                return tuple(p + t * q for p, q in zip(x0, k))
    return None


def wt_closed(sos: SemiOrderSpace, A: HalfspaceSet, corpus: Sequence[SeqFamily]) -> Outcome:
    """{W,T}-closedness of ``A`` (limits taken over families in ``V``).

    FAILS carries a corpus family inside ``A`` with a certified {W,T}-limit
    outside ``A``; since every point of ``limit + ker T`` is a limit, a
    nontrivial kernel lets limits escape along it.  HOLDS is claimed only for
    the whole space, or when ``T`` is bijective, ``A`` is closed and the cone
    of ``W`` is pointed (then ``T(A)`` is a closed polyhedron and order
    limits are norm limits).  Anything else is UNKNOWN.
    """
    if sos.is_gallery:
        return unknown("closedness is only examined for matrix operators", notion="nets in V")
    for x in corpus:
        if not _family_inside(A, x):
            continue
        v = wt_converges(sos, x)
        if not v.converges:
            continue
        x0 = solve(sos.t, v.limit)
        if x0 is None:
            continue
        out = _escape_point(A, x0, sos.kernel)
        if out is not None:
            return fails({"family": x, "limit": out, "certificate": v.certificate("otilde")},
                         "a family inside the set has a limit outside it", notion="nets in V")
    if not A.constraints:
        return holds(None, "the whole space", notion="nets in V")
    square = sos.v == sos.w.dim
    if square and sos.kernel_trivial and A.is_closed_descriptor and not sos.w.cone.lines:
        return holds(None, "T bijective and T(A) is a closed polyhedron, hence otilde-closed",
                     notion="nets in V")
    return unknown("no escaping family in the corpus", notion="nets in V")


def _in_image_of(sos: SemiOrderSpace, A: HalfspaceSet, target) -> bool:
    """Some ``x`` in ``A`` with ``Tx = target`` (strict rows get a positive slack)."""
    n = sos.v
    cons = []
    for a, b, s in A.constraints:
        cons.append((a + (Fraction(-1 if s else 0),), b))
    for row, t in zip(sos.t, target):
        cons += [(row + (Fraction(0),), t), (neg(row) + (Fraction(0),), -t)]
    cons.append(((Fraction(0),) * n + (Fraction(-1),), -1))
    cons.append(((Fraction(0),) * n + (Fraction(1),), 0))
    P = Polyhedron.from_hrep(cons, n + 1)
    res = lp_optimize((Fraction(0),) * n + (Fraction(1),), P, "max")
    if res.status is LPStatus.INFEASIBLE:
        return False
    strict = any(s for _, _, s in A.constraints)
    return not strict or res.value > 0


def wt_image_closed(sos: SemiOrderSpace, A: HalfspaceSet, corpus: Sequence[SeqFamily]) -> Outcome:
    """Order closedness of the image ``T(A)`` in ``W``.

    Differs from :func:`wt_closed` when ``T`` has a kernel: here a limit only
    has to be hit by some point of ``A``.
    """
    if sos.is_gallery:
        return unknown("closedness is only examined for matrix operators", notion="image")
    for x in corpus:
        if not _family_inside(A, x):
            continue
        v = wt_converges(sos, x)
        if v.converges and not _in_image_of(sos, A, v.limit):
            return fails({"family": x, "limit": v.limit, "certificate": v.certificate("otilde")},
                         "image family converges outside the image", notion="image")
    if A.is_closed_descriptor and not sos.w.cone.lines:
        return holds(None, "T(A) is a closed polyhedron, hence otilde-closed", notion="image")
    return unknown("no escaping family in the corpus", notion="image")


# -- ideals, bands, projections -------------------------------------------------------------


def _image_subspace(sos: SemiOrderSpace, B) -> Subspace:
    if sos.is_gallery:
        raise ValueError("subspace structure needs a matrix operator")
    basis = list(B.basis) if isinstance(B, Subspace) else [vec(b) for b in B]
    _check_v(sos, *basis)
    return Subspace.spanned_by(sos.w, [sos.image(b) for b in basis])


def wt_ideal(sos: SemiOrderSpace, B, cover=None) -> Outcome:
    return is_ideal(_image_subspace(sos, B), cover)


def wt_band(sos: SemiOrderSpace, B, cover=None) -> Outcome:
    return is_band(_image_subspace(sos, B), cover)


def wt_order_dense(sos: SemiOrderSpace, B, cover=None) -> Outcome:
    return is_order_dense(_image_subspace(sos, B), cover)


def wt_band_projection(sos: SemiOrderSpace, B, cover=None) -> Outcome:
    """``P_B`` on ``V`` with ``T P_B = P_TB T`` (HOLDS), or FAILS with the reason.

    ``P_B x`` is the element ``x1`` of ``B`` with ``T x1 = P_TB(Tx)``; it is
    unique exactly when ``T`` is injective on ``B``.
    """
    basis = list(B.basis) if isinstance(B, Subspace) else [vec(b) for b in B]
    basis = [b for b in basis if not is_zero(b)]
    images = [sos.image(b) for b in basis]
    if basis and rank(images) < rank(basis):
        return fails(None, "P_B not well-defined, T not injective on B")
    TB = Subspace.spanned_by(sos.w, images)
    bp = band_projection(sos.w, TB, cover)
    if not bp.holds:
        return fails(bp, "TB not a projection band")
    P_TB = bp.witness
    TBm = transpose(images) if images else ()
    cols = []
    for j in range(sos.v):
        target = matvec(P_TB, sos.image(unit(sos.v, j)))
        if not basis:
            cols.append(zeros(sos.v))
            continue
        c = solve(TBm, target)
        cols.append(matvec(transpose(basis), c))
    P = transpose(cols)
    return holds(P, "band projection on V", image_projection=P_TB)


def wt_disjoint(sos: SemiOrderSpace, xs, cover=None) -> Outcome:
    """Pairwise disjointness of the images; FAILS carries an index pair (1-based)."""
    if sos.is_gallery and not isinstance(xs, (list, tuple)):
        img = sos.image(xs)
        if isinstance(img, UnitVectors):
            return holds(None, "c e_n and c e_m have disjoint supports")
        if isinstance(img, ElinImages):
            if img.c == 0:
                return holds(None, "zero family")
            return fails((1, 2), "a_1 and a_2 share the first coordinate")
        return unknown("family outside the supported shapes")
    imgs = [sos.image(x) for x in xs]
    for (i, a), (j, b) in itertools.combinations(enumerate(imgs, 1), 2):
        ok = gallery_disjoint(a, b) if sos.is_gallery else bool(is_disjoint(sos.w, a, b, cover, use_cover=False))
        if not ok:
            return fails((i, j), "images are not disjoint")
    return holds(None, "images are pairwise disjoint")


# -- disjoint and bounded implies null ------------------------------------------------------


@dataclass(frozen=True)
class NullCheck:
    """``verdict`` is HOLDS, FAILS, HYPOTHESIS_FAILS or UNKNOWN."""

    verdict: str
    hypotheses: dict
    convergence: Verdict | None = None
    recheck: object = None
    reason: str = ""


def _family_of(sos: SemiOrderSpace, xs) -> SeqFamily:
    if isinstance(xs, SeqFamily):
        return xs
    pts = [vec(x) for x in xs]
    _check_v(sos, *pts)
    return make_family(sos.v, zeros(sos.v), prefix={i: p for i, p in enumerate(pts, 1)})


def _seq_disjoint(sos: SemiOrderSpace, x: SeqFamily) -> Outcome:
    """Disjointness for families: exact when eventually zero, refutation-only otherwise."""
    eventually_zero = not x.terms and is_zero(x.limit)
    upto = x.prefix_max if eventually_zero else x.prefix_max + 8
    res = wt_disjoint(sos, [x.at(n) for n in range(1, upto + 1)])
    if res.fails or eventually_zero:
        return res
    return unknown("only finitely many pairs can be examined")


def check_disjoint_bounded_null(sos: SemiOrderSpace, xs) -> NullCheck:
    """Disjoint and order bounded images force {W,T}-convergence to 0.

    ``xs`` is a finite list (continued by zeros) or a :class:`SeqFamily` in
    the matrix case, and a supported family in the gallery case.  Failing
    hypotheses are reported as HYPOTHESIS_FAILS, never as a counterexample.
    """
    hyp = {}
    if sos.is_gallery:
        if sos.w.kind != "linfrep" and sos.w.kind != "c0rep":
            return NullCheck("UNKNOWN", hyp, reason="unsupported gallery space")
        hyp["lattice"] = holds(None, "coordinatewise order")
        hyp["disjoint"] = wt_disjoint(sos, xs)
        hyp["bounded"] = wt_order_bounded(sos, xs)
        zero = ECSeq()
        fam = xs
    else:
        hyp["lattice"] = is_lattice(sos.w)
        fam = _family_of(sos, xs)
        hyp["disjoint"] = _seq_disjoint(sos, fam)
        pts = [fam.at(n) for n in range(1, fam.prefix_max + 1)]
        bounded_family = not fam.terms and fam.divergent_coordinate() is None
        hyp["bounded"] = (wt_order_bounded(sos, pts + [fam.limit]) if bounded_family
                          else unknown("bounds are only computed for eventually constant families"))
        zero = zeros(sos.v)
    bad = [k for k, o in hyp.items() if o.fails]
    if bad:
        return NullCheck("HYPOTHESIS_FAILS", hyp, reason="hypothesis fails: " + ", ".join(bad))
    if any(o.unknown for o in hyp.values()):
        return NullCheck("UNKNOWN", hyp, reason="hypotheses undecided")
    v = wt_converges(sos, fam, zero)
    if not v.converges:
        return NullCheck("FAILS", hyp, v, reason="disjoint bounded family is not null: " + v.reason)
    cert = v.certificates[-1]
    if sos.is_gallery:
        from .gallery import gallery_verify_certificate
        chk = gallery_verify_certificate(sos.w, sos.image(fam), sos.image(zero), cert)
    else:
        chk = verify_certificate(map_linear(fam, sos.t, sos.w), zeros(sos.w.dim), cert, sos.w)
    if not chk.accepted:
        return NullCheck("FAILS", hyp, v, chk, reason="certificate did not re-verify")
    return NullCheck("HOLDS", hyp, v, chk, reason="null with a re-verified certificate")


# -- transfer of convergence between ambient spaces -----------------------------------------


@dataclass(frozen=True)
class TransferResult:
    """``status`` is HOLDS, FAILS or INAPPLICABLE."""

    part: str
    status: str
    source_certificate: ConvergenceCertificate | None = None
    target_certificate: ConvergenceCertificate | None = None
    check: object = None
    hypotheses: dict = field(default_factory=dict)
    reason: str = ""


def induced_space(U: OrderedSpace, basis: Sequence[Sequence], name: str = "sub") -> OrderedSpace:
    """The subspace spanned by ``basis`` with the cone ``K_U`` restricted to it,
    in coordinates relative to ``basis``."""
    B = transpose([vec(b) for b in basis])
    normals = [tuple(dot(f, col) for col in zip(*B)) for f in U.cone.facets]
    return OrderedSpace(name, Cone.from_facets(normals, len(basis)))


def _map_witness(cert: ConvergenceCertificate, M: Matrix, target: OrderedSpace) -> ConvergenceCertificate:
    y = cert.witness.family
    return ConvergenceCertificate(cert.kind, DecreasingWitness(
        map_linear(y, M, target), cert.witness.monotone_from,
        "image of a decreasing witness under a positive map"), cert.threshold)


def _source_certificate(x, limit, sos, cert):
    if cert is not None:
        return cert, None
    v = wt_converges(sos, x, limit)
    if not v.converges:
        return None, v
    return v.certificate("otilde"), v


def transfer_dense_lift(U: OrderedSpace, basis, T: Matrix, x: SeqFamily, limit,
                        cert: ConvergenceCertificate | None = None, part: str = "1") -> TransferResult:
    """From ``{W,T}`` to ``{U,T}`` for ``W`` order dense in ``U``.

    ``W`` is the span of ``basis`` in ``U`` with the induced cone; ``T`` maps
    into ``W`` in coordinates relative to ``basis``.  The witness is kept and
    read in ``U``.  With ``W = T(V)`` this is the statement that convergence
    in the image lifts to the whole codomain.
    """
    sub_ = Subspace(U, tuple(vec(b) for b in basis))
    hyp = {"order_dense": is_order_dense(sub_)}
    if not hyp["order_dense"].holds:
        return TransferResult(part, "INAPPLICABLE", hypotheses=hyp, reason="W is not certified order dense")
    W = induced_space(U, basis, "W")
    src_sos = SemiOrderSpace(x.dim, W, T)
    src, v = _source_certificate(x, limit, src_sos, cert)
    if src is None:
        return TransferResult(part, "INAPPLICABLE", hypotheses=hyp, reason="source convergence not certified")
    hyp["source"] = verify_certificate(map_linear(x, T, W), matvec(T, vec(limit)), src, W)
    if not hyp["source"].accepted:
        return TransferResult(part, "INAPPLICABLE", src, hypotheses=hyp, reason="source certificate rejected")
    Bm = transpose([vec(b) for b in basis])
    out = _map_witness(src, Bm, U)
    UT = matmul(Bm, T)
    chk = verify_certificate(map_linear(x, UT, U), matvec(UT, vec(limit)), out, U)
    return TransferResult(part, "HOLDS" if chk.accepted else "FAILS", src, out, chk, hyp,
                          "same witness accepted in U" if chk.accepted else chk.reason)


def _meet_with_constant(u, y: SeqFamily, space: OrderedSpace) -> SeqFamily:
    """``u ^ y_m`` coordinatewise for a witness ``y`` decreasing to 0 in an orthant."""
    switch = 1
    mask = []
    for j, uj in enumerate(u):
        if uj == 0:
            mask.append(False)
            continue
        mask.append(True)
        s = eventual_sign(ExpPoly.const(uj) - y.coordinate(j), y.prefix_max + 1)
        switch = max(switch, s.index)
    terms = [(tuple(c if keep else Fraction(0) for c, keep in zip(t.coeff, mask)), t.rho, t.exp)
             for t in y.terms]
    prefix = {m: tuple(min(a, b) for a, b in zip(u, y.at(m))) for m in range(1, switch)}
    return make_family(space, zeros(space.dim), terms, prefix)


def _find_bound(space: OrderedSpace, d: SeqFamily, attempts: int = 64):
    """Some ``u >= 0`` with ``+-d_n <= u`` for all ``n``, searched along the interior point."""
    u = space.cone.interior_point
    for _ in range(attempts):
        if family_leq_const(space, d, u).holds and family_leq_const(space, family_scale(-1, d), u).holds:
            return u
        u = scale(2, u)
    return None


def transfer_ideal_meet(W2: OrderedSpace, ideal_basis, T: Matrix, x: SeqFamily, limit,
                        u=None, cert: ConvergenceCertificate | None = None) -> TransferResult:
    """From ``{W2,T}`` to ``{W1,T}`` for an ideal ``W1`` of the lattice ``W2``.

    The family must be {W1,T}-order bounded: ``+-(Tx_n - Tx) <= u`` with
    ``u`` in ``W1``.  The new witness is ``u ^ y_m``, which lies in ``W1``.
    ``T`` maps into ``W2``; ``W2`` must be an orthant so meets are coordinatewise.
    """
    hyp = {}
    if not W2.is_coordinatewise:
        return TransferResult("3", "INAPPLICABLE", reason="meets are computed in orthants only")
    I = Subspace(W2, tuple(vec(b) for b in ideal_basis))
    hyp["ideal"] = is_ideal(I)
    if not hyp["ideal"].holds:
        return TransferResult("3", "INAPPLICABLE", hypotheses=hyp, reason="W1 is not an ideal of W2")
    Bm = transpose(I.basis)
    W1 = induced_space(W2, I.basis, "W1")
    # T in coordinates of W1
    cols = [solve(Bm, col) for col in zip(*T)]
    if any(c is None for c in cols):
        return TransferResult("3", "INAPPLICABLE", hypotheses=hyp, reason="T does not map into W1")
    T1 = transpose(cols)
    d = map_linear(x, T, W2)
    Tl = matvec(T, vec(limit))
    dev = make_family(W2, sub(d.limit, Tl), [(t.coeff, t.rho, t.exp) for t in d.terms],
                      {n: sub(v, Tl) for n, v in d.prefix})
    if u is None:
        u1 = _find_bound(W1, map_linear(dev, [tuple(r) for r in _left_inverse(Bm)], W1))
        u = None if u1 is None else matvec(Bm, u1)
    u = None if u is None else vec(u)
    bounded = (u is not None and I.contains(u) and W2.cone.contains(u)
               and family_leq_const(W2, dev, u).holds
               and family_leq_const(W2, family_scale(-1, dev), u).holds)
    hyp["bounded"] = holds(u, "bounded by u in W1") if bounded else fails(u, "no bound in W1 found")
    if not bounded:
        return TransferResult("3", "INAPPLICABLE", hypotheses=hyp, reason="family is not {W1,T}-order bounded")
    src, v = _source_certificate(x, limit, SemiOrderSpace(x.dim, W2, T), cert)
    if src is None:
        return TransferResult("3", "INAPPLICABLE", hypotheses=hyp, reason="source convergence not certified")
    hyp["source"] = verify_certificate(d, Tl, src, W2)
    if not hyp["source"].accepted:
        return TransferResult("3", "INAPPLICABLE", src, hypotheses=hyp, reason="source certificate rejected")
    meet = _meet_with_constant(u, src.witness.family, W2)
    L = _left_inverse(Bm)
    out = ConvergenceCertificate(src.kind, DecreasingWitness(
        map_linear(meet, L, W1), 1, "meet of a bound in the ideal with a decreasing witness"), src.threshold)
    chk = verify_certificate(map_linear(x, T1, W1), matvec(T1, vec(limit)), out, W1)
    return TransferResult("3", "HOLDS" if chk.accepted else "FAILS", src, out, chk, hyp,
                          "meet witness accepted in W1" if chk.accepted else chk.reason)


def _left_inverse(Bm: Matrix) -> Matrix:
    """A left inverse of a full-column-rank matrix."""
    Bt = transpose(Bm)
    G = matmul(Bt, Bm)
    return matmul(inverse(G), Bt)


def transfer_ideal_restriction(W: OrderedSpace, T: Matrix, ideal_basis, x: SeqFamily, limit,
                               cert: ConvergenceCertificate | None = None) -> TransferResult:
    """Convergence in ``V`` of a family inside a {W,T}-ideal ``I`` equals convergence
    in ``I`` under ``T`` restricted to ``I``; the limit then lies in ``I + ker T``."""
    v_dim = x.dim
    sos = SemiOrderSpace(v_dim, W, T)
    Ib = [vec(b) for b in ideal_basis]
    hyp = {"ideal": wt_ideal(sos, Ib)}
    if not hyp["ideal"].holds:
        return TransferResult("4", "INAPPLICABLE", hypotheses=hyp, reason="I is not a {W,T}-ideal")
    Bm = transpose(Ib)
    coords = []
    for c in [t.coeff for t in x.terms] + [x.limit] + [v for _, v in x.prefix]:
        s = solve(Bm, c)
        if s is None:
            return TransferResult("4", "INAPPLICABLE", hypotheses=hyp, reason="family leaves I")
        coords.append(s)
    k = len(x.terms)
    xi = make_family(len(Ib), coords[k], [(coords[i], t.rho, t.exp) for i, t in enumerate(x.terms)],
                     {n: coords[k + 1 + i] for i, (n, _) in enumerate(x.prefix)})
    src, v = _source_certificate(x, limit, sos, cert)
    if src is None:
        return TransferResult("4", "INAPPLICABLE", hypotheses=hyp, reason="source convergence not certified")
    Tl = matvec(T, vec(limit))
    # the limit lies in I modulo the kernel of T
    x1 = solve(matmul(T, Bm), Tl)
    hyp["limit_in_I"] = (holds(matvec(Bm, x1), "T(limit) lies in T(I)") if x1 is not None
                         else fails(Tl, "T(limit) outside T(I)"))
    if x1 is None:
        return TransferResult("4", "FAILS", src, hypotheses=hyp, reason="limit escapes the ideal")
    TI = matmul(T, Bm)
    chk = verify_certificate(map_linear(xi, TI, W), matvec(TI, x1), src, W)
    back = verify_certificate(map_linear(x, T, W), Tl, src, W)
    ok = chk.accepted and back.accepted
    return TransferResult("4", "HOLDS" if ok else "FAILS", src, src, chk, hyp,
                          "same witness accepted for T restricted to I" if ok else chk.reason)


def transfer_cover_lift(W: OrderedSpace, T: Matrix, x: SeqFamily, limit,
                        cert: ConvergenceCertificate | None = None, cover=None) -> TransferResult:
    """From ``{W,T}`` to ``{U, i T}`` for the vector lattice cover ``(U, i)`` of ``W``."""
    from .cover import make_cover
    from .space import ORTH
    hyp = {}
    if cover is None:
        made = make_cover(W)
        hyp["cover"] = made
        if not made.holds:
            return TransferResult("5", "INAPPLICABLE", hypotheses=hyp, reason="no certified cover")
        cover = made.witness
    else:
        hyp["cover"] = holds(cover, "supplied")
    U = ORTH(cover.target_dim)
    src, v = _source_certificate(x, limit, SemiOrderSpace(x.dim, W, T), cert)
    if src is None:
        return TransferResult("5", "INAPPLICABLE", hypotheses=hyp, reason="source convergence not certified")
    hyp["source"] = verify_certificate(map_linear(x, T, W), matvec(T, vec(limit)), src, W)
    if not hyp["source"].accepted:
        return TransferResult("5", "INAPPLICABLE", src, hypotheses=hyp, reason="source certificate rejected")
    iT = matmul(cover.embedding, T)
    out = _map_witness(src, cover.embedding, U)
    chk = verify_certificate(map_linear(x, iT, U), matvec(iT, vec(limit)), out, U)
    return TransferResult("5", "HOLDS" if chk.accepted else "FAILS", src, out, chk, hyp,
                          "pushed witness accepted in the cover" if chk.accepted else chk.reason)


def standard_transfer_instances() -> list:
    """The documented desk instances, one or more per part."""
    from .space import K4, ORTH
    third = Fraction(1, 3)
    # cover image of K4 in Q^4: {u1 + u2 = u3 + u4}
    K4_rows = ((1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1))
    dense_basis = list(zip(*K4_rows))
    x_k4 = make_family(3, (0, 0, 0), [((1, 0, 0), 1, -1)])
    x_k4b = make_family(3, (0, 0, 1), [((1, 1, 0), Fraction(1, 2), 0), ((0, 0, 1), 1, -2)])
    x_orth = make_family(3, (0, 0, 0), [((1, -1, 0), 1, -1), ((0, 1, 0), third, 1)])
    x_killed = make_family(3, (0, 0, 0), [((1, -1, 0), 1, -1), ((0, 0, 5), Fraction(1, 2), 0)])
    return [
        {"part": "1", "U": ORTH(4), "basis": dense_basis, "T": identity(3), "x": x_k4, "limit": (0, 0, 0)},
        {"part": "1", "U": ORTH(4), "basis": dense_basis, "T": identity(3), "x": x_k4b, "limit": (0, 0, 1)},
        {"part": "2", "U": ORTH(4), "basis": dense_basis, "T": identity(3), "x": x_k4, "limit": (0, 0, 0)},
        {"part": "3", "W2": ORTH(3), "ideal": [(1, 0, 0), (0, 1, 0)],
         "T": ((1, 0, 0), (0, 1, 0), (0, 0, 0)), "x": x_orth, "limit": (0, 0, 0)},
        {"part": "3", "W2": ORTH(3), "ideal": [(1, 0, 0), (0, 1, 0)],
         "T": ((1, 0, 0), (0, 1, 0), (0, 0, 0)), "x": x_killed, "limit": (0, 0, 7)},
        {"part": "4", "W": ORTH(3), "T": identity(3), "ideal": [(1, 0, 0), (0, 1, 0)],
         "x": x_orth, "limit": (0, 0, 0)},
        {"part": "5", "W": K4, "T": identity(3), "x": x_k4, "limit": (0, 0, 0)},
        {"part": "5", "W": K4, "T": identity(3), "x": x_k4b, "limit": (0, 0, 1)},
    ]


def check_convergence_transfer(instance: dict) -> TransferResult:
    """Dispatch one transfer instance (see :func:`standard_transfer_instances`)."""
    part = str(instance["part"])
    cert = instance.get("certificate")
    if part in ("1", "2"):
        return transfer_dense_lift(instance["U"], instance["basis"], instance["T"], instance["x"],
                                   instance["limit"], cert, part)
    if part == "3":
        return transfer_ideal_meet(instance["W2"], instance["ideal"], instance["T"], instance["x"],
                                   instance["limit"], instance.get("u"), cert)
    if part == "4":
        return transfer_ideal_restriction(instance["W"], instance["T"], instance["ideal"],
                                          instance["x"], instance["limit"], cert)
    if part == "5":
        return transfer_cover_lift(instance["W"], instance["T"], instance["x"], instance["limit"],
                                   cert, instance.get("cover"))
    raise ValueError(f"unknown part {part!r}")
