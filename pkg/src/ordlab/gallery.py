"""Eventually-constant sequences standing in for c0 and l-infinity.

Elements are :class:`ECSeq` values ``(head; tail)``: finitely many explicit
coordinates followed by a constant.  ``C0REP`` keeps those with tail 0 and
``LINFREP`` keeps all of them; both are ordered coordinatewise.

Families indexed by ``n`` (or ``m`` for witnesses) come in a few closed
shapes: ``c * e_n``, ``c * a_n`` (the images under ``ELIN_T``, which maps
``e_n`` to ``(n, ..., n, 0, ...)`` with ``n`` leading entries),
``c * 1_{>=m}`` and ``v / m``.  Every negative verdict is backed by a
refutation whose argument quantifies over all candidate bounds, so it stays
valid in the full sequence spaces and not just in this representation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convergence import (CertificateCheck, ConvergenceCertificate, DecreasingWitness,
                          Refutation, Threshold, Verdict)
from .linalg import parse_rational
from .outcome import Outcome, fails, holds, unknown

__all__ = [
    "ECSeq", "GallerySpace", "C0REP", "LINFREP", "gallery_space", "unit_vector", "ones",
    "indicator_from", "elin_image", "gallery_leq", "gallery_meet", "gallery_join",
    "gallery_disjoint", "UnitVectors", "ElinImages", "Indicators", "ScaledBy",
    "GalleryOp", "INCLUSION", "IDENTITY", "ELIN_T", "gallery_op", "apply_op", "elin_apply",
    "gallery_decreasing_to_zero", "NoC0Bound", "FirstCoordinateGrowth",
    "gallery_tail_bounded", "gallery_verify_certificate", "gallery_converges",
    "elin_triptych",
]


@dataclass(frozen=True, init=False)
class ECSeq:
    head: tuple
    tail: Fraction

    def __init__(self, head: Sequence = (), tail=0):
        h = [parse_rational(v) for v in head]
        t = parse_rational(tail)
        while h and h[-1] == t:
            h.pop()
        object.__setattr__(self, "head", tuple(h))
        object.__setattr__(self, "tail", t)

    def __getitem__(self, i: int) -> Fraction:
        """Coordinate ``i`` (1-based)."""
        if i < 1:
            raise IndexError("coordinates are 1-based")
        return self.head[i - 1] if i <= len(self.head) else self.tail

    def _zip(self, other: "ECSeq"):
        n = max(len(self.head), len(other.head))
        return [(self[i], other[i]) for i in range(1, n + 1)]

    def _map2(self, other, f):
        return ECSeq([f(a, b) for a, b in self._zip(other)], f(self.tail, other.tail))

    def __add__(self, other):
        return self._map2(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._map2(other, lambda a, b: a - b)

    def __neg__(self):
        return ECSeq([-a for a in self.head], -self.tail)

    def scale(self, c) -> "ECSeq":
        c = parse_rational(c)
        return ECSeq([c * a for a in self.head], c * self.tail)

    def __abs__(self):
        return ECSeq([abs(a) for a in self.head], abs(self.tail))

    @property
    def support_length(self) -> int:
        """Head length; coordinates beyond it equal the tail."""
        return len(self.head)

    def is_zero(self) -> bool:
        return not self.head and self.tail == 0

    def __repr__(self):
        return f"ECSeq({[str(a) for a in self.head]}; {self.tail})"


@dataclass(frozen=True)
class GallerySpace:
    kind: str

    def contains(self, x: ECSeq) -> bool:
        return self.kind == "linfrep" or x.tail == 0

    def __repr__(self):
        return self.kind.upper()


C0REP = GallerySpace("c0rep")
LINFREP = GallerySpace("linfrep")


def gallery_space(name: str) -> GallerySpace:
    key = name.lower()
    if key == "c0rep":
        return C0REP
    if key == "linfrep":
        return LINFREP
    raise KeyError(f"unknown gallery space {name!r}")


def unit_vector(n: int) -> ECSeq:
    return ECSeq([0] * (n - 1) + [1], 0)


def ones() -> ECSeq:
    return ECSeq((), 1)


def indicator_from(m: int) -> ECSeq:
    """``1_{>=m}``: zeros before coordinate ``m``, ones from there on."""
    return ECSeq([0] * (m - 1), 1)


def elin_image(n: int) -> ECSeq:
    """``a_n``: ``n`` copies of ``n``, then zeros."""
    return ECSeq([n] * n, 0)


def gallery_leq(a: ECSeq, b: ECSeq) -> bool:
    return all(x <= y for x, y in a._zip(b)) and a.tail <= b.tail


def gallery_meet(a: ECSeq, b: ECSeq) -> ECSeq:
    return a._map2(b, min)


def gallery_join(a: ECSeq, b: ECSeq) -> ECSeq:
    return a._map2(b, max)


def gallery_disjoint(a: ECSeq, b: ECSeq) -> bool:
    return gallery_meet(abs(a), abs(b)).is_zero()


# -- families ------------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitVectors:
    """``x_n = c * e_n``."""

    c: Fraction = Fraction(1)

    def at(self, n: int) -> ECSeq:
        return unit_vector(n).scale(self.c)


@dataclass(frozen=True)
class ElinImages:
    """``x_n = c * a_n``."""

    c: Fraction = Fraction(1)

    def at(self, n: int) -> ECSeq:
        return elin_image(n).scale(self.c)


@dataclass(frozen=True)
class Indicators:
    """``y_m = c * 1_{>=m}``."""

    c: Fraction = Fraction(1)

    def at(self, m: int) -> ECSeq:
        return indicator_from(m).scale(self.c)


@dataclass(frozen=True)
class ScaledBy:
    """``y_m = v / m``."""

    v: ECSeq

    def at(self, m: int) -> ECSeq:
        return self.v.scale(Fraction(1, m))


@dataclass(frozen=True)
class GalleryOp:
    kind: str
    source: GallerySpace
    target: GallerySpace


INCLUSION = GalleryOp("inclusion", C0REP, LINFREP)
IDENTITY = GalleryOp("identity", C0REP, C0REP)
ELIN_T = GalleryOp("elin", C0REP, LINFREP)


def gallery_op(name: str) -> GalleryOp:
    ops = {"inclusion": INCLUSION, "identity": IDENTITY, "elin": ELIN_T}
    try:
        return ops[name.lower()]
    except KeyError:
        raise KeyError(f"unknown gallery operator {name!r}") from None


def elin_apply(x: ECSeq) -> ECSeq:
    """Linear extension of ``e_k -> a_k`` to finitely supported ``x``."""
    if x.tail != 0:
        raise ValueError("the operator is defined on finitely supported sequences only")
    n = len(x.head)
    # coordinate i of sum_k x_k a_k is sum_{k >= i} k * x_k
    out = [sum((k * x[k] for k in range(i, n + 1)), Fraction(0)) for i in range(1, n + 1)]
    return ECSeq(out, 0)


def apply_op(op: GalleryOp, x):
    """Image of an element or of a family."""
    if isinstance(x, ECSeq):
        return elin_apply(x) if op.kind == "elin" else x
    if op.kind == "elin":
        if isinstance(x, UnitVectors):
            return ElinImages(x.c)
        raise ValueError(f"family {x!r} is outside the supported shapes for the operator")
    return x


# -- decreasing witnesses ------------------------------------------------------------------


def gallery_decreasing_to_zero(space: GallerySpace, y) -> Outcome:
    if isinstance(y, Indicators):
        if y.c < 0:
            return fails(1, "c * 1_{>=m} increases for c < 0")
        if y.c == 0:
            return holds(None, "constant zero family")
        if not space.contains(y.at(1)):
            return fails(1, "1_{>=m} does not lie in the space")
        return holds(None, "1_{>=m+1} <= 1_{>=m}; coordinatewise inf is 0, which lies in the space "
                           "and is then the greatest lower bound")
    if isinstance(y, ScaledBy):
        if not gallery_leq(ECSeq(), y.v):
            return fails(1, "v / m decreases only for v >= 0")
        if not space.contains(y.v):
            return fails(1, "v / m does not lie in the space")
        return holds(None, "v/(m+1) <= v/m for v >= 0; coordinatewise inf is 0")
    return unknown("family outside the supported witness shapes")


# -- order boundedness of tails ------------------------------------------------------------


@dataclass(frozen=True)
class NoC0Bound:
    """Refutes every c0 bound for ``{c * e_n}``: a tail-0 candidate ``z`` has
    ``z_n = 0 < |c|`` for every ``n`` past its head."""

    c: Fraction

    def refute(self, z: ECSeq, n0: int = 1) -> int:
        if z.tail != 0:
            raise ValueError("candidate is not in the c0 representation")
        return max(n0, z.support_length + 1)

    def check(self, z: ECSeq, n: int) -> bool:
        """``True`` when ``+-x_n <= z`` fails at ``n``."""
        x = unit_vector(n).scale(self.c)
        return not (gallery_leq(x, z) and gallery_leq(-x, z))


@dataclass(frozen=True)
class FirstCoordinateGrowth:
    """Refutes every bound for ``{c * a_n}``: the first coordinate is ``c * n``."""

    c: Fraction

    def refute(self, z: ECSeq, n0: int = 1) -> int:
        return max(n0, math.floor(abs(z[1]) / abs(self.c)) + 1)

    def check(self, z: ECSeq, n: int) -> bool:
        x = elin_image(n).scale(self.c)
        return not (gallery_leq(x, z) and gallery_leq(-x, z))


def gallery_tail_bounded(space: GallerySpace, family) -> Outcome:
    """HOLDS with a bound ``z`` (``+-x_n <= z`` for all ``n``) or FAILS with a refuter."""
    if isinstance(family, UnitVectors):
        if family.c == 0:
            return holds(ECSeq(), "zero family")
        if space.kind == "linfrep":
            return holds(ones().scale(abs(family.c)), "|c e_n| <= |c| 1")
        return fails(NoC0Bound(family.c), "structural argument (supplied by this library): no tail-0 "
                                          "sequence dominates infinitely many e_n")
    if isinstance(family, ElinImages):
        if family.c == 0:
            return holds(ECSeq(), "zero family")
        return fails(FirstCoordinateGrowth(family.c), "first coordinate grows without bound")
    if isinstance(family, Indicators):
        if not space.contains(family.at(1)):
            return unknown("family does not lie in the space")
        return holds(ones().scale(abs(family.c)), "|c 1_{>=m}| <= |c| 1")
    return unknown("family outside the supported shapes")


# -- certificates --------------------------------------------------------------------------


def _alpha_below_m(th: Threshold):
    """Some ``m`` with ``alpha(m) < m``, or ``None`` when ``alpha(m) >= m`` always."""
    p, q = th.p, th.q
    if p < 1:
        m = 1
        while th(m) >= m:
            m *= 2
        return m
    if p == 1:
        return None if q >= 0 else 1 if th(1) < 1 else next(m for m in range(1, 3 - q) if th(m) < m)
    # ceil(p m) + q >= m once (p - 1) m >= -q
    bound = max(1, math.ceil(Fraction(-q) / (p - 1)) if q < 0 else 1)
    return next((m for m in range(1, bound + 1) if th(m) < m), None)


def gallery_verify_certificate(space: GallerySpace, x, limit: ECSeq,
                               cert: ConvergenceCertificate) -> CertificateCheck:
    """Structural check of ``+-(x_n - limit) <= y_m`` for all ``n >= alpha(m)``."""
    y, th = cert.witness.family, cert.threshold
    dec = gallery_decreasing_to_zero(space, y)
    if not dec.holds:
        return CertificateCheck(False, None, "witness is not decreasing to 0: " + dec.reason)
    if not isinstance(x, UnitVectors) or not limit.is_zero():
        return CertificateCheck(False, None, "pair of shapes outside the supported checks")
    c = abs(x.c)
    if c == 0:
        return CertificateCheck(True, None, "zero family")
    if isinstance(y, Indicators):
        # c e_n <= d 1_{>=m}  iff  n >= m and c <= d
        if c > y.c:
            return CertificateCheck(False, (1, th(1)), "scale of the witness is too small")
        m = _alpha_below_m(th)
        if m is not None:
            return CertificateCheck(False, (m, th(m)), "alpha(m) < m")
        return CertificateCheck(True, None, "alpha(m) >= m and |c| <= d")
    if isinstance(y, ScaledBy):
        # coordinates past the head of v carry v's tail; need tail/m >= c for all m
        m = math.floor(y.v.tail / c) + 1 if y.v.tail >= 0 else 1
        n = max(th(m), y.v.support_length + 1)
        return CertificateCheck(False, (m, n), "witness tail is eventually below the unit vectors")
    return CertificateCheck(False, None, "witness outside the supported shapes")


def gallery_converges(space: GallerySpace, family, limit: ECSeq | None = None) -> Verdict:
    """Order convergence of a family living in ``space``.

    Order convergence forces the tail to be order bounded and forces the
    coordinatewise limit, so those two facts refute; certificates are only
    issued for the shapes :func:`gallery_verify_certificate` can check.
    """
    limit = ECSeq() if limit is None else limit
    tb = gallery_tail_bounded(space, family)
    if tb.fails:
        return Verdict("NOT_CONVERGES", refutation=Refutation(
            "TAIL_UNBOUNDED", {"refuter": tb.witness, "argument": tb.reason}), reason=tb.reason)
    if isinstance(family, UnitVectors):
        if not limit.is_zero():
            j = next(i for i in range(1, limit.support_length + 2) if limit[i] != 0)
            return Verdict("NOT_CONVERGES", refutation=Refutation(
                "COORDINATE_LIMIT_MISMATCH", {"coordinate": j, "limit": Fraction(0), "target": limit[j]}),
                reason="every coordinate of c e_n is eventually 0")
        if space.kind != "linfrep" and family.c != 0:
            return Verdict("UNKNOWN", reason="no supported witness")
        y = Indicators(abs(family.c) or 1)
        cert = ConvergenceCertificate("otilde", DecreasingWitness(
            y, 1, gallery_decreasing_to_zero(space, y).reason), Threshold(1, 0))
        chk = gallery_verify_certificate(space, family, limit, cert)
        if chk.accepted:
            return Verdict("CONVERGES", limit=limit, certificates=(cert,), reason="witness 1_{>=m}")
    return Verdict("UNKNOWN", reason="family outside the supported shapes")


def elin_triptych() -> dict:
    """The three verdicts for ``{e_n}``: convergent into LINFREP by inclusion,
    not convergent in C0REP, not convergent after ``ELIN_T``."""
    e = UnitVectors(Fraction(1))
    return {
        "inclusion": gallery_converges(INCLUSION.target, apply_op(INCLUSION, e)),
        "c0": gallery_converges(IDENTITY.target, apply_op(IDENTITY, e)),
        "elin": gallery_converges(ELIN_T.target, apply_op(ELIN_T, e)),
    }
