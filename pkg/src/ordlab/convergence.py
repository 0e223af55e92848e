"""Closed-form sequence families, decreasing witnesses and convergence certificates.

A family is ``x_n = limit + sum coeff * n**exp * rho**n`` beyond a finite prefix
of explicit overrides.  Applying a linear functional gives an
:class:`~ordlab.exppoly.ExpPoly`, so every order statement about a family in a
polyhedral space reduces to eventual-sign questions, one per facet.

The certificate for ``x -> L`` is a decreasing family ``y_m`` with limit 0 and
a threshold ``alpha(m) = max(1, ceil(p*m) + q)`` such that
``+-(x_n - L) <= y_m`` for every ``n >= alpha(m)``.  For a decreasing family
with entrywise limit 0 in a closed cone, ``inf y_m = 0``; that is what makes
the witness a witness.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exppoly import ExpPoly, eventual_sign
from .linalg import Matrix, add, dot, matvec, scale, sub, vec, zeros
from .outcome import Outcome, fails, holds
from .space import OrderedSpace

__all__ = [
    "Term", "SeqFamily", "make_family", "Threshold", "DecreasingWitness",
    "ConvergenceCertificate", "CertificateCheck", "Refutation", "Verdict",
    "is_decreasing_to_zero", "verify_certificate", "decide_o_convergence",
    "family_add", "family_scale", "family_sub", "map_linear", "family_in_cone",
    "family_leq", "family_leq_const",
]

EXPLICIT_LIMIT = 4000


@dataclass(frozen=True)
class Term:
    coeff: tuple
    rho: Fraction
    exp: int


@dataclass(frozen=True)
class SeqFamily:
    """Use :func:`make_family` to build one; it normalises the terms."""

    dim: int
    limit: tuple
    terms: tuple = ()
    prefix: tuple = ()
    space: OrderedSpace | None = field(default=None, compare=False)

    @property
    def prefix_max(self) -> int:
        return self.prefix[-1][0] if self.prefix else 0

    def prefix_dict(self) -> dict:
        return dict(self.prefix)

    def closed_form(self, n: int) -> tuple:
        out = list(self.limit)
        for t in self.terms:
            w = Fraction(n) ** t.exp * t.rho ** n
            for j, c in enumerate(t.coeff):
                out[j] += c * w
        return tuple(out)

    def at(self, n: int) -> tuple:
        if n < 1:
            raise ValueError("indices are positive integers")
        p = self.prefix_dict()
        return p[n] if n in p else self.closed_form(n)

    def functional(self, phi: Sequence, with_limit: bool = True) -> ExpPoly:
        """``n -> phi(x_n)`` on the closed-form part."""
        phi = vec(phi)
        f = ExpPoly({(t.rho, t.exp): dot(phi, t.coeff) for t in self.terms})
        return f + dot(phi, self.limit) if with_limit else f

    def coordinate(self, j: int) -> ExpPoly:
        return self.functional(tuple(Fraction(int(i == j)) for i in range(self.dim)))

    def divergent_coordinate(self):
        """First coordinate whose closed form is unbounded, with its dominant term."""
        for j in range(self.dim):
            f = self.coordinate(j)
            if f.limit() is None:
                return j, f.dominant()
        return None

    def is_constant(self) -> bool:
        return not self.terms and all(v == self.limit for _, v in self.prefix)


def make_family(space_or_dim, limit, terms: Iterable = (), prefix: Mapping | None = None) -> SeqFamily:
    """``terms`` holds ``(coeff, rho, exp)`` triples; constant terms fold into the limit."""
    if isinstance(space_or_dim, OrderedSpace):
        space, dim = space_or_dim, space_or_dim.dim
    else:
        space, dim = None, int(space_or_dim)
    lim = list(vec(limit))
    if len(lim) != dim:
        raise ValueError(f"limit of length {len(lim)} in dimension {dim}")
    acc: dict = {}
    for coeff, rho, e in terms:
        c, rho = vec(coeff), Fraction(rho)
        if len(c) != dim:
            raise ValueError(f"coefficient of length {len(c)} in dimension {dim}")
        if rho <= 0:
            raise ValueError("rho must be positive")
        if int(e) != e:
            raise ValueError("exponents are integers")
        if rho == 1 and e == 0:
            lim = list(add(lim, c))
            continue
        k = (rho, int(e))
        acc[k] = add(acc[k], c) if k in acc else c
    ts = tuple(Term(c, r, e) for (r, e), c in sorted(acc.items(), reverse=True)
               if any(x != 0 for x in c))
    pre = tuple(sorted((int(k), vec(v)) for k, v in (prefix or {}).items()))
    for k, v in pre:
        if k < 1:
            raise ValueError("prefix indices are positive integers")
        if len(v) != dim:
            raise ValueError(f"prefix entry of length {len(v)} in dimension {dim}")
    return SeqFamily(dim, tuple(lim), ts, pre, space)


def _same_kind(x: SeqFamily, y: SeqFamily):
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")
    if x.space is not None and y.space is not None and x.space != y.space:
        raise ValueError("families live in different spaces")
    return x.space if x.space is not None else y.space


def family_add(x: SeqFamily, y: SeqFamily) -> SeqFamily:
    space = _same_kind(x, y)
    idx = sorted(set(x.prefix_dict()) | set(y.prefix_dict()))
    return make_family(space if space is not None else x.dim, add(x.limit, y.limit),
                       [(t.coeff, t.rho, t.exp) for t in x.terms + y.terms],
                       {n: add(x.at(n), y.at(n)) for n in idx})


def family_scale(lam, x: SeqFamily) -> SeqFamily:
    lam = Fraction(lam)
    return make_family(x.space if x.space is not None else x.dim, scale(lam, x.limit),
                       [(scale(lam, t.coeff), t.rho, t.exp) for t in x.terms],
                       {n: scale(lam, v) for n, v in x.prefix})


def family_sub(x: SeqFamily, y: SeqFamily) -> SeqFamily:
    return family_add(x, family_scale(-1, y))


def map_linear(x: SeqFamily, T: Matrix, target) -> SeqFamily:
    """Termwise image under the matrix ``T`` into ``target`` (a space or a dimension)."""
    return make_family(target, matvec(T, x.limit),
                       [(matvec(T, t.coeff), t.rho, t.exp) for t in x.terms],
                       {n: matvec(T, v) for n, v in x.prefix})


def _facets(space: OrderedSpace):
    return space.cone.facets


def _nonneg_everywhere(space: OrderedSpace, x: SeqFamily):
    """First index ``n`` with ``x_n`` outside the cone, or ``None``."""
    P = x.prefix_max
    for n, v in x.prefix:
        if not space.cone.contains(v):
            return n
    for n in range(1, P + 1):
        if n not in x.prefix_dict() and not space.cone.contains(x.closed_form(n)):
            return n
    for phi in _facets(space):
        s = eventual_sign(x.functional(phi), P + 1)
        if not s.nonneg:
            return s.index
        if s.index > P + 1:
            return s.index - 1
    return None


def family_in_cone(space: OrderedSpace, x: SeqFamily) -> Outcome:
    """HOLDS when ``x_n >= 0`` for every ``n``; FAILS carries an index."""
    bad = _nonneg_everywhere(space, x)
    return holds(None, "every term lies in the cone") if bad is None else fails(bad, "term outside the cone")


def family_leq(space: OrderedSpace, x: SeqFamily, z: SeqFamily) -> Outcome:
    return family_in_cone(space, family_sub(z, x))


def family_leq_const(space: OrderedSpace, x: SeqFamily, y: Sequence) -> Outcome:
    c = make_family(space, y)
    return family_in_cone(space, family_sub(c, x))


# -- thresholds, witnesses, certificates ---------------------------------------------------


@dataclass(frozen=True)
class Threshold:
    """``alpha(m) = max(1, ceil(p*m) + q)``; ``p = 0`` gives a constant threshold."""

    p: Fraction
    q: int

    def __post_init__(self):
        if Fraction(self.p) < 0 or int(self.q) != self.q:
            raise ValueError("threshold needs p >= 0 and integer q")
        object.__setattr__(self, "p", Fraction(self.p))
        object.__setattr__(self, "q", int(self.q))

    def __call__(self, m: int) -> int:
        return max(1, math.ceil(self.p * m) + self.q)


@dataclass(frozen=True)
class DecreasingWitness:
    family: SeqFamily
    monotone_from: int
    inf_is_zero_evidence: str = "decreasing with entrywise limit 0 in a closed cone"


@dataclass(frozen=True)
class ConvergenceCertificate:
    kind: str
    witness: DecreasingWitness
    threshold: Threshold


@dataclass(frozen=True)
class CertificateCheck:
    accepted: bool
    violation: tuple | None = None
    reason: str = ""

    def __bool__(self):
        return self.accepted


@dataclass(frozen=True)
class Refutation:
    kind: str
    detail: dict


@dataclass(frozen=True)
class Verdict:
    outcome: str
    limit: tuple | None = None
    certificates: tuple = ()
    refutation: Refutation | None = None
    reason: str = ""

    @property
    def converges(self) -> bool:
        return self.outcome == "CONVERGES"

    def certificate(self, kind: str):
        return next((c for c in self.certificates if c.kind == kind), None)


def _shifted_power(e: int, k: int) -> ExpPoly:
    """``(m + k)**e`` for ``e >= 0`` as a polynomial in ``m``."""
    return ExpPoly({(1, j): math.comb(e, j) * Fraction(k) ** (e - j) for j in range(e + 1)})


def _decrease_poly(f: ExpPoly) -> ExpPoly:
    """``(m(m+1))**a * (f(m) - f(m+1))``, which has the sign of ``f(m) - f(m+1)``."""
    a = max([0] + [-e for (_, e) in f.terms])
    m_a = ExpPoly.term(1, 1, a)
    m1_a = _shifted_power(a, 1)
    out = ExpPoly()
    for (r, e), c in f.terms.items():
        out = out + ExpPoly.term(c, r, e + a) * m1_a
        out = out - ExpPoly.term(c * r, r, 0) * m_a * _shifted_power(a + e, 1)
    return out


def is_decreasing_to_zero(space: OrderedSpace, y: SeqFamily) -> Outcome:
    """HOLDS with a :class:`DecreasingWitness`, or FAILS with the offending index."""
    if y.divergent_coordinate() is not None or any(c != 0 for c in y.limit):
        return fails(None, "entrywise limit is not 0")
    P = y.prefix_max
    for m in range(1, P + 1):
        if not space.cone.contains(sub(y.at(m), y.at(m + 1))):
            return fails(m, "y_{m+1} <= y_m fails")
    start = P + 1
    for phi in _facets(space):
        s = eventual_sign(_decrease_poly(y.functional(phi)), start)
        if not s.nonneg:
            return fails(max(s.index, start), "y_{m+1} <= y_m fails eventually")
        if s.index > start:
            return fails(s.index - 1, "y_{m+1} <= y_m fails")
    return holds(DecreasingWitness(y, 1), "decreasing with entrywise limit 0")


def _rational_upper_power(rho: Fraction, p: Fraction) -> Fraction:
    """A rational ``r`` with ``rho**p <= r <= 1``."""
    if rho == 1:
        return Fraction(1)
    if p >= 1:
        # rho**p <= rho**k for any integer k <= p; capping k keeps r small to write down
        return rho ** min(math.floor(p), 64)
    r = Fraction(rho ** float(p)).limit_denominator(10 ** 6)
    r = min(r, Fraction(1))
    while r ** p.denominator < rho ** p.numerator:
        r += (1 - r) / 16
    return r


def _monotone_index(rho: Fraction, e: int) -> int:
    """Least ``n`` with ``n**e * rho**n`` nonincreasing from ``n`` on."""
    if e <= 0:
        return 1
    n = 1
    while Fraction(n + 1, n) ** e * rho > 1:
        n *= 2
    lo, hi = max(1, n // 2), n
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid + 1, mid) ** e * rho <= 1:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _envelope_bound(G_terms, th: Threshold):
    """``U(m) >= sum |b| n**e rho**n`` at ``n = alpha(m)`` and the index where it is valid."""
    p, q = th.p, th.q
    U = ExpPoly()
    need_n = 1
    need_m = 1
    for (r, e), b in G_terms.items():
        need_n = max(need_n, _monotone_index(r, e))
        rp = _rational_upper_power(r, p)
        factor = abs(b) * r ** q
        if e >= 0:
            poly = ExpPoly({(1, j): math.comb(e, j) * p ** j * Fraction(q + 1) ** (e - j)
                            for j in range(e + 1)})
        elif q >= 0:
            poly = ExpPoly.term(p ** e, 1, e)
        else:
            poly = ExpPoly.term((p / 2) ** e, 1, e)
            need_m = max(need_m, math.ceil(Fraction(-2 * q) / p))
        U = U + poly * ExpPoly.term(factor, rp, 0)
    # alpha(m) >= p*m + q >= need_n
    need_m = max(need_m, math.ceil((need_n - q) / p))
    return U, need_m


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def _envelope_le(E: ExpPoly, k: int, bound: Fraction) -> bool:
    """Sufficient test for ``E(k) <= bound``; exact for moderate ``k``."""
    if E.is_zero():
        return bound >= 0
    if bound <= 0:
        return False
    logs = [_log(c) + e * math.log(k) + k * _log(r) for (r, e), c in E.terms.items()]
    top = max(logs)
    lhs = top + math.log(sum(math.exp(l - top) for l in logs))
    if lhs < _log(bound) - 1e-9:
        return True
    if k <= 10 ** 5:
        return E(k) <= bound
    return False


class _Tail:
    """``sup_{n >= a} g(n)`` queries for one facet and sign.

    Values below ``N`` (past the prefix and past the point where the absolute
    envelope ``E`` is nonincreasing) are tabulated once as suffix maxima;
    beyond ``N``, ``g <= gamma + E(n)`` settles most queries without a scan.
    """

    def __init__(self, G: ExpPoly, g_at, P: int):
        self.G, self.g_at, self.P = G, g_at, P
        self.gamma = G.terms.get((Fraction(1), 0), Fraction(0))
        self.rest = {k: v for k, v in G.terms.items() if k != (Fraction(1), 0)}
        self.bounded = all(r < 1 or (r == 1 and e < 0) for (r, e) in self.rest)
        self.suffix = None
        if self.bounded:
            self.E = ExpPoly._raw({k: abs(v) for k, v in self.rest.items()})
            n_E = max([1] + [_monotone_index(r, e) for (r, e) in self.rest])
            self.N = max(n_E, P + 1)

    def _table(self):
        if self.suffix is None:
            vals = [self.g_at(n) for n in range(1, self.N)]
            suf = vals[:]
            for i in range(len(suf) - 2, -1, -1):
                suf[i] = max(suf[i], suf[i + 1])
            self.suffix = suf
        return self.suffix

    def violation(self, Ym: Fraction, a: int):
        """First ``n >= a`` with ``g(n) > Ym``, or ``None``."""
        if not self.bounded:
            for n in range(a, self.P + 1):
                if self.g_at(n) > Ym:
                    return n
            return _closed_violation(self.G, Ym, max(a, self.P + 1))
        if a < self.N:
            if self._table()[a - 1] > Ym:
                return next(n for n in range(a, self.N) if self.g_at(n) > Ym)
        k = max(a, self.N)
        if _envelope_le(self.E, k, Ym - self.gamma):
            return None
        return _closed_violation(self.G, Ym, k)


def _closed_violation(G: ExpPoly, Ym: Fraction, start: int):
    s = eventual_sign(Ym - G, start)
    if not s.nonneg:
        return s.index
    if s.index > start:
        return s.index - 1
    return None


def verify_certificate(x: SeqFamily, limit: Sequence, cert: ConvergenceCertificate,
                       space: OrderedSpace | None = None, search: bool = True) -> CertificateCheck:
    """Check ``+-(x_n - limit) <= y_m`` for all ``m`` and all ``n >= alpha(m)``.

    Large ``m`` are handled symbolically: the deviation is bounded by a
    monotone envelope evaluated at ``alpha(m)``, itself bounded by a function
    of ``m`` in the term algebra.  Below the resulting cutoff every ``m`` is
    checked exactly.  A rejection carries a concrete ``(m, n)`` when one was
    found; ``search=False`` skips the hunt for one.
    """
    space = space or x.space
    if space is None:
        raise ValueError("certificate check needs an ordered space")
    L = vec(limit)
    y = cert.witness.family
    th = cert.threshold
    dec = is_decreasing_to_zero(space, y)
    if not dec.holds:
        return CertificateCheck(False, None, "witness is not decreasing to 0: " + dec.reason)
    Px, Py = x.prefix_max, y.prefix_max
    for phi in _facets(space):
        Y = y.functional(phi)
        for s in (1, -1):
            G = x.functional(phi) * s - dot(phi, L) * s
            g_prefix = (lambda n, phi=phi, s=s: s * dot(phi, sub(x.at(n), L)))
            Ym = (lambda m, phi=phi: dot(phi, y.at(m)))
            bad = _check_phi(G, g_prefix, Y, Ym, th, Px, Py, search)
            if bad is not None:
                if bad[0] is None:
                    return CertificateCheck(False, None, bad[1])
                return CertificateCheck(False, bad, f"facet {tuple(str(a) for a in phi)} violated")
    return CertificateCheck(True, None, "accepted")


def _check_phi(G, g_prefix, Y, Ym, th, Px, Py, search=True):
    tail = _Tail(G, g_prefix, Px)
    cutoff = None
    if th.p == 0:
        # constant threshold: the closed form must sit exactly on the limit
        if not tail.rest and tail.gamma <= 0 and th(1) > Px:
            cutoff = Py + 1
    elif tail.bounded:
        U, need_m = _envelope_bound(tail.rest, th)
        need_m = max(need_m, Py + 1, math.ceil((Px + 1 - th.q) / th.p))
        s = eventual_sign(Y - tail.gamma - U, need_m)
        if s.nonneg:
            cutoff = s.index
    if cutoff is not None and cutoff - 1 <= EXPLICIT_LIMIT:
        for m in range(1, cutoff):
            n = tail.violation(Ym(m), th(m))
            if n is not None:
                return (m, n)
        return None
    if not search:
        return (None, "tail not verified")
    ms = list(range(1, 65))
    k = 128
    while k <= 2 ** 40:
        ms.append(k)
        k *= 2
    for m in ms:
        n = tail.violation(Ym(m), th(m))
        if n is not None:
            return (m, n)
    return (None, "could not verify the tail symbolically and found no violation")


# -- decision ------------------------------------------------------------------------------


def _limit_vector(x: SeqFamily):
    d = x.divergent_coordinate()
    if d is not None:
        return None, d
    return x.limit, None


def _scale_estimate(space, x, L, u):
    """``sup_n n * E(n) / phi(u)`` over facets, ``E`` the absolute envelope of ``x_n - L``.

    ``n * E(n)`` is nonincreasing past the monotone index of its terms, so a
    finite scan gives the supremum of the closed form.
    """
    best = Fraction(0)
    for phi in _facets(space):
        pu = dot(phi, u)
        if pu <= 0:
            continue
        G = x.functional(phi) - dot(phi, L)
        E = ExpPoly({k: abs(v) for k, v in G.terms.items()})
        horizon = max([1] + [_monotone_index(r, e + 1) for (r, e) in E.terms])
        for n in range(1, horizon + 1):
            best = max(best, Fraction(n) * E(n) / pu)
        for n, v in x.prefix:
            best = max(best, abs(dot(phi, sub(v, L))) * n / pu)
    return best


def _synth(space, x, L, u, attempts: int = 24):
    """An o certificate ``y_m = (A/m) u``, ``alpha(m) = m``, and the otilde
    certificate ``y_m = u/m``, ``alpha(m) = A*m`` it induces.

    ``|phi(x_n - L)| <= A phi(u) / n`` for all ``n`` gives both at once.
    """
    A = Fraction(1)
    est = _scale_estimate(space, x, L, u)
    while A < est:
        A *= 2
    zero = zeros(space.dim)
    for _ in range(attempts):
        o = ConvergenceCertificate("o", DecreasingWitness(
            make_family(space, zero, [(scale(A, u), 1, -1)]), 1), Threshold(1, 0))
        if verify_certificate(x, L, o, space, search=False).accepted:
            ot = ConvergenceCertificate("otilde", DecreasingWitness(
                make_family(space, zero, [(u, 1, -1)]), 1), Threshold(A, 0))
            if verify_certificate(x, L, ot, space, search=False).accepted:
                return o, ot
        A *= 2
    return None


def _synth_eventually_constant(space, x, L, u):
    """Families equal to their limit past the prefix: a constant threshold suffices."""
    zero = zeros(space.dim)
    ot = ConvergenceCertificate("otilde", DecreasingWitness(
        make_family(space, zero, [(u, 1, -1)]), 1), Threshold(0, x.prefix_max + 1))
    if not verify_certificate(x, L, ot, space, search=False).accepted:
        return None
    pair = _synth(space, x, L, u)
    return None if pair is None else (pair[0], ot)


def decide_o_convergence(x: SeqFamily, target: Sequence | None = None,
                         space: OrderedSpace | None = None) -> Verdict:
    """Decide o- and otilde-convergence of a closed-form family.

    CONVERGES carries one certificate of each kind, both accepted by
    :func:`verify_certificate`.
    """
    space = space or x.space
    if space is None:
        raise ValueError("convergence needs an ordered space")
    if space.cone.lines:
        return Verdict("UNKNOWN", reason="cone is not pointed")
    L, div = _limit_vector(x)
    if div is not None:
        j, ((r, e), c) = div
        return Verdict("NOT_CONVERGES", refutation=Refutation(
            "TAIL_UNBOUNDED", {"coordinate": j, "rho": r, "exp": e, "coeff": c}),
            reason=f"coordinate {j} is unbounded")
    if target is not None and vec(target) != L:
        t = vec(target)
        j = next(i for i in range(len(L)) if L[i] != t[i])
        return Verdict("NOT_CONVERGES", limit=L, refutation=Refutation(
            "COORDINATE_LIMIT_MISMATCH", {"coordinate": j, "limit": L[j], "target": t[j]}),
            reason=f"coordinate {j} tends to {L[j]}, not {t[j]}")
    for eq in space.cone.equalities:
        f = x.functional(eq, with_limit=False)
        if not f.is_zero():
            return Verdict("NOT_CONVERGES", limit=L, refutation=Refutation(
                "WITNESS_SPACE_EXHAUSTED", {"equality": eq, "deviation": f}),
                reason="deviation leaves the span of the cone infinitely often")
    u = space.cone.interior_point
    if not x.terms:
        certs = _synth_eventually_constant(space, x, L, u)
    else:
        certs = _synth(space, x, L, u)
    if certs is None:
        return Verdict("UNKNOWN", limit=L, reason="no certificate found within the search budget")
    return Verdict("CONVERGES", limit=L, certificates=certs, reason="certified")
