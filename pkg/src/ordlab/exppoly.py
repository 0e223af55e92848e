"""Scalar functions ``n -> sum c * n**e * rho**n`` and their eventual sign.

Every positive ``rho`` and integer ``e`` is allowed, so the class is closed
under sums, products and rational scaling.  The sign of such a function is
eventually that of its dominant term (largest ``rho``, then largest ``e``);
:func:`eventual_sign` turns this into an exact crossover index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = ["ExpPoly", "Sign", "eventual_sign", "nonneg_from", "positive_from", "sign_at"]


def _log(x) -> float:
    """``log`` of a positive rational of any size."""
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


def _frac(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q'")
    return Fraction(x)


class ExpPoly:
    """Immutable finite sum of terms ``coeff * n**exp * rho**n``."""

    __slots__ = ("_terms", "_flogs")

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else ((
            (r, e), c) for c, r, e in terms)
        for (rho, e), c in items:
            rho, c = _frac(rho), _frac(c)
            if rho <= 0:
                raise ValueError("rho must be positive")
            if int(e) != e:
                raise ValueError("exponent must be an integer")
            key = (rho, int(e))
            acc[key] = acc.get(key, Fraction(0)) + c
        self._terms = {k: v for k, v in acc.items() if v != 0}
        self._flogs = None

    @classmethod
    def _raw(cls, terms: dict) -> "ExpPoly":
        """Trusted constructor: keys ``(Fraction, int)``, values ``Fraction``."""
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v}
        obj._flogs = None
        return obj

    def _float_terms(self) -> list:
        """``(log|c|, e, log rho, c > 0)`` per term, computed once."""
        if self._flogs is None:
            self._flogs = [(_log(abs(c)), e, _log(r), c > 0) for (r, e), c in self._terms.items()]
        return self._flogs

    @classmethod
    def const(cls, c) -> "ExpPoly":
        return cls({(1, 0): c})

    @classmethod
    def term(cls, c, rho=1, e=0) -> "ExpPoly":
        return cls({(rho, e): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        return isinstance(other, ExpPoly) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "ExpPoly(0)"
        parts = [f"{c}*n^{e}*({r})^n" for (r, e), c in sorted(self._terms.items())]
        return "ExpPoly(" + " + ".join(parts) + ")"

    def __add__(self, other):
        other = other if isinstance(other, ExpPoly) else ExpPoly.const(other)
        t = dict(self._terms)
        for k, v in other._terms.items():
            t[k] = t[k] + v if k in t else v
        return ExpPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        other = other if isinstance(other, ExpPoly) else ExpPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            c = _frac(other)
            return ExpPoly._raw({k: c * v for k, v in self._terms.items()})
        t: dict = {}
        for (r1, e1), c1 in self._terms.items():
            for (r2, e2), c2 in other._terms.items():
                k = (r1 * r2, e1 + e2)
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return ExpPoly._raw(t)

    __rmul__ = __mul__

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("index must be a positive integer")
        return sum((c * Fraction(n) ** e * r ** n for (r, e), c in self._terms.items()),
                   Fraction(0))

    def dominant(self):
        """``((rho, e), coeff)`` of the eventually largest term, or ``None``."""
        if not self._terms:
            return None
        k = max(self._terms)
        return k, self._terms[k]

    def limit(self):
        """``Fraction`` limit, or ``None`` when the function diverges."""
        d = self.dominant()
        if d is None:
            return Fraction(0)
        (r, e), c = d
        if r < 1 or (r == 1 and e < 0):
            return Fraction(0)
        if r == 1 and e == 0:
            return c
        return None

    def to_float(self, n: int) -> float:
        total = 0.0
        ln = math.log(n)
        for lc, e, lr, pos in self._float_terms():
            l = e * ln + n * lr + lc
            w = math.exp(l) if l < 700 else math.inf
            total += w if pos else -w
        return total

    def approx(self, n: int) -> tuple[float, float]:
        """Float estimate of ``f(n)`` and of ``sum |terms|`` sharing one scale.

        Both are scaled by ``exp(-L)`` for the largest term log ``L`` so that
        neither overflows nor underflows.
        """
        ln = math.log(n)
        logs = [(lc + e * ln + n * lr, pos) for lc, e, lr, pos in self._float_terms()]
        if not logs:
            return 0.0, 0.0
        top = max(l for l, _ in logs)
        s = a = 0.0
        for l, pos in logs:
            w = math.exp(l - top)
            s += w if pos else -w
            a += w
        return s, a


@dataclass(frozen=True)
class Sign:
    """``NONNEG_FROM`` (f >= 0 for n >= index) or ``NEG_FROM`` (f < 0 for n >= index).

    ``index`` is the least index with that property.
    """

    kind: str
    index: int

    @property
    def nonneg(self) -> bool:
        return self.kind == "NONNEG_FROM"


def sign_at(f: ExpPoly, n: int) -> int:
    """Exact sign of ``f(n)``, decided in floating point when the margin is safe."""
    s, a = f.approx(n)
    if a and abs(s) > 1e-9 * a:
        return 1 if s > 0 else -1
    v = f(n)
    return (v > 0) - (v < 0)


def _first_true(pred, lo: int) -> int:
    """Least ``n >= lo`` with ``pred(n)`` for a predicate monotone on ``[lo, oo)``."""
    if pred(lo):
        return lo
    step = 1
    hi = lo + 1
    while not pred(hi):
        lo = hi
        step *= 2
        hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _log_le(a: Fraction, d: int, r: Fraction, n: int, bound: Fraction) -> bool:
    """``a * n**d * r**n <= bound`` via a float filter and an exact check near ties."""
    lhs = _log(a) + d * math.log(n) + n * _log(r)
    rhs = _log(bound)
    if lhs < rhs - 1e-9:
        return True
    if lhs > rhs + 1e-9:
        return False
    return a * Fraction(n) ** d * r ** n <= bound


def _domination_index(f: ExpPoly) -> int:
    """An index past which the dominant term outweighs the rest."""
    (r0, e0), c0 = f.dominant()
    others = [(k, c) for k, c in f.terms.items() if k != (r0, e0)]
    if not others:
        return 1
    bound = Fraction(1, len(others) + 1)
    N = 1
    for (r, e), c in others:
        a, ratio, d = abs(c) / abs(c0), r / r0, e - e0
        # ratio term a * n**d * ratio**n is nonincreasing from n1 on
        if d <= 0:
            n1 = 1
        else:
            n1 = _first_true(lambda n: Fraction(n + 1, n) ** d * ratio <= 1, 1)
        n2 = _first_true(lambda n: _log_le(a, d, ratio, n, bound), n1)
        while not (a * Fraction(n2) ** d * ratio ** n2 <= bound):
            n2 *= 2
        N = max(N, n2)
    return N


def eventual_sign(f: ExpPoly, start: int = 1) -> Sign:
    """Exact eventual sign with the least crossover index ``>= start``."""
    if f.is_zero():
        return Sign("NONNEG_FROM", start)
    _, c0 = f.dominant()
    want = 1 if c0 > 0 else -1
    N = max(_domination_index(f), start)
    n = N - 1
    while n >= start:
        s = sign_at(f, n)
        ok = s >= 0 if want > 0 else s < 0
        if not ok:
            break
        n -= 1
    return Sign("NONNEG_FROM" if want > 0 else "NEG_FROM", n + 1)


def nonneg_from(f: ExpPoly, start: int = 1) -> int | None:
    """Least ``N >= start`` with ``f(n) >= 0`` for all ``n >= N``, or ``None``."""
    s = eventual_sign(f, start)
    return s.index if s.nonneg else None


def positive_from(f: ExpPoly, start: int = 1) -> int | None:
    """Least ``N >= start`` with ``f(n) > 0`` for all ``n >= N``, or ``None``."""
    d = f.dominant()
    if d is None or d[1] < 0:
        return None
    # past the domination index the other terms sum to strictly less than the dominant one
    n = max(_domination_index(f), start) - 1
    while n >= start and sign_at(f, n) > 0:
        n -= 1
    return n + 1
