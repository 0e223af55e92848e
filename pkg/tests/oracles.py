"""Independent reference implementations used by the tests.

Nothing here imports the library's linear algebra, LP or double description
code; the oracles are deliberately naive.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def gauss_solve(A, b):
    """Unique solution of a square system, or None when singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return tuple(M[i][n] / M[i][i] for i in range(n))


def gauss_rank(rows):
    M = [[Fraction(v) for v in r] for r in rows]
    rank, cols = 0, len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(M)) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(len(M)):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * p for a, p in zip(M[r], M[rank])]
        rank += 1
    return rank


def brute_vertices(cons, dim):
    """Vertices of ``{x : a.x >= b}`` by trying every ``dim``-subset of tight constraints."""
    out = set()
    for idx in itertools.combinations(range(len(cons)), dim):
        x = gauss_solve([cons[i][0] for i in idx], [cons[i][1] for i in idx])
        if x is None:
            continue
        if all(sum(Fraction(a) * v for a, v in zip(av, x)) >= Fraction(bv) for av, bv in cons):
            out.add(x)
    return out


def brute_min(obj, cons, dim):
    """Minimum of ``obj`` over a polytope via its vertices (None if there are none)."""
    vs = brute_vertices(cons, dim)
    if not vs:
        return None
    return min(sum(Fraction(c) * v for c, v in zip(obj, x)) for x in vs)


def first_stable_sign(f, start, horizon=400):
    """Least ``N >= start`` with the sign of ``f(n)`` constant on ``[N, start + horizon]``."""
    vals = [f(n) for n in range(start, start + horizon + 1)]
    last = vals[-1] >= 0
    N = start + horizon
    while N > start and (vals[N - 1 - start] >= 0) == last:
        N -= 1
    return N, last


def orthant_disjoint(x, y):
    return all(a == 0 or b == 0 for a, b in zip(x, y))


def orthant_modulus(T, x):
    """``sup {Tz : -x <= z <= x}`` in the orthant, over the sign patterns of the box."""
    best = None
    for signs in itertools.product((-1, 1), repeat=len(x)):
        z = [s * v for s, v in zip(signs, x)]
        img = [sum(Fraction(a) * b for a, b in zip(row, z)) for row in T]
        best = img if best is None else [max(p, q) for p, q in zip(best, img)]
    return tuple(best)


def certificate_samples_hold(x, limit, cert, facets, m_max=25, n_span=40):
    """Spot-check ``-y_m <= x_n - limit <= y_m`` on a finite grid, facet by facet."""
    y, th = cert.witness.family, cert.threshold
    for m in range(1, m_max + 1):
        ym = y.at(m)
        a = th(m)
        for n in range(a, a + n_span):
            d = [p - q for p, q in zip(x.at(n), limit)]
            for f in facets:
                fy = sum(p * q for p, q in zip(f, ym))
                fd = sum(p * q for p, q in zip(f, d))
                if fy - fd < 0 or fy + fd < 0:
                    return False
    return True
