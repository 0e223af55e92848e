"""Exact two-phase simplex with Bland's rule.

The public entry points work on polyhedra ``{x : a.x >= b}`` with free
variables and return exact points, unbounded rays, Farkas certificates and
dual solutions.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, zeros

__all__ = [
    "LPStatus", "LPResult", "Feasibility", "lp_feasible", "lp_optimize",
    "solve_standard_form", "farkas_holds",
]


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    point: Vector | None = None
    certificate: Vector | None = None

    def __bool__(self):
        return self.feasible


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Fraction | None = None
    point: Vector | None = None
    ray: Vector | None = None
    certificate: Vector | None = None
    dual: Vector | None = None
    dual_value: Fraction | None = None


@dataclass
class _Std:
    status: LPStatus
    z: list = field(default_factory=list)
    basis: list = field(default_factory=list)
    direction: list | None = None


def _pivot(T, r, c):
    p = T[r][c]
    if p != 1:
        T[r] = [x / p for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f != 0:
                T[i] = [a - f * b for a, b in zip(T[i], row)]


def _run(T, basis, cost, ncols):
    """Minimise ``cost`` over the tableau in place.  Bland's rule."""
    while True:
        cb = [cost[b] for b in basis]
        enter = None
        for j in range(ncols):
            if j in basis:
                continue
            r = cost[j] - sum((cb[i] * T[i][j] for i in range(len(T)) if T[i][j] != 0), Fraction(0))
            if r < 0:
                enter = j
                break
        if enter is None:
            return LPStatus.OPTIMAL, None
        best = None
        for i, row in enumerate(T):
            a = row[enter]
            if a > 0:
                ratio = row[-1] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            d = [Fraction(0)] * ncols
            d[enter] = Fraction(1)
            for i, row in enumerate(T):
                d[basis[i]] = -row[enter]
            return LPStatus.UNBOUNDED, d
        leave = best[1]
        _pivot(T, leave, enter)
        basis[leave] = enter


def solve_standard_form(c: Sequence, M: Sequence[Sequence], b: Sequence) -> _Std:
    """Minimise ``c.z`` subject to ``M z = b``, ``z >= 0``."""
    n = len(c)
    m = len(M)
    rows = []
    for row, bi in zip(M, b):
        row = [Fraction(x) for x in row]
        bi = Fraction(bi)
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append(row + [bi])
    # phase 1 with one artificial per row
    T = [row[:n] + [Fraction(1 if k == i else 0) for k in range(m)] + [row[n]]
         for i, row in enumerate(rows)]
    basis = [n + i for i in range(m)]
    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    _run(T, basis, cost1, n + m)
    if any(T[i][-1] != 0 for i in range(m) if basis[i] >= n):
        return _Std(LPStatus.INFEASIBLE)
    # drive zero-level artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(T):
        if basis[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, col)
            basis[i] = col
        i += 1
    T = [row[:n] + [row[-1]] for row in T]
    status, direction = _run(T, basis, [Fraction(x) for x in c], n)
    z = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        z[bcol] = T[i][-1]
    return _Std(status, z, basis, direction)


def _split(A, b):
    """Free-variable system ``A x >= b`` as ``[A, -A, -I] z = b``."""
    m = len(A)
    n = len(A[0]) if A else 0
    M = []
    for i, row in enumerate(A):
        M.append(list(row) + [-x for x in row] + [Fraction(-1 if k == i else 0) for k in range(m)])
    return M, n


def _hrep(P):
    A = [tuple(a) for a, _ in P.hrep]
    b = [Fraction(o) for _, o in P.hrep]
    for a in A:
        if len(a) != P.dim:
            raise ValueError(f"constraint of length {len(a)} in a {P.dim}-dimensional polyhedron")
    return A, b


def _farkas(A, b, n):
    """Nonnegative ``y`` with ``y^T A = 0`` and ``y.b = 1``."""
    m = len(A)
    M = [[A[i][j] for i in range(m)] for j in range(n)]
    M.append([b[i] for i in range(m)])
    rhs = [Fraction(0)] * n + [Fraction(1)]
    res = solve_standard_form([Fraction(0)] * m, M, rhs)
    if res.status is LPStatus.INFEASIBLE:
        raise ArithmeticError("no Farkas certificate although the system is infeasible")
    return tuple(res.z)


def farkas_holds(A, b, y) -> bool:
    """Check that ``y`` derives ``0 >= c`` with ``c > 0`` from ``A x >= b``."""
    if any(v < 0 for v in y):
        return False
    n = len(A[0]) if A else 0
    combo = [sum((y[i] * A[i][j] for i in range(len(A))), Fraction(0)) for j in range(n)]
    return all(v == 0 for v in combo) and dot(y, b) > 0


def lp_feasible(P) -> Feasibility:
    """Feasible point of ``P`` or a Farkas infeasibility certificate."""
    A, b = _hrep(P)
    if not A:
        return Feasibility(True, zeros(P.dim))
    M, n = _split(A, b)
    res = solve_standard_form([Fraction(0)] * len(M[0]), M, b)
    if res.status is LPStatus.INFEASIBLE:
        return Feasibility(False, certificate=_farkas(A, b, n))
    z = res.z
    x = tuple(z[j] - z[n + j] for j in range(n))
    return Feasibility(True, point=x)


def lp_optimize(objective: Sequence, P, sense: str = "min") -> LPResult:
    """Optimise a linear objective over ``P`` exactly.

    ``sense`` is ``"min"`` or ``"max"``.  An optimal result carries the dual
    solution ``y >= 0`` of the dual program, computed by a separate solve, so
    that ``dual_value`` equal to ``value`` certifies optimality.
    """
    if sense not in ("min", "max"):
        raise ValueError(f"unknown sense {sense!r}")
    A, b = _hrep(P)
    c = [Fraction(x) for x in objective]
    if len(c) != P.dim:
        raise ValueError(f"objective of length {len(c)} for dimension {P.dim}")
    sign = 1 if sense == "min" else -1
    cmin = [sign * x for x in c]
    n = P.dim
    if not A:
        if all(x == 0 for x in c):
            return LPResult(LPStatus.OPTIMAL, Fraction(0), zeros(n), dual=(), dual_value=Fraction(0))
        ray = tuple(-x for x in cmin)
        return LPResult(LPStatus.UNBOUNDED, ray=ray)
    M, _ = _split(A, b)
    cz = cmin + [-x for x in cmin] + [Fraction(0)] * len(A)
    res = solve_standard_form(cz, M, b)
    if res.status is LPStatus.INFEASIBLE:
        return LPResult(LPStatus.INFEASIBLE, certificate=_farkas(A, b, n))
    if res.status is LPStatus.UNBOUNDED:
        d = res.direction
        ray = tuple(d[j] - d[n + j] for j in range(n))
        return LPResult(LPStatus.UNBOUNDED, ray=ray)
    z = res.z
    x = tuple(z[j] - z[n + j] for j in range(n))
    value = dot(c, x)
    # dual: max b.y  s.t.  A^T y = cmin, y >= 0
    m = len(A)
    MT = [[A[i][j] for i in range(m)] for j in range(n)]
    dres = solve_standard_form([-bi for bi in b], MT, cmin)
    if dres.status is not LPStatus.OPTIMAL:
        raise ArithmeticError("dual program not optimal although the primal is")
    y = tuple(dres.z)
    return LPResult(LPStatus.OPTIMAL, value, x, dual=y, dual_value=sign * dot(b, y))
