"""Exact rational vectors and matrices.

Vectors are tuples of :class:`fractions.Fraction`; matrices are tuples of row
tuples.  Everything here is pure and exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple

__all__ = [
    "Fraction", "parse_rational", "format_rational", "vec", "mat",
    "parse_vector", "format_vector", "zeros", "unit", "identity", "dot",
    "add", "sub", "scale", "neg", "matvec", "matmul", "transpose", "rank",
    "rref", "nullspace", "solve", "column_space", "primitive", "is_zero",
    "same_span", "inverse", "lin_independent",
]


def parse_rational(value) -> Fraction:
    """Parse ``"p/q"``, an int, or a Fraction.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            p, q = text.split("/", 1)
            p, q = int(p), int(q)
            if q == 0:
                raise ValueError(f"zero denominator in {value!r}")
            return Fraction(p, q)
        return Fraction(int(text))
    raise TypeError(f"cannot read {value!r} as an exact rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(parse_rational(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    out = tuple(vec(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise ValueError("ragged matrix")
    return out


def parse_vector(items) -> Vector:
    return vec(items)


def format_vector(v: Sequence) -> list[str]:
    return [format_rational(x) for x in v]


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if k == i else 0) for k in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def _check(u, v):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch: {len(u)} vs {len(v)}")


def dot(u: Sequence, v: Sequence) -> Fraction:
    _check(u, v)
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u, v) -> Vector:
    _check(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> Vector:
    _check(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def neg(v) -> Vector:
    return tuple(-a for a in v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def matvec(A: Matrix, v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in A)


def transpose(A: Matrix) -> Matrix:
    if not A:
        return ()
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    return tuple(tuple(dot(r, c) for c in Bt) for r in A)


def rref(A: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(map(Fraction, r)) for r in A]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def rank(A: Sequence[Sequence]) -> int:
    if not A:
        return 0
    return len(rref(A)[1])


def lin_independent(vectors: Sequence[Sequence]) -> bool:
    return rank(vectors) == len(vectors)


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : A x = 0}`` (primitive integer vectors)."""
    if ncols is None:
        if not A:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(A[0])
    if not A:
        return [unit(ncols, i) for i in range(ncols)]
    R, pivots = rref(A, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(A: Matrix, b: Sequence) -> Vector | None:
    """One solution of ``A x = b`` or ``None`` if inconsistent."""
    ncols = len(A[0]) if A else 0
    aug = [tuple(row) + (bi,) for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[ncols]
    return tuple(x)


def inverse(A: Matrix) -> Matrix:
    n = len(A)
    aug = [tuple(A[i]) + unit(n, i) for i in range(n)]
    R, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(r[n:]) for r in R)


def column_space(A: Matrix) -> list[Vector]:
    """Basis of the column space, drawn from the columns of ``A``."""
    if not A:
        return []
    _, pivots = rref(A)
    cols = transpose(A)
    return [tuple(cols[c]) for c in pivots]


def same_span(U: Sequence[Sequence], V: Sequence[Sequence], dim: int) -> bool:
    ru = rank(U) if U else 0
    rv = rank(V) if V else 0
    if ru != rv:
        return False
    both = list(U) + list(V)
    return (rank(both) if both else 0) == ru


def primitive(v: Sequence) -> Vector:
    """Positive rescaling of ``v`` to a coprime integer vector."""
    v = [Fraction(x) for x in v]
    if all(x == 0 for x in v):
        return tuple(v)
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(Fraction(a // g) for a in ints)
