"""Disjointness, disjoint complements, ideals, bands and band projections.

The definitions work with upper-bound sets, which are polyhedra, so a single
disjointness question is decided directly by polyhedron equality.  Questions
quantifying over whole subspaces go through the vector lattice cover, where
disjointness becomes disjointness of supports.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cover import Cover, make_cover
from .linalg import (Matrix, add, identity, inverse, matmul, matvec, neg, nullspace,
                     rank, sub, transpose, vec)
from .outcome import Outcome, fails, holds, unknown
from .polyhedron import polyhedron_equal, polyhedron_subset
from .space import OrderedSpace, Subspace, upper_bounds

__all__ = [
    "DisjointnessVerdict", "is_disjoint", "disjoint_direct", "disjoint_via_cover",
    "support", "disjoint_complement", "is_ideal", "is_band", "band_projection",
    "upper_dominated", "zero_set_subspace", "is_projection",
]


@dataclass(frozen=True)
class DisjointnessVerdict:
    pair: tuple
    direct_result: bool
    cover_result: bool | None
    agree: bool

    def __bool__(self):
        return self.direct_result


def disjoint_direct(space: OrderedSpace, x: Sequence, y: Sequence) -> bool:
    """``{+-(x+y)}^u == {+-(x-y)}^u``."""
    s, d = add(vec(x), vec(y)), sub(vec(x), vec(y))
    return polyhedron_equal(upper_bounds(space, [s, neg(s)]), upper_bounds(space, [d, neg(d)]))


def disjoint_via_cover(cover: Cover, x: Sequence, y: Sequence) -> bool:
    ix, iy = cover(x), cover(y)
    return all(a == 0 or b == 0 for a, b in zip(ix, iy))


def _cover_for(space, cover):
    if cover is not None:
        return cover
    made = make_cover(space)
    return made.witness if made.holds else None


def is_disjoint(space: OrderedSpace, x: Sequence, y: Sequence, cover: Cover | None = None,
                use_cover: bool = True) -> DisjointnessVerdict:
    direct = disjoint_direct(space, x, y)
    cv = _cover_for(space, cover) if use_cover else None
    via = disjoint_via_cover(cv, x, y) if cv is not None else None
    return DisjointnessVerdict((vec(x), vec(y)), direct, via, via is None or via == direct)


def support(cover: Cover, vectors: Iterable[Sequence]) -> frozenset:
    """Target coordinates where some image is nonzero."""
    out = set()
    for v in vectors:
        out.update(j for j, a in enumerate(cover(v)) if a != 0)
    return frozenset(out)


def zero_set_subspace(space: OrderedSpace, cover: Cover, coords: Iterable[int]) -> Subspace:
    """``{x : i(x)_j = 0 for j in coords}``."""
    rows = [cover.embedding[j] for j in sorted(coords)]
    if not rows:
        return Subspace(space, identity(space.dim))
    return Subspace.spanned_by(space, nullspace(rows, space.dim))


def _elements(M):
    if isinstance(M, Subspace):
        return list(M.basis)
    return [vec(m) for m in M]


def disjoint_complement(space: OrderedSpace, M, cover: Cover | None = None) -> Outcome:
    """``M^d`` for a finite set or a subspace, as a Subspace (HOLDS) or UNKNOWN."""
    cv = _cover_for(space, cover)
    if cv is None:
        return unknown("no vector lattice cover available")
    S = support(cv, _elements(M))
    return holds(zero_set_subspace(space, cv, S), "zero set of the support in the cover")


def upper_dominated(space: OrderedSpace, x: Sequence, y: Sequence) -> bool:
    """``{+-y}^u`` is contained in ``{+-x}^u`` (the solidity premise)."""
    x, y = vec(x), vec(y)
    return polyhedron_subset(upper_bounds(space, [y, neg(y)]), upper_bounds(space, [x, neg(x)]))


def is_ideal(sub_: Subspace, cover: Cover | None = None) -> Outcome:
    """Solidity through the cover.

    Upper-bound domination ``{+-y}^u <= {+-x}^u`` is ``|i(x)| <= |i(y)|`` in the
    cover, so a subspace is solid exactly when it contains every ``x`` whose
    image is supported inside the support of the image of ``M``.  FAILS carries
    such an ``x`` outside ``M``.
    """
    space = sub_.parent
    cv = _cover_for(space, cover)
    if cv is None:
        return unknown("no vector lattice cover available")
    S = support(cv, sub_.basis)
    Z = zero_set_subspace(space, cv, set(range(cv.target_dim)) - S)
    for z in Z.basis:
        if not sub_.contains(z):
            return fails(z, "element supported inside the support of M but outside M")
    return holds(None, "contains every element supported inside its support")


def is_band(sub_: Subspace, cover: Cover | None = None) -> Outcome:
    space = sub_.parent
    cv = _cover_for(space, cover)
    if cv is None:
        return unknown("no vector lattice cover available")
    d1 = disjoint_complement(space, sub_, cv).witness
    d2 = disjoint_complement(space, d1, cv).witness
    if d2 == sub_:
        return holds(d1, "M equals its second disjoint complement")
    extra = next((v for v in d2.basis if not sub_.contains(v)), None)
    return fails(extra, "second disjoint complement is larger", complement=d1, double_complement=d2)


def band_projection(space: OrderedSpace, band: Subspace, cover: Cover | None = None) -> Outcome:
    """Band projection matrix (HOLDS) or the reason none exists (FAILS)."""
    b = is_band(band, cover)
    if not b.holds:
        return fails(b, "not a band")
    comp = b.witness
    basis = list(band.basis) + list(comp.basis)
    if len(basis) != space.dim or rank(basis) != space.dim:
        return fails(len(basis), "band plus its disjoint complement is not the whole space")
    C = transpose(basis)
    D = tuple(tuple(Fraction(1 if (i == j and i < band.dim) else 0) for j in range(space.dim))
              for i in range(space.dim))
    P = matmul(matmul(C, D), inverse(C))
    for g in space.cone.rays:
        if not space.cone.contains(matvec(P, g)):
            return fails(g, "projection is not positive")
    return holds(P, "band projection")


def is_projection(P: Matrix) -> bool:
    return matmul(P, P) == tuple(tuple(x) for x in P)
