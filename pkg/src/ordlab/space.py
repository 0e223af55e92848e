"""Finite-dimensional ordered vector spaces with closed polyhedral cones."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .linalg import (Vector, add, dot, is_zero, matvec, neg, rank, same_span,
                     scale, sub, transpose, unit, vec, zeros)
from .lp import LPStatus, lp_feasible, lp_optimize
from .outcome import Outcome, fails, holds, unknown
from .polyhedron import (Polyhedron, canonical_key, cone_hrep, double_description,
                         polyhedron_equal)

__all__ = [
    "Cone", "OrderedSpace", "Subspace", "ConeAxioms", "ORTH", "K4", "HALF",
    "space_by_name", "leq", "cone_axioms", "order_interval",
    "is_order_bounded", "upper_bounds", "lower_bounds", "infimum",
    "supremum", "is_lattice", "has_rdp", "is_majorizing", "is_order_dense",
    "singleton_dual_test",
]


@dataclass(frozen=True)
class Cone:
    """Closed polyhedral wedge ``cone(rays) + span(lines)`` in ``Q^dim``.

    ``facets`` lists irredundant inner normals ``f`` with ``f.x >= 0``;
    equalities of a lower-dimensional cone appear in ``facets`` as opposite
    pairs and separately in ``equalities``.
    """

    dim: int
    rays: tuple
    lines: tuple
    facets: tuple
    equalities: tuple

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence], dim: int | None = None,
                        lines: Iterable[Sequence] = ()) -> "Cone":
        gens = [vec(g) for g in generators]
        lins = [vec(l) for l in lines]
        if dim is None:
            dim = len((gens + lins)[0])
        facets, eqs = cone_hrep(gens, lins, dim)
        return cls._from_hrep(facets, eqs, dim)

    @classmethod
    def from_facets(cls, normals: Iterable[Sequence], dim: int | None = None) -> "Cone":
        normals = [vec(f) for f in normals]
        if dim is None:
            dim = len(normals[0])
        rays, lines = double_description(normals, dim)
        facets, eqs = cone_hrep(rays, lines, dim)
        return cls._from_hrep(facets, eqs, dim)

    @classmethod
    def _from_hrep(cls, facets, eqs, dim):
        all_normals = list(facets)
        for e in eqs:
            all_normals += [e, neg(e)]
        rays, lines = double_description(all_normals, dim)
        return cls(dim, tuple(rays), tuple(lines),
                   tuple(sorted(facets, key=canonical_key)) + tuple(x for e in eqs for x in (e, neg(e))),
                   tuple(eqs))

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise ValueError(f"dimension mismatch: {len(x)} vs {self.dim}")
        return all(dot(f, x) >= 0 for f in self.facets)

    @property
    def proper_facets(self) -> tuple:
        return tuple(f for f in self.facets if f not in self.equalities and neg(f) not in self.equalities)

    @cached_property
    def interior_point(self) -> Vector:
        """Sum of the extreme rays (relative interior when pointed)."""
        p = zeros(self.dim)
        for r in self.rays:
            p = add(p, r)
        return p

    def as_polyhedron(self, shift: Sequence | None = None, sign: int = 1) -> Polyhedron:
        """``shift + sign*K`` as an H-polyhedron."""
        shift = zeros(self.dim) if shift is None else vec(shift)
        # x - shift in sign*K  <=>  sign*f.x >= sign*f.shift
        return Polyhedron.from_hrep([(scale(sign, f), sign * dot(f, shift)) for f in self.facets],
                                    self.dim)


@dataclass(frozen=True)
class OrderedSpace:
    """``(Q^dim, K)`` with ``x <= y`` iff ``y - x`` lies in ``K``."""

    name: str
    cone: Cone

    @property
    def dim(self) -> int:
        return self.cone.dim

    @cached_property
    def is_coordinatewise(self) -> bool:
        return set(self.cone.facets) == {unit(self.dim, i) for i in range(self.dim)}

    def __repr__(self):
        return f"OrderedSpace({self.name!r}, dim={self.dim})"


@dataclass(frozen=True)
class Subspace:
    parent: OrderedSpace
    basis: tuple

    def __post_init__(self):
        b = tuple(vec(v) for v in self.basis)
        for v in b:
            if len(v) != self.parent.dim:
                raise ValueError("basis vector outside the parent space")
        if b and rank(b) != len(b):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", b)

    @classmethod
    def spanned_by(cls, parent: OrderedSpace, vectors: Iterable[Sequence]) -> "Subspace":
        vs = [vec(v) for v in vectors if not is_zero(vec(v))]
        basis = []
        for v in vs:
            if rank(basis + [v]) > len(basis):
                basis.append(v)
        return cls(parent, tuple(basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self):
        """Columns are the basis vectors."""
        return transpose(self.basis) if self.basis else ()

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if is_zero(x):
            return True
        return rank(list(self.basis) + [x]) == self.dim

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.parent.dim == other.parent.dim
                and same_span(self.basis, other.basis, self.parent.dim))

    def __hash__(self):
        return hash((self.parent.dim, self.dim))


def ORTH(d: int) -> OrderedSpace:
    return OrderedSpace(f"ORTH{d}", Cone.from_generators([unit(d, i) for i in range(d)], d))


K4 = OrderedSpace("K4", Cone.from_generators([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)], 3))
HALF = OrderedSpace("HALF", Cone.from_generators([(1, 0)], 2))


def space_by_name(name: str) -> OrderedSpace:
    if name == "K4":
        return K4
    if name == "HALF":
        return HALF
    m = re.fullmatch(r"ORTH\(?(\d+)\)?", name)
    if m:
        return ORTH(int(m.group(1)))
    raise KeyError(f"unknown space {name!r}")


def _check_dim(space, *vs):
    for v in vs:
        if len(v) != space.dim:
            raise ValueError(f"dimension mismatch: {len(v)} vs {space.dim}")


def leq(space: OrderedSpace, x: Sequence, y: Sequence) -> bool:
    x, y = vec(x), vec(y)
    _check_dim(space, x, y)
    return space.cone.contains(sub(y, x))


@dataclass(frozen=True)
class ConeAxioms:
    is_wedge: bool
    is_pointed: bool
    is_generating: bool
    is_archimedean: bool


def cone_axioms(space: OrderedSpace) -> ConeAxioms:
    K = space.cone
    pointed = not K.lines
    gens = list(K.rays) + list(K.lines)
    generating = (rank(gens) if gens else 0) == space.dim
    # nx <= y for all n forces -x in the recession cone {x : f.x <= 0}; compare with -K
    recession = Polyhedron.from_hrep([(neg(f), 0) for f in K.facets], space.dim)
    archimedean = polyhedron_equal(recession, K.as_polyhedron(sign=-1))
    return ConeAxioms(True, pointed, generating, archimedean)


def order_interval(space: OrderedSpace, y: Sequence, z: Sequence) -> Polyhedron:
    y, z = vec(y), vec(z)
    _check_dim(space, y, z)
    if not leq(space, y, z):
        return Polyhedron.empty(space.dim, label="not-an-interval")
    cons = [(f, dot(f, y)) for f in space.cone.facets]
    cons += [(neg(f), -dot(f, z)) for f in space.cone.facets]
    return Polyhedron.from_hrep(cons, space.dim).minimal()


def upper_bounds(space: OrderedSpace, M: Iterable[Sequence]) -> Polyhedron:
    """``M^u`` as an irredundant polyhedron."""
    pts = _points(space, M)
    cons = [(f, dot(f, m)) for m in pts for f in space.cone.facets]
    return Polyhedron.from_hrep(cons, space.dim).minimal()


def lower_bounds(space: OrderedSpace, M: Iterable[Sequence]) -> Polyhedron:
    pts = _points(space, M)
    cons = [(neg(f), -dot(f, m)) for m in pts for f in space.cone.facets]
    return Polyhedron.from_hrep(cons, space.dim).minimal()


def _points(space, M):
    pts = []
    for m in M:
        m = vec(m)
        _check_dim(space, m)
        if m not in pts:
            pts.append(m)
    if not pts:
        raise ValueError("empty point set")
    return pts


def is_order_bounded(space: OrderedSpace, S) -> Outcome:
    """Whether ``S`` (point list or polyhedron) sits in some ``[y, z]``.

    HOLDS carries ``(y, z)``; FAILS carries either an unbounded direction or
    a Farkas certificate against the existence of an upper/lower bound.
    """
    if isinstance(S, Polyhedron):
        V = S.with_vrep().vrep
        if not V.vertices:
            return holds((zeros(space.dim), zeros(space.dim)), "empty set")
        if V.rays or V.lines:
            direction = (V.rays + V.lines)[0]
            return fails(direction, "set contains a ray")
        pts = list(V.vertices)
    else:
        pts = _points(space, S)
    up = lp_feasible(Polyhedron.from_hrep(
        [(f, dot(f, m)) for m in pts for f in space.cone.facets], space.dim))
    if not up:
        return fails(up.certificate, "no common upper bound")
    low = lp_feasible(Polyhedron.from_hrep(
        [(neg(f), -dot(f, m)) for m in pts for f in space.cone.facets], space.dim))
    if not low:
        return fails(low.certificate, "no common lower bound")
    return holds((low.point, up.point), "bounding pair")


def _require_pointed(space):
    if space.cone.lines:
        raise ValueError(f"{space.name}: cone is not pointed, order is not antisymmetric")


def _dominates_all(space, g, pts):
    return all(leq(space, p, g) for p in pts)


def infimum(space: OrderedSpace, M: Iterable[Sequence]) -> Outcome:
    """Greatest lower bound of a finite set, or a certificate it is absent.

    HOLDS carries the infimum.  FAILS carries a pair of lower bounds with no
    common upper bound among the lower bounds (``extra['certificate']`` is
    the Farkas vector), or ``None`` when no lower bound exists at all.
    """
    _require_pointed(space)
    pts = _points(space, M)
    L = lower_bounds(space, pts)
    V = L.vrep
    if not V.vertices:
        return fails(None, "no lower bound exists")
    # a greatest element of L must be one of its vertices
    for g in V.vertices:
        if _dominates_all(space, g, V.vertices):
            return holds(g, "greatest lower bound")
    pair, reason, extra = _no_common_bound(space, L, "lower")
    return fails(pair, reason, **extra)


def supremum(space: OrderedSpace, M: Iterable[Sequence]) -> Outcome:
    pts = _points(space, M)
    res = infimum(space, [neg(p) for p in pts])
    if res.holds:
        return holds(neg(res.witness), "least upper bound")
    w = res.witness
    if w is not None:
        w = tuple(neg(p) for p in w)
    return fails(w, res.reason.replace("lower", "upper"), **res.extra)


def _maximal_in(space, L, v):
    u = _dual_interior(space)
    cons = list(L.hrep) + [(f, dot(f, v)) for f in space.cone.facets]
    res = lp_optimize(u, Polyhedron.from_hrep(cons, space.dim), "max")
    return res.status is LPStatus.OPTIMAL and res.value == dot(u, v)


def _dual_interior(space):
    u = zeros(space.dim)
    for f in space.cone.facets:
        u = add(u, f)
    return u


def _no_common_bound(space, L, word):
    verts = list(L.vrep.vertices)
    maximal = [v for v in verts if _maximal_in(space, L, v)]
    ordered = maximal + [v for v in verts if v not in maximal]
    for v, w in itertools.combinations(ordered, 2):
        cons = list(L.hrep) + [(f, dot(f, p)) for p in (v, w) for f in space.cone.facets]
        feas = lp_feasible(Polyhedron.from_hrep(cons, space.dim))
        if not feas:
            return (v, w), f"two {word} bounds without a common bound above them", {"certificate": feas.certificate}
    cons = list(L.hrep) + [(f, dot(f, p)) for p in verts for f in space.cone.facets]
    feas = lp_feasible(Polyhedron.from_hrep(cons, space.dim))
    return tuple(verts), f"{word} bounds without a common bound above them", {"certificate": feas.certificate}


def _require_lattice_candidate(space):
    ax = cone_axioms(space)
    if not ax.is_pointed:
        raise ValueError(f"{space.name}: cone is not pointed")
    if not ax.is_generating:
        raise ValueError(f"{space.name}: cone is not generating")


def is_lattice(space: OrderedSpace) -> Outcome:
    """Simpliciality test, with a non-lattice pair as witness when it fails."""
    _require_lattice_candidate(space)
    rays = space.cone.rays
    if len(rays) == space.dim:
        return holds(rays, "simplicial cone")
    for x, y in _candidate_pairs(rays):
        inf_ = infimum(space, [x, y])
        sup_ = supremum(space, [x, y])
        if inf_.fails and sup_.fails:
            return fails((x, y), "pair without infimum and supremum", infimum=inf_, supremum=sup_)
    return unknown("non-simplicial cone but no witness pair found")


def _candidate_pairs(rays):
    """Midpoints of ray pairs; pairs built from disjoint ray pairs first."""
    mids = {}
    for i, j in itertools.combinations(range(len(rays)), 2):
        mids[(i, j)] = scale(Fraction(1, 2), add(rays[i], rays[j]))
    keys = list(mids)
    disjoint, rest = [], []
    for a, b in itertools.combinations(keys, 2):
        (disjoint if not set(a) & set(b) else rest).append((mids[a], mids[b]))
    seen = set()
    for x, y in disjoint + rest:
        if x != y and (x, y) not in seen:
            seen.add((x, y))
            yield x, y


def _decomposition_lp(space, z, x1, x2):
    """Polyhedron of ``z1`` with ``0 <= z1 <= x1`` and ``0 <= z - z1 <= x2``."""
    F = space.cone.facets
    cons = [(f, 0) for f in F]
    cons += [(neg(f), -dot(f, x1)) for f in F]
    cons += [(neg(f), -dot(f, z)) for f in F]
    cons += [(f, dot(f, sub(z, x2))) for f in F]
    return Polyhedron.from_hrep(cons, space.dim)


def has_rdp(space: OrderedSpace) -> Outcome:
    """Riesz decomposition property.

    Decided by simpliciality; when it fails, a triple ``(z, x1, x2)`` with
    ``0 <= z <= x1 + x2`` whose decomposition program is infeasible is
    searched among extreme rays and their midpoints, and the Farkas
    certificate is attached.
    """
    _require_lattice_candidate(space)
    rays = list(space.cone.rays)
    if len(rays) == space.dim:
        return holds(None, "simplicial cone")
    mids = [scale(Fraction(1, 2), add(a, b)) for a, b in itertools.combinations(rays, 2)]
    for x1, x2 in itertools.combinations_with_replacement(rays, 2):
        top = add(x1, x2)
        for z in rays + mids:
            if not leq(space, z, top):
                continue
            feas = lp_feasible(_decomposition_lp(space, z, x1, x2))
            if not feas:
                return fails((z, x1, x2), "no Riesz decomposition", certificate=feas.certificate)
    return unknown("non-simplicial cone but the witness search found nothing")


def _require_ambient(sub_: Subspace):
    _require_lattice_candidate(sub_.parent)


def is_majorizing(sub_: Subspace) -> Outcome:
    """Every extreme ray of the ambient cone has a dominating element of ``M``."""
    _require_ambient(sub_)
    space = sub_.parent
    k = sub_.dim
    for g in space.cone.rays:
        if k == 0:
            return fails(g, "nothing in {0} dominates a nonzero positive vector")
        cons = [(tuple(dot(f, col) for col in sub_.basis), dot(f, g)) for f in space.cone.facets]
        feas = lp_feasible(Polyhedron.from_hrep(cons, k))
        if not feas:
            return fails(g, "no element of the subspace dominates this vector",
                         certificate=feas.certificate)
    return holds(None, "every extreme ray is dominated")


def singleton_dual_test(B_rows: Sequence[Sequence]) -> Outcome:
    """Order density of ``span`` of the columns of ``B`` in ``Q^m`` (coordinatewise).

    ``B_rows`` is the ``m x k`` matrix whose columns span the subspace.  For
    each coordinate ``j`` the polyhedron ``{l >= 0 : B^T l = B^T e_j}`` must be
    exactly ``{e_j}``; FAILS carries ``(j, alternative)``.
    """
    B = [vec(r) for r in B_rows]
    m = len(B)
    Bt = transpose(B)
    for j in range(m):
        ej = unit(m, j)
        target = matvec(Bt, ej)
        cons = [(unit(m, i), 0) for i in range(m)]
        for row, t in zip(Bt, target):
            cons += [(row, t), (neg(row), -t)]
        P = Polyhedron.from_hrep(cons, m)
        for i in range(m):
            for sense in ("max", "min"):
                res = lp_optimize(unit(m, i), P, sense)
                if res.status is LPStatus.UNBOUNDED:
                    return fails((j, add(ej, res.ray)), "dual polytope unbounded")
                if res.value != ej[i]:
                    return fails((j, res.point), "dual polytope is not a singleton")
    return holds(None, "singleton dual test passed")


def is_order_dense(sub_: Subspace, cover=None) -> Outcome:
    """Order density of a subspace.

    Coordinatewise ambients are tested directly; other ambients are reduced
    to their vector lattice cover (built on demand), which preserves and
    reflects order density.  UNKNOWN when no cover can be certified.
    """
    maj = is_majorizing(sub_)
    if maj.fails:
        return fails(maj.witness, "not majorizing")
    space = sub_.parent
    if space.is_coordinatewise:
        rows = [tuple(b[i] for b in sub_.basis) for i in range(space.dim)]
        return singleton_dual_test(rows)
    if cover is None:
        from .cover import make_cover
        made = make_cover(space)
        if not made.holds:
            return unknown("ambient is not coordinatewise and has no certified cover")
        cover = made.witness
    rows = [tuple(dot(f, b) for b in sub_.basis) for f in cover.embedding]
    res = singleton_dual_test(rows)
    return Outcome(res.status, res.witness, res.reason + " (through the cover)")
