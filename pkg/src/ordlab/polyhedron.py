"""Polyhedra in H- and V-representation and the double description method."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import Vector, dot, primitive, rank, scale, unit, vec

__all__ = [
    "VRep", "Polyhedron", "double_description", "cone_hrep", "cone_vrep",
    "hrep_to_vrep", "vrep_to_hrep", "polyhedron_equal", "polyhedron_subset",
    "canonical_key",
]


def canonical_key(v: Sequence) -> tuple:
    """Sort key grouping vectors by their leading coordinate pattern."""
    out = []
    for x in v:
        out.extend((-abs(x), x))
    return tuple(out)


def _zero_set(A, r):
    return frozenset(i for i, a in enumerate(A) if dot(a, r) == 0)


def double_description(A: Sequence[Sequence], dim: int):
    """Minimal generators of the cone ``{x : a.x >= 0 for a in A}``.

    Returns ``(rays, lines)``; rays are the extreme rays modulo the
    lineality space spanned by ``lines``.  All vectors are primitive
    integer vectors.
    """
    A = [vec(a) for a in A]
    for a in A:
        if len(a) != dim:
            raise ValueError(f"constraint of length {len(a)} in dimension {dim}")
    lines = [unit(dim, i) for i in range(dim)]
    rays: list[Vector] = []
    done: list[Vector] = []
    for a in A:
        k = next((i for i, l in enumerate(lines) if dot(a, l) != 0), None)
        if k is not None:
            pivot = lines.pop(k)
            s = dot(a, pivot)
            if s < 0:
                pivot = scale(-1, pivot)
                s = -s
            lines = [tuple(x - dot(a, l) / s * p for x, p in zip(l, pivot)) for l in lines]
            rays = [tuple(x - dot(a, r) / s * p for x, p in zip(r, pivot)) for r in rays]
            rays.append(pivot)
            done.append(a)
            continue
        done.append(a)
        pos = [r for r in rays if dot(a, r) > 0]
        neg = [r for r in rays if dot(a, r) < 0]
        keep = [r for r in rays if dot(a, r) >= 0]
        target = dim - len(lines) - 2
        prev = done[:-1]
        for p in pos:
            zp = _zero_set(prev, p)
            for n in neg:
                common = zp & _zero_set(prev, n)
                rows = [prev[i] for i in common]
                if (rank(rows) if rows else 0) != target:
                    continue
                ap, an = dot(a, p), dot(a, n)
                keep.append(tuple(ap * y - an * x for x, y in zip(p, n)))
        rays = keep
    rays = _dedupe(primitive(r) for r in rays)
    lines = [primitive(l) for l in lines]
    return sorted(rays, key=canonical_key), lines


def _dedupe(vectors):
    seen = []
    for v in vectors:
        if v not in seen:
            seen.append(v)
    return seen


def cone_vrep(normals: Sequence[Sequence], dim: int):
    """Generators of ``{x : f.x >= 0}``; alias of :func:`double_description`."""
    return double_description(normals, dim)


def cone_hrep(rays: Sequence[Sequence], lines: Sequence[Sequence], dim: int):
    """Irredundant description of ``cone(rays) + span(lines)``.

    Returns ``(facets, equalities)`` meaning ``f.x >= 0`` for every facet and
    ``e.x = 0`` for every equality normal.
    """
    cons = [vec(r) for r in rays]
    for l in lines:
        cons.append(vec(l))
        cons.append(tuple(-x for x in vec(l)))
    facets, eqs = double_description(cons, dim)
    return facets, eqs


@dataclass(frozen=True)
class VRep:
    vertices: tuple = ()
    rays: tuple = ()
    lines: tuple = ()


@dataclass(frozen=True)
class Polyhedron:
    """``{x : a.x >= b for (a, b) in hrep}``, optionally with its V-rep.

    ``label`` carries a short flag for degenerate constructions (for example
    an order interval whose endpoints are not ordered).
    """

    dim: int
    hrep: tuple | None = None
    vrep: VRep | None = None
    label: str | None = field(default=None, compare=False)

    @classmethod
    def from_hrep(cls, constraints, dim: int | None = None, label=None):
        cons = tuple((vec(a), Fraction(b)) for a, b in constraints)
        if dim is None:
            if not cons:
                raise ValueError("dimension required for an empty constraint list")
            dim = len(cons[0][0])
        for a, _ in cons:
            if len(a) != dim:
                raise ValueError(f"constraint of length {len(a)} in dimension {dim}")
        return cls(dim, cons, None, label)

    @classmethod
    def from_vrep(cls, vertices=(), rays=(), lines=(), dim: int | None = None, label=None):
        vs = tuple(vec(v) for v in vertices)
        rs = tuple(vec(r) for r in rays)
        ls = tuple(vec(l) for l in lines)
        if dim is None:
            allv = vs + rs + ls
            if not allv:
                raise ValueError("dimension required for an empty V-representation")
            dim = len(allv[0])
        for v in vs + rs + ls:
            if len(v) != dim:
                raise ValueError(f"vector of length {len(v)} in dimension {dim}")
        if not vs and (rs or ls):
            raise ValueError("a nonempty V-representation needs at least one vertex")
        return cls(dim, None, VRep(vs, rs, ls), label)

    @classmethod
    def empty(cls, dim: int, label=None):
        return cls(dim, ((tuple(Fraction(0) for _ in range(dim)), Fraction(1)),), VRep(), label)

    def with_vrep(self) -> "Polyhedron":
        if self.vrep is not None:
            return self
        return Polyhedron(self.dim, self.hrep, hrep_to_vrep(self).vrep, self.label)

    def with_hrep(self) -> "Polyhedron":
        if self.hrep is not None:
            return self
        return Polyhedron(self.dim, vrep_to_hrep(self).hrep, self.vrep, self.label)

    def minimal(self) -> "Polyhedron":
        """Both representations, each irredundant."""
        v = hrep_to_vrep(self) if self.hrep is not None else self
        h = vrep_to_hrep(v)
        return Polyhedron(self.dim, h.hrep, v.vrep, self.label)

    def is_empty(self) -> bool:
        return not self.with_vrep().vrep.vertices

    def is_bounded(self) -> bool:
        v = self.with_vrep().vrep
        return not v.rays and not v.lines

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        P = self.with_hrep()
        return all(dot(a, x) >= b for a, b in P.hrep)


def hrep_to_vrep(P: Polyhedron) -> Polyhedron:
    """Minimal V-representation of an H-described polyhedron."""
    if P.hrep is None:
        raise ValueError("polyhedron has no H-representation")
    d = P.dim
    A = [tuple(a) + (-b,) for a, b in P.hrep]
    A.append(unit(d + 1, d))
    rays, lines = double_description(A, d + 1)
    vertices = [tuple(x / r[d] for x in r[:d]) for r in rays if r[d] > 0]
    if not vertices:
        return Polyhedron(d, P.hrep, VRep(), P.label)
    rr = [r[:d] for r in rays if r[d] == 0]
    ll = [l[:d] for l in lines]
    return Polyhedron(d, P.hrep,
                      VRep(tuple(sorted(vertices, key=canonical_key)), tuple(rr), tuple(ll)),
                      P.label)


def vrep_to_hrep(P: Polyhedron) -> Polyhedron:
    """Irredundant H-representation (equalities appear as opposite pairs)."""
    if P.vrep is None:
        raise ValueError("polyhedron has no V-representation")
    d = P.dim
    V = P.vrep
    if not V.vertices:
        return Polyhedron(d, Polyhedron.empty(d).hrep, V, P.label)
    gens = [tuple(v) + (Fraction(1),) for v in V.vertices]
    gens += [tuple(r) + (Fraction(0),) for r in V.rays]
    lines = [tuple(l) + (Fraction(0),) for l in V.lines]
    facets, eqs = cone_hrep(gens, lines, d + 1)
    cons = []
    for f in facets:
        a, c = f[:d], f[d]
        if all(x == 0 for x in a):
            continue  # the homogenising t >= 0
        cons.append((a, -c))
    for e in eqs:
        a, c = e[:d], e[d]
        cons.append((a, -c))
        cons.append((tuple(-x for x in a), c))
    return Polyhedron(d, tuple(cons), V, P.label)


def polyhedron_subset(P: Polyhedron, Q: Polyhedron) -> bool:
    """``P`` is contained in ``Q`` (V-rep of ``P`` against H-rep of ``Q``)."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    V = P.with_vrep().vrep
    if not V.vertices:
        return True
    H = Q.with_hrep().hrep
    for a, b in H:
        if any(dot(a, v) < b for v in V.vertices):
            return False
        if any(dot(a, r) < 0 for r in V.rays):
            return False
        if any(dot(a, l) != 0 for l in V.lines):
            return False
    return True


def polyhedron_equal(P: Polyhedron, Q: Polyhedron) -> bool:
    """Point-set equality decided by double inclusion."""
    return polyhedron_subset(P, Q) and polyhedron_subset(Q, P)
