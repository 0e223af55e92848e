"""Pre-Riesz detection and vector lattice covers by functional representation.

The cover of a space with pointed generating cone ``K`` maps ``x`` to the
vector of values of the extreme rays of the dual cone, so the target is
``Q^m`` with the coordinatewise order.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, add, matvec, vec
from .outcome import Outcome, fails, holds, unknown
from .polyhedron import polyhedron_subset
from .space import (Cone, OrderedSpace, cone_axioms, singleton_dual_test,
                    upper_bounds)

__all__ = ["Cover", "dual_extreme_rays", "is_preriesz", "make_cover", "is_bipositive",
           "cover_from_matrix"]


@dataclass(frozen=True)
class Cover:
    source: OrderedSpace
    embedding: Matrix
    order_dense_verified: bool

    @property
    def target_dim(self) -> int:
        return len(self.embedding)

    def __call__(self, x: Sequence):
        return matvec(self.embedding, vec(x))


def dual_extreme_rays(cone: Cone) -> list:
    """Primitive extreme rays of the dual cone, in canonical order."""
    if cone.lines:
        raise ValueError("cone is not pointed")
    if cone.equalities:
        raise ValueError("cone is not generating, its dual is not pointed")
    return list(cone.facets)


def is_bipositive(space: OrderedSpace, matrix: Matrix, samples: int = 200, seed: int = 0) -> bool:
    """``x >= 0`` iff ``matrix x >= 0`` on generators and seeded random points."""
    rng = random.Random(seed)
    pts = list(space.cone.rays)
    for _ in range(samples):
        pts.append(tuple(rng.randint(-4, 4) for _ in range(space.dim)))
    for x in pts:
        in_k = space.cone.contains(x)
        img = matvec(matrix, vec(x))
        if in_k != all(v >= 0 for v in img):
            return False
    return True


def _upper_subset(space, first, second):
    return polyhedron_subset(upper_bounds(space, first), upper_bounds(space, second))


def is_preriesz(space: OrderedSpace, budget: int = 200, seed: int = 0) -> Outcome:
    """Directed and Archimedean is sufficient; otherwise look for a counterexample.

    A counterexample is a triple ``(x, y, z)`` with ``x`` outside the cone and
    ``{x+y, x+z}^u`` contained in ``{y, z}^u``.
    """
    ax = cone_axioms(space)
    if ax.is_generating and ax.is_archimedean:
        return holds(None, "directed and Archimedean")
    rng = random.Random(seed)
    for _ in range(budget):
        x, y, z = (tuple(rng.randint(-2, 2) for _ in range(space.dim)) for _ in range(3))
        if space.cone.contains(x):
            continue
        if _upper_subset(space, [add(x, y), add(x, z)], [y, z]):
            return fails((x, y, z), "upper-bound inclusion without x >= 0")
    return unknown("not directed and no counterexample found")


def make_cover(space: OrderedSpace, preriesz: Outcome | None = None) -> Outcome:
    """Build the functional-representation cover.

    HOLDS carries a :class:`Cover`.  FAILS reports why: the space is not
    certified pre-Riesz, bipositivity broke, or order density failed at a
    target coordinate (with the alternative dual point).
    """
    pr = is_preriesz(space) if preriesz is None else preriesz
    if not pr.holds:
        return fails(pr, "space is not certified pre-Riesz")
    rows = tuple(dual_extreme_rays(space.cone))
    if not is_bipositive(space, rows):
        return fails(None, "embedding is not bipositive")
    dense = singleton_dual_test(rows)
    if dense.fails:
        return fails(dense.witness, "image is not order dense", coordinate=dense.witness[0])
    return holds(Cover(space, rows, True), "functional representation on dual extreme rays")


def cover_from_matrix(space: OrderedSpace, rows: Matrix) -> Outcome:
    """Validate a user-supplied embedding as a cover (bipositive and order dense)."""
    rows = tuple(vec(r) for r in rows)
    if not is_bipositive(space, rows):
        return fails(None, "embedding is not bipositive")
    dense = singleton_dual_test(rows)
    if dense.fails:
        return fails(dense.witness, "image is not order dense", coordinate=dense.witness[0])
    return holds(Cover(space, rows, True), "supplied embedding")

