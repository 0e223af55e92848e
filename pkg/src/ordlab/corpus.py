"""Seeded generators for families, operators, vector pairs and polyhedra."""
from __future__ import annotations

import random
from fractions import Fraction

from .convergence import SeqFamily, make_family
from .polyhedron import Polyhedron
from .space import K4, ORTH, OrderedSpace

__all__ = [
    "RHOS", "random_rational", "random_vector", "random_family", "random_families",
    "random_matrix", "random_pair", "random_pairs", "random_disjoint_list",
    "random_polyhedron", "random_polyhedra", "decreasing_families", "standard_spaces",
]

RHOS = (Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(9, 10))


def random_rational(rng: random.Random, lo: int = -3, hi: int = 3, dens: tuple = (1, 1, 2, 3)) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.choice(dens))


def random_vector(rng: random.Random, dim: int, lo: int = -3, hi: int = 3) -> tuple:
    return tuple(random_rational(rng, lo, hi) for _ in range(dim))


def random_family(rng: random.Random, space_or_dim, max_terms: int = 2, prefix_prob: float = 0.3) -> SeqFamily:
    """A convergent family: each term has ``rho < 1``, or ``rho = 1`` with a negative exponent."""
    dim = space_or_dim.dim if isinstance(space_or_dim, OrderedSpace) else int(space_or_dim)
    terms = []
    for _ in range(rng.randint(0, max_terms)):
        rho = rng.choice(RHOS)
        e = rng.randint(-2, -1) if rho == 1 else rng.randint(-2, 2)
        terms.append((random_vector(rng, dim), rho, e))
    prefix = {}
    if rng.random() < prefix_prob:
        for n in range(1, rng.randint(1, 3) + 1):
            prefix[n] = random_vector(rng, dim)
    return make_family(space_or_dim, random_vector(rng, dim), terms, prefix)


def random_families(space_or_dim, count: int, seed: int = 0, **kw) -> list:
    rng = random.Random(seed)
    return [random_family(rng, space_or_dim, **kw) for _ in range(count)]


def decreasing_families(space: OrderedSpace, count: int, seed: int = 0) -> list:
    """Families ``sum_k c_k g_k / m**e_k`` with cone generators ``g_k``; they decrease to 0."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        terms = []
        for g in space.cone.rays:
            if rng.random() < 0.6:
                terms.append((tuple(Fraction(rng.randint(1, 3)) * a for a in g),
                              rng.choice((Fraction(1), Fraction(1, 2))), -rng.randint(1, 2)))
        if not terms:
            terms.append((space.cone.rays[0], Fraction(1), -1))
        out.append(make_family(space, (0,) * space.dim, terms))
    return out


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -3, hi: int = 3) -> tuple:
    return tuple(tuple(Fraction(rng.randint(lo, hi)) for _ in range(cols)) for _ in range(rows))


def random_pair(rng: random.Random, space: OrderedSpace, cover_rows=None) -> tuple:
    """A pair of vectors; about half are built to be disjoint.

    Disjoint pairs come from complementary supports in the orthant (or in the
    image of ``cover_rows`` when given), so both verdicts occur often.
    """
    d = space.dim
    if rng.random() < 0.5:
        return random_vector(rng, d, -2, 2), random_vector(rng, d, -2, 2)
    if cover_rows is None:
        mask = [rng.random() < 0.5 for _ in range(d)]
        x = tuple(random_rational(rng, -2, 2) if m else Fraction(0) for m in mask)
        y = tuple(Fraction(0) if m else random_rational(rng, -2, 2) for m in mask)
        return x, y
    # vectors whose cover images vanish on complementary coordinate sets
    from .linalg import nullspace
    m = len(cover_rows)
    for _ in range(50):
        cut = rng.sample(range(m), rng.randint(1, m - 1))
        rest = [j for j in range(m) if j not in cut]
        A = nullspace([cover_rows[j] for j in cut], d)
        B = nullspace([cover_rows[j] for j in rest], d)
        if A and B:
            x = tuple(sum((random_rational(rng, -2, 2) * v[i] for v in A), Fraction(0)) for i in range(d))
            y = tuple(sum((random_rational(rng, -2, 2) * v[i] for v in B), Fraction(0)) for i in range(d))
            return x, y
    return random_vector(rng, d), random_vector(rng, d)


def random_pairs(space: OrderedSpace, count: int, seed: int = 0, cover_rows=None) -> list:
    rng = random.Random(seed)
    return [random_pair(rng, space, cover_rows) for _ in range(count)]


def random_disjoint_list(rng: random.Random, dim: int, length: int | None = None) -> list:
    """Vectors of the orthant ``Q^dim`` with pairwise disjoint supports (zeros allowed)."""
    length = length if length is not None else rng.randint(1, dim + 2)
    free = list(range(dim))
    rng.shuffle(free)
    out = []
    for _ in range(length):
        v = [Fraction(0)] * dim
        if free and rng.random() < 0.8:
            for j in free[:rng.randint(1, len(free))]:
                v[j] = random_rational(rng, -3, 3) or Fraction(1)
            free = [j for j in free if v[j] == 0]
        out.append(tuple(v))
    return out


def random_polyhedron(rng: random.Random, dim: int) -> Polyhedron:
    """Either an H-polyhedron from a few random constraints plus a box, or a V-polyhedron."""
    if rng.random() < 0.5:
        cons = []
        for _ in range(rng.randint(1, dim + 2)):
            cons.append((random_vector(rng, dim, -2, 2), Fraction(rng.randint(-3, 0))))
        if rng.random() < 0.7:
            for i in range(dim):
                e = tuple(Fraction(int(j == i)) for j in range(dim))
                cons += [(e, -3), (tuple(-a for a in e), -3)]
        return Polyhedron.from_hrep([(a, b) for a, b in cons if any(a)] or [((Fraction(0),) * dim, -1)], dim)
    verts = [random_vector(rng, dim, -2, 2) for _ in range(rng.randint(1, dim + 2))]
    rays = [random_vector(rng, dim, -1, 1) for _ in range(rng.randint(0, 2))]
    rays = [r for r in rays if any(r)]
    return Polyhedron.from_vrep(verts, rays, dim=dim)


def random_polyhedra(count: int, seed: int = 0, max_dim: int = 5) -> list:
    rng = random.Random(seed)
    return [random_polyhedron(rng, rng.randint(1, max_dim)) for _ in range(count)]


def standard_spaces() -> list:
    return [ORTH(3), K4]
