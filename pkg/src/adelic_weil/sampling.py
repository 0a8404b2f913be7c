"""Seeded random objects for verification sweeps and tests.

Every sampler takes a :class:`random.Random` so that reports are
reproducible from a single integer seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .bruhat import MElement
from .heisenberg import HeisElement
from .lattice import LatticePair, QLattice, lattice_from_generators
from .linalg import det, identity
from .scalars import CycloScalar, accumulate_roots, cyclo
from .weil import Dilate, FourierJ, Quad, SpMatrix


def rational(rng: random.Random, max_den: int = 6, size: int = 2) -> Fraction:
    d = rng.randint(1, max_den)
    return Fraction(rng.randint(-size * d, size * d), d)


def rational_vector(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> tuple[Fraction, ...]:
    return tuple(rational(rng, max_den, size) for _ in range(n))


def rational_matrix(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> list[list[Fraction]]:
    return [list(rational_vector(rng, n, max_den, size)) for _ in range(n)]


def invertible_matrix(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> list[list[Fraction]]:
    while True:
        m = rational_matrix(rng, n, max_den, size)
        if det(m) != 0:
            return m


def symmetric_matrix(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = rational(rng, max_den, size)
    return m


def lattice(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> QLattice:
    """A random full-rank lattice whose basis entries have denominators ``<= max_den``."""
    while True:
        m = rational_matrix(rng, n, max_den, size)
        if det(m) != 0:
            return lattice_from_generators(m, n)


def lattice_pair(rng: random.Random, n: int, max_index: int = 16, max_den: int = 4) -> LatticePair:
    """``K ⊆ L`` with ``[L:K] <= max_index``."""
    L = lattice(rng, n, max_den, 1)
    while True:
        m = [[rng.randint(-2, 2) + (3 if i == j else 0) for j in range(n)] for i in range(n)]
        d = abs(det(m))
        if 0 < d <= max_index:
            K = lattice_from_generators([[sum(Fraction(m[i][k]) * L.basis[k][j] for k in range(n)) for j in range(n)] for i in range(n)], n)
            return LatticePair(L, K)


def root_of_unity_value(rng: random.Random, orders=(1, 2, 3, 4, 6, 8)) -> CycloScalar:
    """A small rational times a root of unity, or a short sum of two such."""
    terms = []
    for _ in range(rng.choice((1, 1, 2))):
        q = rng.choice(orders)
        terms.append((cyclo(Fraction(rng.choice((-2, -1, 1, 2, 3)), rng.choice((1, 2)))), Fraction(rng.randrange(q), q)))
    v = accumulate_roots(terms)
    return v if v else cyclo(1)


def melement(rng: random.Random, n: int, max_den: int = 6, max_reps: int = 3, K: QLattice | None = None) -> MElement:
    """A random nonzero element with a few cosets."""
    if K is None:
        K = lattice(rng, n, max_den, 1)
    while True:
        supp = {}
        for _ in range(rng.randint(1, max_reps)):
            supp[rational_vector(rng, n, max_den, 1)] = root_of_unity_value(rng)
        f = MElement(K, supp)
        if not f.is_zero():
            return f.canonical()


def melement_of_level(rng: random.Random, n: int, N: int, max_reps: int = 3) -> MElement:
    """A random element with support in ``N^-1 Z^n`` and invariant under ``N Z^n``."""
    gens = [[Fraction(N * int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(rng.randint(0, n)):
        gens.append([Fraction(rng.randint(0, N * N - 1), N) for _ in range(n)])
    K = lattice_from_generators(gens, n)
    supp = {tuple(Fraction(rng.randint(0, N * N), N) for _ in range(n)): root_of_unity_value(rng) for _ in range(rng.randint(1, max_reps))}
    return MElement(K, supp).canonical()


def heis_element(rng: random.Random, n: int, max_den: int = 6, size: int = 2) -> HeisElement:
    return HeisElement(rational_vector(rng, n, max_den, size), rational_vector(rng, n, max_den, size), rational(rng, max_den, size))


def atom(rng: random.Random, n: int, max_den: int = 6, size: int = 1):
    t = rng.randrange(3)
    if t == 0:
        return Dilate(invertible_matrix(rng, n, max_den, size))
    if t == 1:
        return Quad(symmetric_matrix(rng, n, max_den, size))
    return FourierJ(n)


def symplectic(rng: random.Random, n: int, max_den: int = 6, length: int = 3, size: int = 1) -> SpMatrix:
    """A product of ``length`` random atoms whose entries have denominators ``<= max_den``."""
    while True:
        g = SpMatrix(identity(2 * n), check=False)
        for _ in range(length):
            g = g * atom(rng, n, max_den, size).matrix()
        if all(x.denominator <= max_den for row in g.m for x in row) and not g.is_identity():
            return g
