"""The rational Heisenberg group and its action on M(Q^n)."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bruhat import MElement, finish, indicator, refine, zero
from .errors import IndexOverflow
from .lattice import (
    LatticePair,
    QLattice,
    adapted_basis,
    Vector,
    coset_reps,
    dual_lattice,
    get_index_cap,
    lattice_from_generators,
    vec,
)
from .linalg import dot
from .scalars import ZERO, CycloScalar


@dataclass(frozen=True)
class HeisElement:
    """``R(v+, v-, alpha)``."""

    vplus: Vector
    vminus: Vector
    alpha: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "vplus", vec(self.vplus))
        object.__setattr__(self, "vminus", vec(self.vminus))
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if len(self.vplus) != len(self.vminus):
            raise ValueError("v+ and v- must have the same length")

    @property
    def n(self) -> int:
        return len(self.vplus)

    @classmethod
    def identity(cls, n: int) -> HeisElement:
        z = (Fraction(0),) * n
        return cls(z, z, Fraction(0))

    def matrix(self) -> list[list[Fraction]]:
        """The unipotent ``(n+2) x (n+2)`` matrix form."""
        n = self.n
        m = [[Fraction(int(i == j)) for j in range(n + 2)] for i in range(n + 2)]
        for j in range(n):
            m[0][1 + j] = self.vplus[j]
            m[1 + j][n + 1] = self.vminus[j]
        m[0][n + 1] = self.alpha + dot(self.vplus, self.vminus) / 2
        return m

    def __mul__(self, other: HeisElement) -> HeisElement:
        return heis_mul(self, other)


def heis_mul(h1: HeisElement, h2: HeisElement) -> HeisElement:
    if h1.n != h2.n:
        raise ValueError("dimension mismatch")
    cocycle = (dot(h1.vplus, h2.vminus) - dot(h2.vplus, h1.vminus)) / 2
    return HeisElement(
        tuple(a + b for a, b in zip(h1.vplus, h2.vplus)),
        tuple(a + b for a, b in zip(h1.vminus, h2.vminus)),
        h1.alpha + h2.alpha + cocycle,
    )


def heis_inv(h: HeisElement) -> HeisElement:
    return HeisElement(tuple(-x for x in h.vplus), tuple(-x for x in h.vminus), -h.alpha)


def phase_sublattice(K: QLattice, w: Sequence) -> QLattice:
    """``{k in K : k . w in Z}``, computed as ``(K^dual + Z w)^dual``."""
    if not any(w):
        return K
    return dual_lattice(lattice_from_generators(list(dual_lattice(K).basis) + [vec(w)], K.dim))


def heis_act(h: HeisElement, f: MElement) -> MElement:
    """``(T(h) f)(x) = f(x + v+) exp 2 pi i (x v-^t + alpha + v+ v-^t / 2)``."""
    if h.n != f.dim:
        raise ValueError("dimension mismatch")
    if f.is_zero():
        return zero(f.dim)
    K2 = phase_sublattice(f.K, h.vminus)
    g = refine(f, K2)
    const = h.alpha + dot(h.vplus, h.vminus) / 2
    out: dict[Vector, CycloScalar] = {}
    for r, v in g.support.items():
        x = K2.reduce(tuple(a - b for a, b in zip(r, h.vplus)))
        out[x] = v.mul_root(dot(x, h.vminus) + const)
    return finish(K2, out, g.root)


def translation_op(v: Sequence, f: MElement) -> MElement:
    """``T_v f(x) = f(x + v)``."""
    n = f.dim
    return heis_act(HeisElement(vec(v), (Fraction(0),) * n), f)


def character_op(w: Sequence, f: MElement) -> MElement:
    """``S_w f(x) = f(x) exp(2 pi i x w^t)``."""
    n = f.dim
    return heis_act(HeisElement((Fraction(0),) * n, vec(w)), f)


def fixed_space_check(pair: LatticePair, f: MElement) -> bool:
    """Whether ``f`` is fixed by ``T_v`` (``v`` in ``K``) and ``S_w`` (``w`` in ``L^dual``)."""
    if any(translation_op(k, f) != f for k in pair.sub.basis):
        return False
    return all(character_op(w, f) == f for w in dual_lattice(pair.sup).basis)


@dataclass(frozen=True)
class FiniteHeisDescriptor:
    """Generators of the finite Heisenberg group acting on ``M(L|K)``."""

    pair: LatticePair
    translations: tuple[Vector, ...]
    characters: tuple[Vector, ...]

    @classmethod
    def of(cls, pair: LatticePair) -> FiniteHeisDescriptor:
        K, L = pair.sub, pair.sup
        trans = tuple(K.reduce(r) for r in coset_reps(pair))
        chars = tuple(coset_reps(LatticePair(dual_lattice(K), dual_lattice(L))))
        assert len(trans) == len(chars) == pair.index
        return cls(pair, trans, chars)


def operator_matrix(op, basis: Sequence[MElement], reps: Sequence[Vector]) -> list[dict[int, CycloScalar]]:
    """Columns ``j -> {i: coefficient}`` of ``op`` on the delta basis at ``reps``."""
    cols = []
    for b in basis:
        img = op(b)
        assert img.root == 1
        col = {}
        for i, r in enumerate(reps):
            v = img.support.get(img.K.reduce(r))
            if v:
                col[i] = v
        cols.append(col)
    return cols


def commutant_dimension(pair: LatticePair) -> int:
    """Dimension of the space of operators on ``M(L|K)`` commuting with the finite Heisenberg group."""
    d = pair.index
    if d * d > get_index_cap():
        raise IndexOverflow(f"commutant of a {d}-dimensional space exceeds the index cap")
    desc = FiniteHeisDescriptor.of(pair)
    K = pair.sub
    reps = desc.translations
    basis = [indicator(K, r) for r in reps]
    # commuting with generators suffices: L/K by an adapted basis, likewise K^/L^
    gens_t = adapted_basis(pair).vectors
    gens_c = adapted_basis(LatticePair(dual_lattice(K), dual_lattice(pair.sup))).vectors
    ops = [lambda f, v=v: translation_op(v, f) for v in gens_t]
    ops += [lambda f, w=w: character_op(w, f) for w in gens_c]
    return commutant_of(ops, basis, reps)


def commutant_of(ops, basis: Sequence[MElement], reps: Sequence[Vector]) -> int:
    """Dimension of the space of matrices commuting with every operator in ``ops``."""
    d = len(basis)
    solver = _SparseRank()
    for op in ops:
        cols = operator_matrix(op, basis, reps)
        rows_of = [dict() for _ in range(d)]  # A[i][j] by row
        for j, col in enumerate(cols):
            for i, v in col.items():
                rows_of[i][j] = v
        # (X A - A X)[i, j] = sum_k X[i,k] A[k,j] - sum_k A[i,k] X[k,j]
        for i in range(d):
            for j in range(d):
                eq: dict[int, CycloScalar] = {}
                for k, a in cols[j].items():
                    eq[i * d + k] = eq.get(i * d + k, ZERO) + a
                for k, a in rows_of[i].items():
                    eq[k * d + j] = eq.get(k * d + j, ZERO) - a
                solver.add({c: v for c, v in eq.items() if v})
    return d * d - solver.rank


class _SparseRank:
    """Incremental row echelon form over a cyclotomic field."""

    def __init__(self):
        self.pivots: dict[int, dict[int, CycloScalar]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, row: dict[int, CycloScalar]) -> bool:
        row = dict(row)
        heap = [c for c in row if c in self.pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = row.get(c)
            if a is None:
                continue
            for cc, v in self.pivots[c].items():
                w = row.get(cc, ZERO) - a * v
                if w:
                    if cc not in row and cc in self.pivots:
                        heapq.heappush(heap, cc)
                    row[cc] = w
                else:
                    row.pop(cc, None)
        if not row:
            return False
        c = min(row)
        inv = row[c].inverse()
        self.pivots[c] = {cc: v * inv for cc, v in row.items()}
        return True
