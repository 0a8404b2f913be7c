"""Full-rank lattices in Q^n.

A lattice is stored as ``rows / den`` where ``den`` is the least positive
integer with ``den * L`` integral and ``rows`` is the row-style Hermite
normal form of ``den * L`` (upper triangular, positive pivots, entries above
each pivot reduced into ``[0, pivot)``).  Equal lattices therefore have
identical fields.
"""

from __future__ import annotations

import contextlib
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd, prod
from typing import Iterable, Sequence

from .errors import IndexOverflow, NotSublattice, RankDeficient
from .linalg import inverse, lcm_denominators, matmul

Vector = tuple[Fraction, ...]

DEFAULT_INDEX_CAP = 10**6
_index_cap: ContextVar[int] = ContextVar("index_cap", default=DEFAULT_INDEX_CAP)


def get_index_cap() -> int:
    return _index_cap.get()


@contextlib.contextmanager
def index_cap(cap: int):
    """Temporarily bound the size of any enumerated quotient ``L/K``."""
    token = _index_cap.set(cap)
    try:
        yield cap
    finally:
        _index_cap.reset(token)


def check_index(size, what: str = "quotient") -> None:
    cap = get_index_cap()
    if size > cap:
        raise IndexOverflow(f"{what} of size {size} exceeds index cap {cap}")


def vec(x: Iterable) -> Vector:
    return tuple(Fraction(c) for c in x)


# -- integer normal forms ------------------------------------------------------


def hnf(mat: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row Hermite normal form of an integer matrix of rank ``ncols``."""
    a = [list(r) for r in mat if any(r)]
    m = len(a)
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, m) if a[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            clean = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r >= m or a[r][c] == 0:
            raise RankDeficient(f"generators do not span Q^{ncols}")
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
    return a[:ncols]


def smith(mat: Sequence[Sequence[int]]):
    """Smith normal form of a nonsingular square integer matrix.

    Returns ``(U, S, V)`` with ``U * mat * V = S`` diagonal, ``U`` and ``V``
    unimodular, diagonal entries positive and each dividing the next.
    """
    n = len(mat)
    a = [list(r) for r in mat]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(dst, src, q):  # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_op(dst, src, q):  # col dst -= q * col src
        for row in a:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(n):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not entries:
                raise RankDeficient("singular matrix in Smith form")
            _, i, j = min(entries)
            a[t], a[i] = a[i], a[t]
            u[t], u[i] = u[i], u[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            for row in v:
                row[t], row[j] = row[j], row[t]
            p = a[t][t]
            for i in range(t + 1, n):
                if a[i][t]:
                    row_op(i, t, a[i][t] // p)
            for j in range(t + 1, n):
                if a[t][j]:
                    col_op(j, t, a[t][j] // p)
            if any(a[i][t] for i in range(t + 1, n)) or any(a[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            row_op(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


# -- lattices ----------------------------------------------------------------------


class QLattice:
    __slots__ = ("dim", "den", "rows", "_basis", "_inv")

    def __init__(self, den: int, rows: tuple[tuple[int, ...], ...]):
        self.dim = len(rows)
        self.den = den
        self.rows = rows
        self._basis = None
        self._inv = None

    @property
    def basis(self) -> tuple[Vector, ...]:
        if self._basis is None:
            d = self.den
            self._basis = tuple(tuple(Fraction(x, d) for x in r) for r in self.rows)
        return self._basis

    @property
    def basis_inverse(self):
        if self._inv is None:
            self._inv = inverse(self.basis)
        return self._inv

    def covolume(self) -> Fraction:
        """``|det basis|``; reciprocal of the adelic volume of the closure."""
        return Fraction(prod(self.rows[i][i] for i in range(self.dim)), self.den**self.dim)

    def coordinates(self, x: Sequence) -> Vector:
        inv = self.basis_inverse
        n = self.dim
        return tuple(sum((Fraction(x[i]) * inv[i][j] for i in range(n)), Fraction(0)) for j in range(n))

    def reduce(self, x: Sequence) -> Vector:
        """Canonical representative of ``x + L``."""
        x = [Fraction(c) for c in x]
        D = self.den
        for c in x:
            if D % c.denominator:
                D = D * c.denominator // gcd(D, c.denominator)
        X = [c.numerator * (D // c.denominator) for c in x]
        out = self._reduce_ints(X, D)
        return tuple(x) if out is None else out

    def reduce_scaled(self, X: Sequence[int], D: int) -> Vector:
        """``reduce`` of the vector ``X / D`` given by integer numerators."""
        if D % self.den:
            D2 = self.den * D // gcd(self.den, D)
            X, D = [c * (D2 // D) for c in X], D2
        out = self._reduce_ints(list(X), D)
        return tuple(Fraction(v, D) for v in X) if out is None else out

    def _reduce_ints(self, X: list[int], D: int) -> Vector | None:
        """Reduce ``X / D`` in place (``den`` divides ``D``); ``None`` if unchanged."""
        s = D // self.den
        changed = False
        for i, row in enumerate(self.rows):
            c = X[i] // (row[i] * s)
            if c:
                changed = True
                cs = c * s
                for j in range(i, self.dim):
                    if row[j]:
                        X[j] -= cs * row[j]
        if not changed:
            return None
        return tuple(Fraction(v, D) for v in X)

    def contains(self, x: Sequence) -> bool:
        return not any(self.reduce(x))

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def __eq__(self, other) -> bool:
        return isinstance(other, QLattice) and self.den == other.den and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.den, self.rows))

    def __repr__(self) -> str:
        return f"QLattice(den={self.den}, rows={[list(r) for r in self.rows]})"


def lattice_from_generators(vectors: Iterable[Sequence], dim: int | None = None) -> QLattice:
    """Smallest lattice containing ``vectors``; raises RankDeficient if they do not span."""
    vs = [vec(v) for v in vectors]
    if dim is None:
        if not vs:
            raise RankDeficient("no generators and no dimension")
        dim = len(vs[0])
    if any(len(v) != dim for v in vs):
        raise ValueError("generators of mixed dimension")
    d = lcm_denominators(c for v in vs for c in v)
    ints = [[int(c * d) for c in v] for v in vs]
    h = hnf(ints, dim)
    g = d
    for r in h:
        for x in r:
            g = gcd(g, x)
    rows = tuple(tuple(x // g for x in r) for r in h)
    return QLattice(d // g, rows)


def standard_lattice(n: int, scale=1) -> QLattice:
    """``scale * Z^n``."""
    s = Fraction(scale)
    return lattice_from_generators([[s if i == j else 0 for j in range(n)] for i in range(n)], n)


def lattice_transform(lat: QLattice, mat: Sequence[Sequence]) -> QLattice:
    """The image ``{x @ mat : x in lat}`` for invertible ``mat``."""
    return lattice_from_generators(matmul(lat.basis, mat), lat.dim)


def dual_lattice(lat: QLattice) -> QLattice:
    inv = lat.basis_inverse
    n = lat.dim
    return lattice_from_generators([[inv[j][i] for j in range(n)] for i in range(n)], n)


def lattice_sum(a: QLattice, b: QLattice) -> QLattice:
    _same_dim(a, b)
    return lattice_from_generators(list(a.basis) + list(b.basis), a.dim)


def lattice_intersect(a: QLattice, b: QLattice) -> QLattice:
    return dual_lattice(lattice_sum(dual_lattice(a), dual_lattice(b)))


def contains(lat: QLattice, x: Sequence) -> bool:
    return lat.contains(x)


def is_sublattice(k: QLattice, lat: QLattice) -> bool:
    return all(lat.contains(b) for b in k.basis)


def generalized_index(lat: QLattice, k: QLattice) -> Fraction:
    """``[L : L ∩ K] / [K : L ∩ K]``, i.e. ``covol(K) / covol(L)``."""
    _same_dim(lat, k)
    return k.covolume() / lat.covolume()


def haar_volume(k: QLattice) -> Fraction:
    """Volume of the closure of ``k`` in the finite adeles (``Z^n`` has volume 1)."""
    return 1 / generalized_index(standard_lattice(k.dim), k)


def _same_dim(a: QLattice, b: QLattice) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


@dataclass(frozen=True)
class LatticePair:
    """A nested pair ``sub ⊆ sup``."""

    sup: QLattice
    sub: QLattice

    def __post_init__(self):
        _same_dim(self.sup, self.sub)
        if not is_sublattice(self.sub, self.sup):
            raise NotSublattice("sub is not contained in sup")

    @property
    def index(self) -> int:
        return int(generalized_index(self.sup, self.sub))


@dataclass(frozen=True)
class AdaptedBasis:
    vectors: tuple[Vector, ...]
    divisors: tuple[int, ...]


def adapted_basis(pair: LatticePair) -> AdaptedBasis:
    """Basis ``f`` of ``sup`` with ``sub = ⊕ Z d_j f_j`` via Smith normal form."""
    lat, k = pair.sup, pair.sub
    # rows of K expressed in the basis of L
    m = matmul(k.basis, lat.basis_inverse)
    mi = [[int(x) for x in row] for row in m]
    assert all(Fraction(x) == y for r1, r2 in zip(mi, m) for x, y in zip(r1, r2))
    _, s, v = smith(mi)
    vinv = inverse(v)
    f = matmul(vinv, lat.basis)
    return AdaptedBasis(tuple(tuple(r) for r in f), tuple(s[i][i] for i in range(lat.dim)))


def coset_reps(pair: LatticePair) -> list[Vector]:
    """One representative of each class of ``sup / sub``."""
    ab = adapted_basis(pair)
    check_index(prod(ab.divisors), "coset enumeration")
    n = pair.sup.dim
    reps: list[list[Fraction]] = [[Fraction(0)] * n]
    for f, d in zip(ab.vectors, ab.divisors):
        if d == 1:
            continue
        reps = [[x + c * y for x, y in zip(r, f)] for r in reps for c in range(d)]
    return [tuple(r) for r in reps]
