"""The Weil representation of Sp(2n, Q) on M(Q^n).

Symplectic matrices act on row vectors ``(v+ | v-) g`` and preserve the form
with matrix ``J = (0, 1; -1, 0)``.  ``We`` is a homomorphism up to scalars:
the word ``[a1, ..., ak]`` represents ``g = a1 ... ak`` and
``We(g) = We(a1) ... We(ak)``, so the last atom is applied first.

The three kinds of atoms act by

* ``Dilate(A)``, matrix ``diag(A, A^-t)``: ``f(x) -> |det A|^-1/2 f(x A)``,
* ``FourierJ``, matrix ``J``: ``f -> integral f(x) e(x y^t) dx``,
* ``Quad(B)``, matrix ``(1, B; 0, 1)``: ``f(x) -> e(x B x^t / 2) f(x)``,

where ``e(t) = exp(2 pi i t)`` and the Haar measure gives ``Z^n`` volume 1.
With these conventions ``T(h) We(g) = We(g) T(sigma(g) h)`` holds exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .bruhat import MElement, finish, refine, support_lattice, zero
from .errors import NotSymplectic, Singular
from .heisenberg import HeisElement, heis_act, phase_sublattice
from .lattice import (
    LatticePair,
    QLattice,
    Vector,
    check_index,
    coset_reps,
    dual_lattice,
    haar_volume,
    lattice_from_generators,
    lattice_transform,
)
from .linalg import det, dot, identity, inverse, is_symmetric, lcm_denominators, matmul, scaled_ints, to_matrix, transpose, vecmat
from .scalars import CycloScalar, accumulate_powers, squarefree_decompose

Matrix = tuple[tuple[Fraction, ...], ...]


def _freeze(m) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def symplectic_J(n: int) -> Matrix:
    return _freeze(
        [[int(j == i + n) for j in range(2 * n)] for i in range(n)]
        + [[-int(j == i) for j in range(2 * n)] for i in range(n)]
    )


def block_matrix(a, b, c, d) -> Matrix:
    return _freeze([list(ra) + list(rb) for ra, rb in zip(a, b)] + [list(rc) + list(rd) for rc, rd in zip(c, d)])


class SpMatrix:
    """A rational symplectic matrix; ``g J g^t = J`` is checked on construction."""

    __slots__ = ("m", "n")

    def __init__(self, m: Sequence[Sequence], check: bool = True):
        self.m = _freeze(m)
        size = len(self.m)
        if size % 2 or any(len(r) != size for r in self.m):
            raise NotSymplectic("symplectic matrices are square of even size")
        self.n = size // 2
        if check and matmul(matmul(self.m, symplectic_J(self.n)), transpose(self.m)) != to_matrix(symplectic_J(self.n)):
            raise NotSymplectic("g J g^t != J")

    @classmethod
    def identity(cls, n: int) -> SpMatrix:
        return cls(identity(2 * n), check=False)

    @classmethod
    def J(cls, n: int) -> SpMatrix:
        return cls(symplectic_J(n), check=False)

    @classmethod
    def from_blocks(cls, a, b, c, d) -> SpMatrix:
        return cls(block_matrix(a, b, c, d))

    def _block(self, i: int, j: int) -> Matrix:
        n = self.n
        return tuple(tuple(self.m[i * n + r][j * n : (j + 1) * n]) for r in range(n))

    A = property(lambda self: self._block(0, 0))
    B = property(lambda self: self._block(0, 1))
    C = property(lambda self: self._block(1, 0))
    D = property(lambda self: self._block(1, 1))

    def __mul__(self, other: SpMatrix) -> SpMatrix:
        return SpMatrix(matmul(self.m, other.m), check=False)

    def inverse(self) -> SpMatrix:
        # g^-1 = J g^t J^-1
        j = symplectic_J(self.n)
        jinv = [[-x for x in row] for row in j]
        return SpMatrix(matmul(matmul(j, transpose(self.m)), jinv), check=False)

    def is_identity(self) -> bool:
        return self.m == _freeze(identity(2 * self.n))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.m for x in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, SpMatrix) and self.m == other.m

    def __hash__(self) -> int:
        return hash(self.m)

    def __repr__(self) -> str:
        return f"SpMatrix({[[str(x) for x in r] for r in self.m]})"


# -- atoms ------------------------------------------------------------------------


@dataclass(frozen=True)
class Dilate:
    A: Matrix

    def __post_init__(self):
        object.__setattr__(self, "A", _freeze(self.A))
        if det(self.A) == 0:
            raise Singular("dilation by a singular matrix")

    def matrix(self) -> SpMatrix:
        n = len(self.A)
        z = [[0] * n for _ in range(n)]
        return SpMatrix(block_matrix(self.A, z, z, transpose(inverse(self.A))), check=False)

    def apply(self, f: MElement) -> MElement:
        return weil_dilate(transpose(inverse(self.A)), f)


@dataclass(frozen=True)
class FourierJ:
    n: int

    def matrix(self) -> SpMatrix:
        return SpMatrix.J(self.n)

    def apply(self, f: MElement) -> MElement:
        return weil_fourier(f)


@dataclass(frozen=True)
class Quad:
    B: Matrix

    def __post_init__(self):
        object.__setattr__(self, "B", _freeze(self.B))
        if not is_symmetric(self.B):
            raise ValueError("Quad needs a symmetric matrix")

    def matrix(self) -> SpMatrix:
        n = len(self.B)
        return SpMatrix(block_matrix(identity(n), self.B, [[0] * n for _ in range(n)], identity(n)), check=False)

    def apply(self, f: MElement) -> MElement:
        return weil_quad(self.B, f)


Atom = Union[Dilate, FourierJ, Quad]


@dataclass(frozen=True)
class GeneratorWord:
    """Atoms whose ordered matrix product is ``target``."""

    atoms: tuple[Atom, ...]
    target: SpMatrix = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if word_matrix(self.atoms, self.target.n) != self.target:
            raise NotSymplectic("generator word does not multiply to its target")

    def __len__(self) -> int:
        return len(self.atoms)


def word_matrix(atoms: Sequence[Atom], n: int) -> SpMatrix:
    g = SpMatrix.identity(n)
    for a in atoms:
        g = g * a.matrix()
    return g


# -- the operators -------------------------------------------------------------------


def sigma_act(g: SpMatrix, h: HeisElement) -> HeisElement:
    """``((v+ | v-) g, alpha)``."""
    if g.n != h.n:
        raise ValueError("dimension mismatch")
    w = vecmat(h.vplus + h.vminus, g.m)
    return HeisElement(w[: g.n], w[g.n :], h.alpha)


def weil_dilate(A: Sequence[Sequence], f: MElement) -> MElement:
    """``x -> sqrt|det A| f(x A^-t)``: reps and ``K`` are multiplied by ``A^t``."""
    d = det(A)
    if d == 0:
        raise Singular("dilation by a singular matrix")
    if f.is_zero():
        return f
    At = transpose(A)
    K2 = lattice_transform(f.K, At)
    d = abs(d)
    # sqrt(root * p/q) = sqrt(root * p * q) / q
    s, t = squarefree_decompose(f.root * d.numerator * d.denominator)
    c = Fraction(s, d.denominator)
    dA, Ai = scaled_ints(At)
    dr, reps = scaled_ints(f.support)
    out = {}
    for R, v in zip(reps, f.support.values()):
        X = [sum(a * row[j] for a, row in zip(R, Ai) if a) for j in range(len(Ai))]
        out[K2.reduce_scaled(X, dr * dA)] = v * c
    return finish(K2, out, t)


def weil_fourier(f: MElement) -> MElement:
    """``(F f)(y) = vol(K) sum_r f(r) e(r y^t)`` on ``K^dual``, invariant under ``L^dual``."""
    if f.is_zero():
        return f
    K, L = f.K, support_lattice(f)
    Kd, Ld = dual_lattice(K), dual_lattice(L)
    pair = LatticePair(Kd, Ld)
    check_index(pair.index * max(1, len(f.support)), "Fourier transform")
    mu = haar_volume(K)
    items = list(f.support.items())
    dr = lcm_denominators(c for r, _ in items for c in r)
    ints = [([int(c * dr) for c in r], val) for r, val in items]
    out: dict[Vector, CycloScalar] = {}
    for y in coset_reps(pair):
        y = Ld.reduce(y)
        dy = lcm_denominators(y)
        Y = [int(c * dy) for c in y]
        v = accumulate_powers(((val, sum(a * b for a, b in zip(R, Y))) for R, val in ints), dr * dy)
        if v:
            out[y] = v * mu
    return finish(Ld, out, f.root) if out else zero(f.dim)


def quad_lattice(K: QLattice, L: QLattice, B: Sequence[Sequence]) -> QLattice:
    """Largest ``K' ⊆ K`` with ``x -> e(x B x^t / 2)`` ``K'``-invariant on ``L``-cosets of ``K``."""
    M = K
    for l in L.basis:
        M = phase_sublattice(M, vecmat(l, B))
    # on M the map k -> k B k^t / 2 mod 1 is additive, with values in {0, 1/2}
    odd = [b for b in M.basis if (dot(vecmat(b, B), b) / 2).denominator != 1]
    if not odd:
        return M
    b0 = odd[0]
    gens = [b for b in M.basis if b not in odd]
    gens.append(tuple(2 * x for x in b0))
    gens += [tuple(x + y for x, y in zip(b, b0)) for b in odd[1:]]
    return lattice_from_generators(gens, K.dim)


def weil_quad(B: Sequence[Sequence], f: MElement) -> MElement:
    """``x -> e(x B x^t / 2) f(x)``."""
    if not is_symmetric(B):
        raise ValueError("Quad needs a symmetric matrix")
    if f.is_zero():
        return f
    K2 = quad_lattice(f.K, support_lattice(f), B)
    g = refine(f, K2)
    dB, Bi = scaled_ints(B)
    dr, reps = scaled_ints(g.support)
    m = 2 * dr * dr * dB
    out = {}
    for R, (r, v) in zip(reps, g.support.items()):
        RB = [sum(a * row[j] for a, row in zip(R, Bi) if a) for j in range(len(Bi))]
        out[r] = v.mul_power(sum(a * b for a, b in zip(RB, R)), m)
    return finish(K2, out, g.root)


# -- factorisation -------------------------------------------------------------------


def _is_zero(m) -> bool:
    return not any(x for row in m for x in row)


def _try_inverse(m):
    try:
        return inverse(m)
    except ZeroDivisionError:
        return None


def _symmetric_candidates(n: int, variant: int):
    """Deterministic symmetric shifts ``S``; variant 0 starts with ``S = 0``."""
    if variant == 0:
        yield [[Fraction(0)] * n for _ in range(n)]
    rng = random.Random(variant)
    while True:
        s = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                s[i][j] = s[j][i] = Fraction(rng.randint(-2, 2))
        if not _is_zero(s):
            yield s


def _upper(a, b, out: list) -> None:
    """Append atoms for ``(A, B; 0, A^-t) = Dilate(A) Quad(A^-1 B)``."""
    n = len(a)
    if a != to_matrix(identity(n)):
        out.append(Dilate(a))
    s = matmul(inverse(a), b)
    if not _is_zero(s):
        out.append(Quad(s))


def sp_factor(g: SpMatrix, variant: int = 0) -> GeneratorWord:
    """Write ``g`` as a word in Dilate, FourierJ and Quad atoms.

    With ``M = A + S C`` invertible for a symmetric ``S`` and ``X = C M^-1``,
    ``g = Quad(-S) J^-1 Quad(-X) J Dilate(M) Quad(M^-1 B')`` where
    ``J^-1 = Dilate(-1) J`` and ``B'`` is the top-right block of the last
    factor.  Different ``variant`` values choose different ``S``.
    """
    n = g.n
    A, B, C, D = (to_matrix(x) for x in (g.A, g.B, g.C, g.D))
    atoms: list[Atom] = []
    if variant == 0:
        if g.is_identity():
            return GeneratorWord((), g)
        if _is_zero(C):
            _upper(A, B, atoms)
            return GeneratorWord(tuple(atoms), g)
        if _is_zero(A) and _is_zero(D):
            # (0, B; C, 0) = J Dilate(-C)
            atoms.append(FourierJ(n))
            mc = [[-x for x in row] for row in C]
            if mc != to_matrix(identity(n)):
                atoms.append(Dilate(mc))
            return GeneratorWord(tuple(atoms), g)
    for k, S in enumerate(_symmetric_candidates(n, variant)):
        if k > 10_000:
            raise NotSymplectic("no invertible shift found")
        M = [[a + sc for a, sc in zip(ra, rsc)] for ra, rsc in zip(A, matmul(S, C))]
        Minv = _try_inverse(M)
        if Minv is not None:
            break
    X = matmul(C, Minv)
    B2 = [[b + sd for b, sd in zip(rb, rsd)] for rb, rsd in zip(B, matmul(S, D))]
    if not _is_zero(S):
        atoms.append(Quad([[-x for x in row] for row in S]))
    if not _is_zero(X):
        atoms += [Dilate([[-x for x in row] for row in identity(n)]), FourierJ(n), Quad([[-x for x in row] for row in X]), FourierJ(n)]
    _upper(M, B2, atoms)
    return GeneratorWord(tuple(atoms), g)


def weil_apply(g: SpMatrix, f: MElement, word: GeneratorWord | None = None) -> MElement:
    """``We(g) f`` for the word ``word`` (default ``sp_factor(g)``)."""
    if word is None:
        word = sp_factor(g)
    for atom in reversed(word.atoms):
        f = atom.apply(f)
    return f


def covariance_check(g: SpMatrix, h: HeisElement, f: MElement, word: GeneratorWord | None = None) -> bool:
    """``T(h) We(g) f == We(g) T(sigma(g) h) f`` for one fixed word."""
    if word is None:
        word = sp_factor(g)
    lhs = heis_act(h, weil_apply(g, f, word))
    rhs = weil_apply(g, heis_act(sigma_act(g, h), f), word)
    return lhs == rhs
