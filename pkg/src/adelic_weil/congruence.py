"""Congruence subgroups of Sp(2n, Z) and the Delta-normalised Weil action."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import lcm
from typing import Literal

from .bruhat import MElement, delta, projective_equal, scale, support_lattice
from .errors import DeltaNotEigen, MembershipUndecided, NotInGamma12, NotIntegral
from .linalg import identity, inverse, matmul, transpose
from .scalars import Scalar
from .weil import GeneratorWord, SpMatrix, block_matrix, sp_factor, weil_apply

Kind = Literal["gamma", "gamma12", "u"]


@dataclass(frozen=True)
class CongruenceSpec:
    """``gamma`` is the principal subgroup of level ``level``, ``u`` the group ``U_level``."""

    kind: Kind
    n: int
    level: int = 1

    def __post_init__(self):
        if self.kind not in ("gamma", "gamma12", "u"):
            raise ValueError(f"unknown congruence kind {self.kind!r}")
        if self.n < 1 or self.level < 1:
            raise ValueError("n and level must be positive")

    @classmethod
    def principal(cls, N: int, n: int) -> CongruenceSpec:
        return cls("gamma", n, N)

    @classmethod
    def gamma12(cls, n: int) -> CongruenceSpec:
        return cls("gamma12", n)

    @classmethod
    def U(cls, l: int, n: int) -> CongruenceSpec:
        return cls("u", n, l)


def membership(g: SpMatrix, spec: CongruenceSpec) -> bool:
    if not g.is_integral():
        raise NotIntegral("congruence subgroups consist of integral matrices")
    if g.n != spec.n:
        raise ValueError("dimension mismatch")
    if spec.kind == "gamma":
        one = identity(2 * g.n)
        return all((x - e) % spec.level == 0 for row, erow in zip(g.m, one) for x, e in zip(row, erow))
    if spec.kind == "gamma12":
        atc = matmul(transpose(g.A), g.C)
        btd = matmul(transpose(g.B), g.D)
        return all(atc[i][i] % 2 == 0 and btd[i][i] % 2 == 0 for i in range(g.n))
    raise MembershipUndecided("membership in U_l is a word problem and is not decided")


# -- sampling -----------------------------------------------------------------------------


def _zeros(n: int):
    return [[0] * n for _ in range(n)]


def _symmetric(rng: random.Random, n: int, size: int, even_diagonal: bool = False):
    s = _zeros(n)
    for i in range(n):
        for j in range(i, n):
            v = rng.randint(-size, size)
            if i == j and even_diagonal:
                v = 2 * rng.randint(-max(1, size // 2), max(1, size // 2))
            s[i][j] = s[j][i] = v
    return s


def random_unimodular(rng: random.Random, n: int, size: int, l: int = 1, steps: int = 3):
    """A product of elementary matrices ``1 + l c e_ij``; congruent to 1 mod ``l``.

    For ``l = 1`` sign changes are mixed in as well.
    """
    a = identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = identity(n)
        e[i][j] = l * rng.randint(-size, size)
        a = matmul(a, e)
    if l == 1:
        for i in range(n):
            if rng.random() < 0.5:
                a[i] = [-x for x in a[i]]
    return a


def _dilation(a) -> SpMatrix:
    n = len(a)
    return SpMatrix(block_matrix(a, _zeros(n), _zeros(n), transpose(inverse(a))))


def _upper(b) -> SpMatrix:
    n = len(b)
    return SpMatrix(block_matrix(identity(n), b, _zeros(n), identity(n)))


def _lower(c) -> SpMatrix:
    n = len(c)
    return SpMatrix(block_matrix(identity(n), _zeros(n), c, identity(n)))


def _scaled(m, l: int):
    return [[l * x for x in row] for row in m]


def sample_generators(spec: CongruenceSpec, count: int, seed: int = 0, size: int = 2) -> list[SpMatrix]:
    """Random generators of the requested group with entries bounded by ``size``.

    ``U_l``: dilations by ``1 + l alpha`` in ``GL(n, Z)``, ``(1, l beta; 0, 1)``
    and ``(1, 0; l gamma, 1)``.  ``Gamma_{1,2}``: dilations by ``GL(n, Z)``,
    the two unipotent types with even diagonals, and ``J``.  The principal
    subgroup ``Gamma_N`` is sampled through the ``U_N`` generators.  Identity
    draws are skipped.
    """
    rng = random.Random(seed)
    n = spec.n
    out: list[SpMatrix] = []
    while len(out) < count:
        if spec.kind in ("u", "gamma"):
            l = spec.level
            t = rng.randrange(3)
            if t == 0:
                a = random_unimodular(rng, n, size, l)
                if n == 1 and l <= 2 and rng.random() < 0.5:
                    a = [[-1]]  # 1 + l alpha = -1 with alpha = -2/l
                g = _dilation(a)
            elif t == 1:
                g = _upper(_scaled(_symmetric(rng, n, size), l))
            else:
                g = _lower(_scaled(_symmetric(rng, n, size), l))
        else:
            t = rng.randrange(4)
            if t == 0:
                g = _dilation(random_unimodular(rng, n, size))
            elif t == 1:
                g = _upper(_symmetric(rng, n, size, even_diagonal=True))
            elif t == 2:
                g = _lower(_symmetric(rng, n, size, even_diagonal=True))
            else:
                g = SpMatrix.J(n)
            assert membership(g, spec)
        if not g.is_identity():
            out.append(g)
    return out


def random_gamma12(rng: random.Random, n: int, length: int = 3, size: int = 1) -> SpMatrix:
    """A product of ``length`` sampled generators of ``Gamma_{1,2}``."""
    g = SpMatrix.identity(n)
    for h in sample_generators(CongruenceSpec.gamma12(n), length, rng.randrange(2**32), size):
        g = g * h
    return g


# -- the Delta-normalised action ------------------------------------------------------------


def delta_scalar(g: SpMatrix, word: GeneratorWord | None = None) -> Scalar:
    """The ``lambda`` with ``We(g) Delta = lambda Delta``."""
    d = delta(g.n)
    lam = projective_equal(weil_apply(g, d, word), d)
    if lam is None:
        raise DeltaNotEigen("We(g) does not fix the standard indicator up to a scalar")
    return lam


def delta_normalized_apply(g: SpMatrix, f: MElement, word: GeneratorWord | None = None) -> MElement:
    """``lambda^-1 We(g) f`` where ``We(g) Delta = lambda Delta``."""
    if not membership(g, CongruenceSpec.gamma12(g.n)):
        raise NotInGamma12("matrix is not in Gamma_{1,2}")
    if word is None:
        word = sp_factor(g)
    lam = delta_scalar(g, word)
    return scale(weil_apply(g, f, word), lam.inverse())


# -- stabilisers ---------------------------------------------------------------------------


def level_of(f: MElement) -> int:
    """Least ``N`` with ``supp f ⊆ N^-1 Z^n`` and ``N Z^n ⊆ K``."""
    n1 = support_lattice(f).den
    n2 = 1
    for row in f.K.basis_inverse:
        for x in row:
            n2 = lcm(n2, x.denominator)
    return lcm(n1, n2)


@dataclass
class StabilizerEvidence:
    generator: SpMatrix
    fixed: bool
    scalar: Scalar | None


@dataclass
class StabilizerReport:
    N: int
    group_level: int
    evidence: list[StabilizerEvidence] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.fixed for e in self.evidence)


def stabilizer_level(f: MElement, trials: int = 20, seed: int = 0, size: int = 2) -> StabilizerReport:
    """``N = level_of(f)`` and evidence that ``U_{2N^2}`` fixes ``f`` after Delta-normalisation."""
    N = level_of(f)
    l = 2 * N * N
    report = StabilizerReport(N, l)
    for u in sample_generators(CongruenceSpec.U(l, f.dim), trials, seed, size):
        img = delta_normalized_apply(u, f)
        report.evidence.append(StabilizerEvidence(u, img == f, projective_equal(img, f)))
    return report
