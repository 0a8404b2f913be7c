"""The space M(Q^n): invariant, finitely supported functions on Q^n.

An :class:`MElement` is a lattice ``K``, a finite map from representatives
of cosets ``r + K`` to nonzero cyclotomic values, and one global prefactor
``sqrt(root)``.  The function is ``x -> sqrt(root) * value(r)`` for
``x ≡ r (mod K)`` and zero off the listed cosets.  Representatives need not
lie in a lattice through the origin.

Operations return elements in canonical form: ``K`` is enlarged to the full
period lattice of the function, representatives are reduced modulo ``K``
and sorted.  :func:`refine` is the one exception, since its purpose is to
re-express a function over a smaller lattice.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotSublattice
from .lattice import (
    LatticePair,
    QLattice,
    Vector,
    check_index,
    coset_reps,
    generalized_index,
    haar_volume,
    is_sublattice,
    lattice_from_generators,
    lattice_intersect,
    standard_lattice,
    vec,
)
from .scalars import ONE, ZERO, CycloScalar, NormFactor, Scalar, cyclo, squarefree_decompose
from .linalg import lcm_denominators, scaled_ints


class MElement:
    __slots__ = ("dim", "K", "root", "support", "_canon")

    def __init__(self, K: QLattice, support: Mapping | Iterable = (), prefactor=None):
        items = support.items() if isinstance(support, Mapping) else support
        root = 1
        scale = ONE
        if prefactor is not None:
            p = Scalar.of(prefactor)
            root, scale = p.root, p.cyclo
        merged: dict[Vector, CycloScalar] = {}
        for rep, value in items:
            r = K.reduce(rep)
            v = cyclo(value) * scale
            merged[r] = merged[r] + v if r in merged else v
        self.dim = K.dim
        self.K = K
        self.support = {r: v for r, v in merged.items() if v}
        self.root = root if self.support else 1
        self._canon = None

    @classmethod
    def _raw(cls, K: QLattice, support: dict[Vector, CycloScalar], root: int) -> MElement:
        self = object.__new__(cls)
        self.dim = K.dim
        self.K = K
        self.support = support
        self.root = root if support else 1
        self._canon = None
        return self

    @property
    def prefactor(self) -> NormFactor:
        return NormFactor(1, self.root)

    def is_zero(self) -> bool:
        return not self.support

    def canonical(self) -> MElement:
        if self._canon is None:
            K, supp = _coarsen(self.K, self.support)
            out = MElement._raw(K, _sorted(supp), self.root)
            out._canon = out
            self._canon = out
        return self._canon

    def reps(self) -> list[Vector]:
        return list(self.support)

    def items(self):
        return self.support.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MElement):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        if a.K != b.K or a.support.keys() != b.support.keys():
            return False
        if a.root == b.root:
            return a.support == b.support
        return all(Scalar(v, a.root) == Scalar(b.support[r], b.root) for r, v in a.support.items())

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.K, tuple(c.support)))

    def __add__(self, other: MElement) -> MElement:
        return add(self, other)

    def __sub__(self, other: MElement) -> MElement:
        return add(self, scale(other, -1))

    def __neg__(self) -> MElement:
        return scale(self, -1)

    def __rmul__(self, c) -> MElement:
        return scale(self, c)

    def __repr__(self) -> str:
        pre = f"sqrt({self.root})*" if self.root != 1 else ""
        body = ", ".join(f"{[str(x) for x in r]}: {v!r}" for r, v in self.support.items())
        return f"MElement({pre}K={self.K!r}, {{{body}}})"


def _sorted(supp: dict[Vector, CycloScalar]) -> dict[Vector, CycloScalar]:
    """Sort by representative, comparing integer numerators over a common denominator."""
    if len(supp) < 2:
        return dict(supp)
    D = lcm_denominators(c for r in supp for c in r)
    return dict(sorted(supp.items(), key=lambda kv: tuple(c.numerator * (D // c.denominator) for c in kv[0])))


def finish(K: QLattice, support: dict[Vector, CycloScalar], root: int = 1) -> MElement:
    """Build from already-reduced, nonzero data and canonicalise."""
    return MElement._raw(K, support, root).canonical()


def _coarsen(K: QLattice, supp: dict[Vector, CycloScalar]):
    """Enlarge ``K`` to the group of all periods of the function."""
    if not supp:
        return standard_lattice(K.dim), {}
    groups: dict[CycloScalar, list[Vector]] = defaultdict(list)
    for r, v in supp.items():
        groups[v].append(r)
    rare = min(groups.values(), key=len)
    r0 = rare[0]
    P, cur = K, supp
    for r in rare[1:]:
        v = tuple(a - b for a, b in zip(r, r0))
        if P.contains(v):
            continue
        ok = True
        for x, val in cur.items():
            y = P.reduce(tuple(a + b for a, b in zip(x, v)))
            if cur.get(y) != val:
                ok = False
                break
        if ok:
            P = lattice_from_generators(list(P.basis) + [v], K.dim)
            nxt: dict[Vector, CycloScalar] = {}
            for x, val in cur.items():
                nxt.setdefault(P.reduce(x), val)
            cur = nxt
    return P, cur


# -- constructors ------------------------------------------------------------------


def zero(n: int) -> MElement:
    return MElement._raw(standard_lattice(n), {}, 1)


def indicator(L: QLattice, a: Sequence | None = None) -> MElement:
    """The indicator function of ``L + a``."""
    a = vec(a) if a is not None else (Fraction(0),) * L.dim
    out = MElement._raw(L, {L.reduce(a): ONE}, 1)
    out._canon = out
    return out


def delta(n: int) -> MElement:
    """``indicator(Z^n, 0)``, the rational model of the standard theta distribution."""
    return indicator(standard_lattice(n))


# -- structure -----------------------------------------------------------------------


def support_lattice(f: MElement) -> QLattice:
    """Lattice generated by the invariance lattice and the representatives."""
    return lattice_from_generators(list(f.K.basis) + list(f.support), f.dim)


def space_pair(f: MElement) -> LatticePair:
    """The smallest pair ``(L|K)`` with ``f`` in ``M(L|K)`` and ``L ∋ 0``."""
    return LatticePair(support_lattice(f), f.K)


def refine(f: MElement, K2: QLattice) -> MElement:
    """Re-express ``f`` with the smaller invariance lattice ``K2``."""
    if not is_sublattice(K2, f.K):
        raise NotSublattice("refinement lattice is not contained in the invariance lattice")
    if K2 == f.K:
        return f
    check_index(len(f.support) * generalized_index(f.K, K2), "refinement")
    shifts = coset_reps(LatticePair(f.K, K2))
    D, ints = scaled_ints(list(f.support) + shifts)
    reps, sh = ints[: len(f.support)], ints[len(f.support) :]
    out: dict[Vector, CycloScalar] = {}
    for R, v in zip(reps, f.support.values()):
        for S in sh:
            out[K2.reduce_scaled([a + b for a, b in zip(R, S)], D)] = v
    return MElement._raw(K2, out, f.root)


def _common(f: MElement, g: MElement) -> tuple[MElement, MElement]:
    if f.dim != g.dim:
        raise ValueError("dimension mismatch")
    if f.K == g.K:
        return f, g
    K = lattice_intersect(f.K, g.K)
    return refine(f, K), refine(g, K)


def _fold(f: MElement) -> dict[Vector, CycloScalar]:
    if f.root == 1:
        return f.support
    s = Scalar(ONE, f.root).fold()
    return {r: v * s for r, v in f.support.items()}


# -- linear structure ------------------------------------------------------------------


def add(f: MElement, g: MElement) -> MElement:
    if f.is_zero():
        return g.canonical()
    if g.is_zero():
        return f.canonical()
    a, b = _common(f, g)
    if a.root == b.root:
        sa, sb, root = a.support, b.support, a.root
    else:  # irrational prefactor ratio: fold both square roots into the values
        sa, sb, root = _fold(a), _fold(b), 1
    out = dict(sa)
    for r, v in sb.items():
        w = out.get(r, ZERO) + v
        if w:
            out[r] = w
        else:
            out.pop(r, None)
    return finish(a.K, out, root)


def scale(f: MElement, c) -> MElement:
    s = Scalar.of(c)
    if s.is_zero() or f.is_zero():
        return zero(f.dim)
    k, root = squarefree_decompose(f.root * s.root)
    m = s.cyclo * k
    return finish(f.K, {r: v * m for r, v in f.support.items()}, root)


def evaluate(f: MElement, x: Sequence) -> Scalar:
    v = f.support.get(f.K.reduce(x))
    if v is None:
        return Scalar(ZERO)
    return Scalar(v, f.root)


def pairing(f: MElement, g: MElement) -> Scalar:
    """``vol(K) * sum f * conj(g)`` over cosets of a common invariance lattice."""
    a, b = _common(f, g)
    terms = [v * b.support[r].conj() for r, v in a.support.items() if r in b.support]
    total = ZERO
    for t in terms:
        total = total + t
    k, root = squarefree_decompose(a.root * b.root)
    return Scalar(total * haar_volume(a.K) * k, root)


def projective_equal(f: MElement, g: MElement) -> Scalar | None:
    """The scalar ``λ`` with ``f = λ g``, or ``None`` if there is none."""
    a, b = f.canonical(), g.canonical()
    if a.is_zero() or b.is_zero():
        return Scalar(ONE) if a.is_zero() and b.is_zero() else None
    if a.K != b.K or a.support.keys() != b.support.keys():
        return None
    r0 = next(iter(a.support))
    fa, gb = a.support[r0], b.support[r0]
    for r, v in a.support.items():
        if v * gb != fa * b.support[r]:
            return None
    return Scalar(fa / gb, a.root) / Scalar(ONE, b.root)


def parity(f: MElement) -> MElement:
    """``x -> f(-x)``."""
    return finish(f.K, {f.K.reduce(tuple(-c for c in r)): v for r, v in f.support.items()}, f.root)
