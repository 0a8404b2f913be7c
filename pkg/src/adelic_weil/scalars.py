"""Exact scalars.

Three kinds of numbers appear as function values and operator prefactors:

* rationals, represented by :class:`fractions.Fraction`;
* cyclotomic numbers :class:`CycloScalar`, elements of some ``Q(zeta_N)``
  kept at the smallest possible ``N`` in a sparse basis of roots of unity;
* square-root magnitudes :class:`NormFactor` ``q * sqrt(r)``.

:class:`Scalar` is the product ``sqrt(r) * c`` of a squarefree root and a
cyclotomic number; evaluation and pairing return it.

The basis of ``Q(zeta_N)``: write ``zeta_N^k = prod_q zeta_q^(t_q)`` over the
prime powers ``q = p^e`` exactly dividing ``N``, with ``t_q`` taken mod
``q``.  For odd ``p`` the power ``zeta_N^k`` is a basis element when every
``t_q`` avoids ``[0, p^(e-1))``; for ``p = 2`` when ``t_q < 2^(e-1)``.  Any
other power is rewritten with ``sum_{j mod p} zeta_q^(t + j q/p) = 0``.  In
this basis an element lies in a subfield ``Q(zeta_M)`` exactly when its
exponents say so, which makes finding the conductor cheap.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

from sympy import factorint

from .linalg import inverse

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        p, _, q = x.strip().partition("/")
        if q and int(q) == 0:
            raise ZeroDivisionError(f"zero denominator in {x!r}")
        return Fraction(int(p), int(q) if q else 1)
    return Fraction(x)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def _primes(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorint(n))) if n > 1 else ()


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorint(n).items():
        out *= p ** (e - 1) * (p - 1)
    return out


def _field_order(n: int) -> int:
    """Smallest multiple-free stand-in: ``Q(zeta_2m) = Q(zeta_m)`` is handled at ``4m``."""
    return 2 * n if n % 4 == 2 else n


class _Field:
    """CRT data for the basis of ``Q(zeta_N)``."""

    def __init__(self, n: int):
        self.n = n
        self.parts = []  # (p, e, q, n // q, inverse of n // q mod q)
        for p, e in sorted(factorint(n).items()) if n > 1 else ():
            q = p**e
            c = n // q
            self.parts.append((p, e, q, c, pow(c, -1, q)))
        self._cache: dict[int, tuple[tuple[int, int], ...]] = {}

    def components(self, k: int) -> list[int]:
        return [(k * inv) % q for _, _, q, _, inv in self.parts]

    def expand(self, k: int) -> tuple[tuple[int, int], ...]:
        """``zeta_N^k`` as signed basis exponents."""
        k %= self.n
        hit = self._cache.get(k)
        if hit is not None:
            return hit
        options = []
        for (p, e, q, c, _), t in zip(self.parts, self.components(k)):
            s = q // p
            if p == 2:
                opts = [(t, 1)] if t < s else [(t - s, -1)]
            elif t >= s:
                opts = [(t, 1)]
            else:
                opts = [(t + i * s, -1) for i in range(1, p)]
            options.append([(ti * c, sg) for ti, sg in opts])
        out: dict[int, int] = {}
        for combo in product(*options):
            e = sum(x for x, _ in combo) % self.n
            sg = 1
            for _, s in combo:
                sg *= s
            out[e] = out.get(e, 0) + sg
        res = tuple(sorted((e, c) for e, c in out.items() if c))
        if len(self._cache) < 1 << 20:
            self._cache[k] = res
        return res

    def reduce(self, acc: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for k, c in acc.items():
            if c:
                for e, s in self.expand(k):
                    out[e] = out.get(e, 0) + c * s
        return {e: c for e, c in out.items() if c}

    @property
    def basis(self) -> list[int]:
        exps = [0]
        for p, e, q, c, _ in self.parts:
            s = q // p
            ts = range(s) if p == 2 else range(s, q)
            exps = [(x + t * c) % self.n for x in exps for t in ts]
        return sorted(exps)


@lru_cache(maxsize=256)
def _field(n: int) -> _Field:
    return _Field(n)


def _descend(n: int, acc: dict[int, int]) -> tuple[int, dict[int, int]]:
    """Move a reduced element of ``Q(zeta_n)`` to its conductor."""
    while n > 1:
        if set(acc) == {0}:
            return 1, acc
        F = _field(n)
        for p, e, q, c, inv in F.parts:
            if e >= 2:
                step = 4 if (p == 2 and e == 2) else p
                if all(k % step == 0 for k in acc):
                    n //= step
                    acc = _field(n).reduce({k // step: v for k, v in acc.items()})
                    break
            else:
                # odd p exactly once: coefficients must be constant along t_p
                groups: dict[int, dict[int, int]] = {}
                for k, v in acc.items():
                    t = (k * inv) % p
                    groups.setdefault((k - t * c) % n, {})[t] = v
                ok = True
                for g in groups.values():
                    vals = set(g.values())
                    if len(g) != p - 1 or len(vals) != 1:
                        ok = False
                        break
                if ok:
                    n //= p
                    acc = _field(n).reduce({rest // p: -next(iter(g.values())) for rest, g in groups.items()})
                    break
        else:
            break
    return n, acc


class CycloScalar:
    """An element of a cyclotomic field in canonical form.

    ``order`` is the conductor (never congruent to 2 mod 4), ``coeffs`` the
    sorted ``(exponent, integer)`` pairs over the basis described in the
    module docstring and ``den`` a positive denominator coprime to them.
    """

    __slots__ = ("order", "coeffs", "den", "_hash")

    def __init__(self, order: int, coeffs: tuple[tuple[int, int], ...], den: int):
        self.order = order
        self.coeffs = coeffs
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------
    @classmethod
    def _make(cls, n: int, acc: dict[int, int], den: int, reduced: bool = False) -> CycloScalar:
        assert n % 4 != 2, "exponents must live at a field order"
        if not reduced:
            acc = _field(n).reduce(acc) if n > 1 else {0: sum(acc.values())}
        acc = {k: v for k, v in acc.items() if v}
        if not acc:
            return ZERO
        n, acc = _descend(n, acc)
        g = den
        for c in acc.values():
            g = gcd(g, c)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g != 1:
            acc = {k: c // g for k, c in acc.items()}
            den //= g
        return cls(n, tuple(sorted(acc.items())), den)

    @classmethod
    def from_rational(cls, q) -> CycloScalar:
        q = as_fraction(q)
        if q == 0:
            return ZERO
        return cls(1, ((0, q.numerator),), q.denominator)

    @classmethod
    def from_exponents(cls, n: int, terms) -> CycloScalar:
        """``sum c * zeta_n^k`` over ``(k, c)`` pairs with rational ``c``."""
        terms = [(k, as_fraction(c)) for k, c in terms]
        d = 1
        for _, c in terms:
            d = _lcm(d, c.denominator)
        m = _field_order(n)
        acc: dict[int, int] = {}
        for k, c in terms:
            e = (k * (m // n)) % m
            acc[e] = acc.get(e, 0) + c.numerator * (d // c.denominator)
        return cls._make(m, acc, d)

    # -- views --------------------------------------------------------------
    def terms(self) -> list[tuple[int, Fraction]]:
        return [(k, Fraction(c, self.den)) for k, c in self.coeffs]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_rational(self) -> bool:
        return self.order == 1

    def rational(self) -> Fraction:
        if self.order != 1:
            raise ValueError(f"{self} is not rational")
        return Fraction(self.coeffs[0][1], self.den) if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        n = self.order
        return sum(c * cmath.exp(2j * math.pi * k / n) for k, c in self.coeffs) / self.den

    def _exponents(self, n: int) -> dict[int, int]:
        step = n // self.order
        return {k * step: c for k, c in self.coeffs}

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> CycloScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        same = self.order == other.order
        n = self.order if same else _field_order(_lcm(self.order, other.order))
        acc: dict[int, int] = {}
        for k, c in self._exponents(n).items():
            acc[k] = acc.get(k, 0) + c * other.den
        for k, c in other._exponents(n).items():
            acc[k] = acc.get(k, 0) + c * self.den
        return CycloScalar._make(n, acc, self.den * other.den, reduced=same)

    __radd__ = __add__

    def __neg__(self) -> CycloScalar:
        if self.is_zero():
            return self
        return CycloScalar(self.order, tuple((k, -c) for k, c in self.coeffs), self.den)

    def __sub__(self, other) -> CycloScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> CycloScalar:
        return (-self) + other

    def _scaled(self, q: Fraction) -> CycloScalar:
        return CycloScalar._make(self.order, {k: c * q.numerator for k, c in self.coeffs}, self.den * q.denominator, reduced=True)

    def __mul__(self, other) -> CycloScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        if other.order == 1:
            return self._scaled(other.rational())
        if self.order == 1:
            return other._scaled(self.rational())
        n = _field_order(_lcm(self.order, other.order))
        a, b = self._exponents(n), other._exponents(n)
        if len(a) < len(b):
            a, b = b, a
        acc: dict[int, int] = {}
        for ej, y in b.items():
            for ei, x in a.items():
                e = (ei + ej) % n
                acc[e] = acc.get(e, 0) + x * y
        return CycloScalar._make(n, acc, self.den * other.den)

    __rmul__ = __mul__

    def mul_root(self, r) -> CycloScalar:
        """Multiply by ``exp(2 pi i r)`` for rational ``r``."""
        r = as_fraction(r)
        return self.mul_power(r.numerator, r.denominator)

    def mul_power(self, k: int, m: int) -> CycloScalar:
        """Multiply by ``zeta_m^k``."""
        g = gcd(k, m)
        k, m = (k // g) % (m // g), m // g
        if k == 0 or self.is_zero():
            return self
        n = _field_order(_lcm(self.order, m))
        shift = k * (n // m)
        acc = {(e + shift) % n: c for e, c in self._exponents(n).items()}
        return CycloScalar._make(n, acc, self.den)

    def galois(self, k: int) -> CycloScalar:
        """Apply the automorphism ``zeta -> zeta^k`` (``k`` coprime to the order)."""
        n = self.order
        if gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        acc = {(e * k) % n: c for e, c in self.coeffs}
        return CycloScalar._make(n, acc, self.den)

    def conj(self) -> CycloScalar:
        if self.order <= 2:
            return self
        return self.galois(-1)

    def inverse(self) -> CycloScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.order == 1:
            return CycloScalar.from_rational(1 / self.rational())
        n = self.order
        if len(self.coeffs) == 1:
            (k, c), = self.coeffs
            return CycloScalar._make(n, {(-k) % n: self.den}, c)
        cj = self.conj()
        nrm = self * cj
        if nrm.is_rational():
            return cj._scaled(1 / nrm.rational())
        return self._dense_inverse()

    def _dense_inverse(self) -> CycloScalar:
        n = self.order
        F = _field(n)
        basis = F.basis
        index = {e: i for i, e in enumerate(basis)}
        m = len(basis)
        mat = [[Fraction(0)] * m for _ in range(m)]
        for j, b in enumerate(basis):
            prod_ = F.reduce({(k + b) % n: c for k, c in self.coeffs})
            for e, c in prod_.items():
                mat[index[e]][j] = Fraction(c)
        inv = inverse(mat)
        one = F.reduce({0: 1})
        y = [sum((inv[i][index[e]] * c for e, c in one.items()), Fraction(0)) * self.den for i in range(m)]
        d = 1
        for c in y:
            d = _lcm(d, c.denominator)
        return CycloScalar._make(n, {basis[i]: int(c * d) for i, c in enumerate(y) if c}, d, reduced=True)

    def __truediv__(self, other) -> CycloScalar:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> CycloScalar:
        return _coerce(other) * self.inverse()

    def __pow__(self, e: int) -> CycloScalar:
        if e < 0:
            return self.inverse() ** (-e)
        out, base = ONE, self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.order == other.order and self.den == other.den and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            if self.order == 1:
                self._hash = hash(self.rational())
            else:
                self._hash = hash((self.order, self.coeffs, self.den))
        return self._hash

    def __repr__(self) -> str:
        if self.order == 1:
            return f"CycloScalar({self.rational()})"
        parts = " + ".join(f"({c})*z{self.order}^{k}" for k, c in self.terms())
        return f"CycloScalar({parts})"


def _coerce(x) -> CycloScalar:
    if isinstance(x, CycloScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return CycloScalar.from_rational(x)
    return NotImplemented


ZERO = CycloScalar(1, (), 1)
ONE = CycloScalar(1, ((0, 1),), 1)


def cyclo(x) -> CycloScalar:
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to CycloScalar")
    return c


def cyclo_unit(r) -> CycloScalar:
    """``exp(2 pi i r)`` for rational ``r``."""
    r = as_fraction(r) % 1
    if r == 0:
        return ONE
    return CycloScalar.from_exponents(r.denominator, [(r.numerator, 1)])


def cyclo_mul(a: CycloScalar, b: CycloScalar) -> CycloScalar:
    return a * b


def accumulate_roots(terms) -> CycloScalar:
    """Exact ``sum value * exp(2 pi i r)`` over ``(value, r)`` pairs.

    Everything is summed over one common order and canonicalised once,
    which is much cheaper than repeated :meth:`CycloScalar.__add__`.
    """
    terms = [(v, as_fraction(r)) for v, r in terms if v]
    if not terms:
        return ZERO
    m = 1
    for _, r in terms:
        m = _lcm(m, r.denominator)
    return accumulate_powers([(v, r.numerator * (m // r.denominator)) for v, r in terms], m)


def accumulate_powers(terms, m: int) -> CycloScalar:
    """Exact ``sum value * zeta_m^e`` over ``(value, e)`` pairs with integer ``e``."""
    terms = [(v, e) for v, e in terms if v]
    if not terms:
        return ZERO
    n, d = m, 1
    for v, _ in terms:
        if n % v.order:
            n = _lcm(n, v.order)
        if d % v.den:
            d = _lcm(d, v.den)
    n = _field_order(n)
    mstep = n // m
    acc: dict[int, int] = {}
    for v, r in terms:
        shift = r * mstep
        scale = d // v.den
        step = n // v.order
        for k, c in v.coeffs:
            e = (k * step + shift) % n
            acc[e] = acc.get(e, 0) + c * scale
    return CycloScalar._make(n, acc, d)


# -- square roots ---------------------------------------------------------------


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(s, t)`` with ``n = s^2 * t`` and ``t`` squarefree."""
    if n <= 0:
        raise ValueError("positive integer expected")
    s, t = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            t *= p
    return s, t


@lru_cache(maxsize=None)
def sqrt_cyclo(m: int) -> CycloScalar:
    """``sqrt(m)`` for squarefree ``m >= 1`` as an exact cyclotomic number.

    Uses ``sqrt(2) = z8 + z8^-1`` and the quadratic Gauss sum
    ``g_p = sum (a/p) zp^a``, equal to ``sqrt(p)`` or ``i sqrt(p)``.
    """
    if m < 1:
        raise ValueError("sqrt_cyclo needs a positive radicand")
    out = ONE
    for p in _primes(m):
        if p == 2:
            root = CycloScalar.from_exponents(8, [(1, 1), (7, 1)])
        else:
            g = CycloScalar.from_exponents(p, [(a, 1 if pow(a, (p - 1) // 2, p) == 1 else -1) for a in range(1, p)])
            root = g if p % 4 == 1 else g * CycloScalar.from_exponents(4, [(3, 1)])
        out = out * root
    return out


class NormFactor:
    """A positive real ``q * sqrt(r)``; ``r`` is kept as a squarefree integer."""

    __slots__ = ("q", "r")

    def __init__(self, q=1, r=1):
        q, r = as_fraction(q), as_fraction(r)
        if q <= 0 or r <= 0:
            raise ValueError("NormFactor needs q > 0 and r > 0")
        # q sqrt(a/b) = (q/b) sqrt(ab)
        s, t = squarefree_decompose(r.numerator * r.denominator)
        self.q = q * s / r.denominator
        self.r = t

    def __mul__(self, other: NormFactor) -> NormFactor:
        if not isinstance(other, NormFactor):
            return NotImplemented
        return NormFactor(self.q * other.q, self.r * other.r)

    def __truediv__(self, other: NormFactor) -> NormFactor:
        return NormFactor(self.q / other.q, Fraction(self.r, other.r))

    def square(self) -> Fraction:
        return self.q * self.q * self.r

    def to_cyclo(self) -> CycloScalar:
        return sqrt_cyclo(self.r) * self.q

    def to_complex(self) -> complex:
        return complex(float(self.q) * math.sqrt(self.r), 0.0)

    def __eq__(self, other) -> bool:
        return isinstance(other, NormFactor) and self.q == other.q and self.r == other.r

    def __hash__(self) -> int:
        return hash((self.q, self.r))

    def __repr__(self) -> str:
        return f"NormFactor({self.q}, {self.r})"


def to_complex(a) -> complex:
    if isinstance(a, (CycloScalar, NormFactor, Scalar)):
        return a.to_complex()
    return complex(a)


class Scalar:
    """The number ``sqrt(root) * cyclo`` with ``root`` a squarefree integer.

    ``sqrt(root)`` itself lies in a cyclotomic field, so the split is not
    unique; equality and hashing go through the fully cyclotomic form.
    """

    __slots__ = ("root", "cyclo", "_folded")

    def __init__(self, cyclo=ONE, root: int = 1):
        c = _coerce(cyclo) if not isinstance(cyclo, CycloScalar) else cyclo
        if c is NotImplemented:
            raise TypeError(f"bad scalar component {cyclo!r}")
        self.cyclo = c
        self.root = root if c else 1
        self._folded = None

    @classmethod
    def of(cls, x) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, NormFactor):
            return cls(CycloScalar.from_rational(x.q), x.r)
        return cls(cyclo(x), 1)

    @property
    def norm(self) -> NormFactor:
        return NormFactor(1, self.root)

    def fold(self) -> CycloScalar:
        if self._folded is None:
            self._folded = self.cyclo if self.root == 1 else self.cyclo * sqrt_cyclo(self.root)
        return self._folded

    def is_zero(self) -> bool:
        return self.cyclo.is_zero()

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __mul__(self, other) -> Scalar:
        other = Scalar.of(other)
        s, t = squarefree_decompose(self.root * other.root)
        return Scalar(self.cyclo * other.cyclo * s, t)

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        # 1/(sqrt(r) c) = sqrt(r) / (r c)
        return Scalar((self.cyclo * self.root).inverse(), self.root)

    def __truediv__(self, other) -> Scalar:
        return self * Scalar.of(other).inverse()

    def __add__(self, other) -> Scalar:
        other = Scalar.of(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.root == other.root:
            return Scalar(self.cyclo + other.cyclo, self.root)
        return Scalar(self.fold() + other.fold(), 1)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self.cyclo, self.root)

    def __sub__(self, other) -> Scalar:
        return self + (-Scalar.of(other))

    def conj(self) -> Scalar:
        return Scalar(self.cyclo.conj(), self.root)

    def to_complex(self) -> complex:
        return self.cyclo.to_complex() * math.sqrt(self.root)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Scalar, NormFactor, CycloScalar, int, Fraction)):
            other = Scalar.of(other)
            if self.root == other.root:
                return self.cyclo == other.cyclo
            return self.fold() == other.fold()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.fold())

    def __repr__(self) -> str:
        if self.root == 1:
            return f"Scalar({self.cyclo!r})"
        return f"Scalar(sqrt({self.root}) * {self.cyclo!r})"
