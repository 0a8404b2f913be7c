"""Small exact linear algebra over ``Fraction`` (dense, list-of-rows matrices)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(m)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def vecmat(v: Sequence, a: Sequence[Sequence]) -> tuple[Fraction, ...]:
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [Fraction(0)] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return tuple(out)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(x) * y for x, y in zip(u, v)), Fraction(0))


def det(a: Sequence[Sequence]) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        p = m[c][c]
        result *= p
        for r in range(c + 1, n):
            if m[r][c]:
                q = m[r][c] / p
                m[r] = [x - q * y for x, y in zip(m[r], m[c])]
    return result


def inverse(a: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError on singular input."""
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                q = m[r][c]
                m[r] = [x - q * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def lcm_denominators(values) -> int:
    d = 1
    for x in values:
        q = x.denominator if isinstance(x, Fraction) else Fraction(x).denominator
        if d % q:
            d = d * q // gcd(d, q)
    return d


def scaled_ints(vectors) -> tuple[int, list[list[int]]]:
    """A common denominator ``D`` and the integer numerators of each vector over it."""
    vectors = [v if all(isinstance(c, Fraction) for c in v) else [Fraction(c) for c in v] for v in vectors]
    D = lcm_denominators(c for v in vectors for c in v)
    return D, [[c.numerator * (D // c.denominator) for c in v] for v in vectors]
