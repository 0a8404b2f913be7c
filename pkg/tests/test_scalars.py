import cmath
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from adelic_weil.scalars import (
    ONE,
    ZERO,
    CycloScalar,
    NormFactor,
    Scalar,
    cyclo,
    cyclo_mul,
    cyclo_unit,
    sqrt_cyclo,
    squarefree_decompose,
    to_complex,
)

fractions = st.fractions(max_denominator=24).map(lambda q: q % 7)
small = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@st.composite
def cyclos(draw):
    total = ZERO
    for _ in range(draw(st.integers(1, 3))):
        total = total + cyclo_unit(draw(st.fractions(0, 1, max_denominator=12))) * draw(small)
    return total


def zeta(n, k=1):
    return cyclo_unit(F(k, n))


# -- oracles --------------------------------------------------------------------------


@pytest.mark.parametrize(
    "r, expected",
    [(F(0), ONE), (F(1, 2), cyclo(-1)), (F(1, 4), zeta(4)), (F(3, 2), cyclo(-1)), (F(-1, 4), zeta(4, 3))],
    ids=["zero", "half", "quarter", "three-halves", "minus-quarter"],
)
def test_cyclo_unit(r, expected):
    assert cyclo_unit(r) == expected


def test_cube_root_cubed():
    assert zeta(3) ** 3 == ONE


def test_i_squared():
    assert cyclo_mul(zeta(4), zeta(4)) == cyclo(-1)


def test_sum_of_cube_roots_annihilates():
    s = ONE + zeta(3) + zeta(3, 2)
    assert s.is_zero()
    assert (s * (zeta(7) + 5)).is_zero()


def test_descends_to_rationals():
    assert zeta(3) + zeta(3, 2) == cyclo(-1)
    assert (zeta(8) + zeta(8, 7)) ** 2 == cyclo(2)


def test_inverse_frozen():
    z5 = zeta(5)
    assert z5.inverse() == zeta(5, 4)
    assert (z5 + 1).inverse() == -zeta(5) - zeta(5, 3)


def test_canonical_terms_frozen():
    c = zeta(12) + zeta(8)
    assert c.order == 24
    assert c.terms() == [(11, F(-1)), (14, F(-1)), (19, F(-1))]


@pytest.mark.parametrize("m, expected", [(2, 2**0.5), (3, 3**0.5), (5, 5**0.5), (7, 7**0.5), (6, 6**0.5), (30, 30**0.5)])
def test_sqrt_cyclo(m, expected):
    s = sqrt_cyclo(m)
    assert abs(s.to_complex() - expected) < 1e-12
    assert s * s == cyclo(m)


def test_to_complex_oracles():
    assert to_complex(zeta(4)) == pytest.approx(1j, abs=1e-12)
    assert to_complex(NormFactor(1, 2)) == pytest.approx(math.sqrt(2), abs=1e-12)
    assert to_complex(zeta(8)) == pytest.approx(complex(math.sqrt(2) / 2, math.sqrt(2) / 2), abs=1e-12)


@pytest.mark.parametrize("n, expected", [(1, (1, 1)), (12, (2, 3)), (50, (5, 2)), (72, (6, 2))])
def test_squarefree_decompose(n, expected):
    assert squarefree_decompose(n) == expected


def test_norm_factor_normalises_radicand():
    nf = NormFactor(F(1, 2), F(8, 3))
    assert (nf.q, nf.r) == (F(1, 3), 6)
    assert nf.square() == F(2, 3)


def test_scalar_folding():
    assert Scalar(cyclo(1), 2) == Scalar(sqrt_cyclo(2), 1)
    assert Scalar(cyclo(2), 2) * Scalar(cyclo(1), 2) == Scalar(cyclo(4))


@pytest.mark.parametrize("bad", [0, -1, -8])
def test_radicands_must_be_positive(bad):
    with pytest.raises(ValueError):
        squarefree_decompose(bad)
    with pytest.raises(ValueError):
        sqrt_cyclo(bad)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


# -- properties -------------------------------------------------------------------------


@given(cyclos(), cyclos(), cyclos())
def test_field_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert a - a == ZERO


@given(cyclos())
def test_inverse_property(a):
    if a.is_zero():
        return
    assert a * a.inverse() == ONE


@given(fractions, fractions)
def test_unit_homomorphism(r1, r2):
    assert cyclo_unit(r1) * cyclo_unit(r2) == cyclo_unit(r1 + r2)


@given(cyclos())
def test_structural_equality_matches_value(a):
    b = CycloScalar.from_exponents(a.order * 3, [(3 * k, v) for k, v in a.terms()])
    assert a == b and hash(a) == hash(b)


@given(st.fractions(min_value=F(1, 30), max_value=50, max_denominator=30), st.integers(1, 60), st.integers(1, 60))
def test_norm_factor_algebra(q, r1, r2):
    a, b = NormFactor(q, r1), NormFactor(1, r2)
    assert a * b == b * a
    assert (a * b) * a == a * (b * a)
    assert a.square() == q * q * r1


@given(cyclos(), cyclos())
def test_to_complex_multiplicative(a, b):
    assert cmath.isclose((a * b).to_complex(), a.to_complex() * b.to_complex(), abs_tol=1e-10)


@given(cyclos())
def test_conj_matches_complex(a):
    assert cmath.isclose(a.conj().to_complex(), a.to_complex().conjugate(), abs_tol=1e-10)
