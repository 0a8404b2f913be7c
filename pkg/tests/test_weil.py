from fractions import Fraction as F

import pytest
from hypothesis import given

from adelic_weil import sampling
from adelic_weil.bruhat import delta, indicator, pairing, parity, projective_equal, scale
from adelic_weil.congruence import random_gamma12
from adelic_weil.errors import NotSymplectic, Singular
from adelic_weil.heisenberg import HeisElement
from adelic_weil.lattice import dual_lattice, haar_volume, standard_lattice
from adelic_weil.scalars import ONE, Scalar, cyclo, cyclo_unit
from adelic_weil.weil import (
    Dilate,
    FourierJ,
    GeneratorWord,
    Quad,
    SpMatrix,
    covariance_check,
    sigma_act,
    sp_factor,
    weil_apply,
    weil_dilate,
    weil_fourier,
    weil_quad,
)

from conftest import redraw, rng_of, seeds

Z, H = standard_lattice(1), F(1, 2)


# -- oracles ----------------------------------------------------------------------------------


def test_symplectic_validation():
    with pytest.raises(NotSymplectic):
        SpMatrix([[1, 1], [1, 1]])
    with pytest.raises(Singular):
        Dilate([[1, 2], [2, 4]])
    with pytest.raises(NotSymplectic):
        GeneratorWord((FourierJ(1),), SpMatrix.identity(1))


def test_sigma_oracles():
    h = HeisElement((F(1, 3), 2), (F(-1, 2), 5), F(1, 7))
    assert sigma_act(SpMatrix.identity(2), h) == h
    assert sigma_act(SpMatrix.J(2), h) == HeisElement((F(1, 2), -5), (F(1, 3), 2), F(1, 7))


def test_dilate_oracles():
    f = indicator(Z, [H])
    assert weil_dilate([[1]], f) == f
    d = weil_dilate([[2]], delta(1))
    assert d.root == 2 and d.K == standard_lattice(1, 2) and d.support == {(F(0),): ONE}
    g = weil_dilate([[F(2, 3)]], f)
    assert (g.root, g.K, g.support) == (6, standard_lattice(1, F(2, 3)), {(F(1, 3),): cyclo(F(1, 3))})


def test_fourier_oracles():
    assert weil_fourier(delta(2)) == delta(2)
    g = weil_fourier(indicator(Z, [H]))
    assert g == indicator(standard_lattice(1, 2)) - indicator(standard_lattice(1, 2), [1])


def test_quad_oracles():
    f = indicator(Z, [H])
    assert weil_quad([[0]], f) == f
    q = weil_quad([[H]], f)
    z16 = cyclo_unit(F(1, 16))
    assert q.K == standard_lattice(1, 4)
    assert q.support == {(H,): z16, (F(3, 2),): -z16, (F(5, 2),): -z16, (F(7, 2),): z16}
    r = weil_quad([[F(1, 3)]], delta(1))
    assert r.K == standard_lattice(1, 6)
    assert [r.support[(F(k),)] for k in range(6)] == [cyclo_unit(F(k * k, 6)) for k in range(6)]


def test_factor_oracles():
    assert sp_factor(SpMatrix.identity(2)).atoms == ()
    assert sp_factor(SpMatrix.J(2)).atoms == (FourierJ(2),)
    g = SpMatrix([[1, 2, H, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, -2, 1]])
    assert sp_factor(g).atoms == (Dilate([[1, 2], [0, 1]]), Quad([[H, 0], [0, 0]]))
    low = SpMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [H, 1, 1, 0], [1, F(1, 3), 0, 1]])
    assert sp_factor(low).atoms == (Dilate([[-1, 0], [0, -1]]), FourierJ(2), Quad([[-H, -1], [-1, F(-1, 3)]]), FourierJ(2))


def test_apply_oracles():
    f = indicator(standard_lattice(1, 3), [F(1, 5)])
    assert weil_apply(SpMatrix.identity(1), f) == f
    assert weil_apply(SpMatrix.J(2), delta(2)) == delta(2)
    g = SpMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 1, 0], [1, 0, 0, 1]])
    assert projective_equal(weil_apply(g, delta(2)), delta(2)) is not None


def test_apply_frozen_lower_unipotent():
    low = SpMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [H, 1, 1, 0], [1, F(1, 3), 0, 1]])
    out = weil_apply(low, delta(2))
    assert out.K == standard_lattice(2)
    assert sorted(out.support) == [(0, F(1, 6)), (0, H), (0, F(5, 6)), (H, F(1, 6)), (H, H), (H, F(5, 6))]
    z12 = lambda k: cyclo_unit(F(k, 12))  # noqa: E731
    assert out.support[(H, H)] == (z12(4) + z12(7) - z12(8) - z12(11)) * F(1, 6)


def test_covariance_identity_and_atoms():
    f = indicator(standard_lattice(2, F(1, 3)), [H, 0])
    e = [(F(1), F(0)), (F(0), F(1))]
    z = (F(0), F(0))
    spanning = [HeisElement(v, z) for v in e] + [HeisElement(z, v) for v in e] + [HeisElement(z, z, F(1, 5))]
    atoms = [Dilate([[2, 1], [0, F(1, 3)]]), FourierJ(2), Quad([[H, F(1, 3)], [F(1, 3), 2]])]
    for h in spanning:
        assert covariance_check(SpMatrix.identity(2), h, f)
        for a in atoms:
            g = a.matrix()
            assert covariance_check(g, h, f, GeneratorWord((a,), g))


# -- properties ------------------------------------------------------------------------------


@given(seeds)
def test_factor_reconstructs(seed):
    rng = rng_of(seed)
    g = sampling.symplectic(rng, 2)
    for variant in (0, 1, 2):
        w = sp_factor(g, variant)
        assert w.target == g


def _covariance(rng, n):
    g, h, f = sampling.symplectic(rng, n), sampling.heis_element(rng, n), sampling.melement(rng, n)
    return covariance_check(g, h, f)


@given(seeds)
def test_covariance_random(seed):
    assert redraw(_covariance, rng_of(seed), 1)


def _word_independence(rng, n):
    g = sampling.symplectic(rng, n)
    w0, w1 = sp_factor(g, 0), sp_factor(g, 1)
    lams = {projective_equal(weil_apply(g, f, w0), weil_apply(g, f, w1)) for f in (sampling.melement(rng, n) for _ in range(3))}
    return len(lams) == 1 and None not in lams


@given(seeds)
def test_word_independence(seed):
    assert redraw(_word_independence, rng_of(seed), 1)


def _projective_homomorphism(rng, n):
    g1, g2 = sampling.symplectic(rng, n), sampling.symplectic(rng, n)
    cs = set()
    for _ in range(2):
        f = sampling.melement(rng, n)
        cs.add(projective_equal(weil_apply(g1, weil_apply(g2, f)), weil_apply(g1 * g2, f)))
    return len(cs) == 1 and None not in cs


@given(seeds)
def test_projective_homomorphism(seed):
    assert redraw(_projective_homomorphism, rng_of(seed), 1)


def _unitary(rng, n):
    g = sampling.symplectic(rng, n)
    f, f2 = sampling.melement(rng, n), sampling.melement(rng, n)
    return pairing(weil_apply(g, f), weil_apply(g, f2)) == pairing(f, f2)


@given(seeds)
def test_unitary(seed):
    assert redraw(_unitary, rng_of(seed), 1)


@given(seeds)
def test_fourier_squared_is_parity(seed):
    f = sampling.melement(rng_of(seed), 2)
    lam = projective_equal(weil_fourier(weil_fourier(f)), parity(f))
    assert lam == Scalar(ONE)


@given(seeds)
def test_poisson_summation(seed):
    rng = rng_of(seed)
    L = sampling.lattice(rng, rng.choice((1, 2, 3)), 6)
    assert weil_fourier(indicator(L)) == scale(indicator(dual_lattice(L)), haar_volume(L))


@given(seeds)
def test_gamma12_fixes_delta_projectively(seed):
    g = random_gamma12(rng_of(seed), 2)
    assert projective_equal(weil_apply(g, delta(2)), delta(2)) is not None
