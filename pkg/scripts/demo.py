#!/usr/bin/env python3
"""A short tour: Poisson summation, a Weil operator, and the theta bridge."""

from fractions import Fraction

from adelic_weil import (
    SpMatrix,
    delta,
    dual_lattice,
    haar_volume,
    indicator,
    lattice_from_generators,
    scale,
    sp_factor,
    theta,
    weil_apply,
    weil_fourier,
)
from adelic_weil.serialize import dumps, melement_to_json


def main() -> None:
    L = lattice_from_generators([[Fraction(1, 2), Fraction(1, 3)], [0, Fraction(5, 4)]], 2)
    lhs = weil_fourier(indicator(L))
    rhs = scale(indicator(dual_lattice(L)), haar_volume(L))
    print("Fourier of 1_L equals vol(L)^-1 * 1_{L^dual}:", lhs == rhs)

    g = SpMatrix([[1, 0], [Fraction(1, 2), 1]])
    print("generator word:", [type(a).__name__ for a in sp_factor(g).atoms])
    print("We(g) Delta =", dumps(melement_to_json(weil_apply(g, delta(1))), pretty=False), end="")

    print("theta(Delta, i) =", theta(delta(1), [[1j]]))


if __name__ == "__main__":
    main()
