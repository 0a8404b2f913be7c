"""The real side: Poisson distributions, Gaussian pairings and theta series.

An :class:`MElement` ``f`` also names the tempered distribution
``sum_xi f(xi) delta(x - sqrt(2 pi) xi)`` on ``R^n``.  Everything here is
double precision; tolerances are explicit parameters.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bruhat import MElement, delta
from .errors import NotInSiegelDomain, RadiusTooSmall, SingularAutomorphyFactor
from .weil import SpMatrix

SQRT_2PI = math.sqrt(2 * math.pi)


@dataclass(frozen=True)
class PoissonDistribution:
    data: MElement

    @property
    def dim(self) -> int:
        return self.data.dim


@dataclass
class GaussianSpec:
    """``phi(x) = scale * exp(-x a x^t + b x^t)``; ``Re a`` must be positive definite."""

    a: np.ndarray
    b: np.ndarray | None = None
    scale: complex = 1.0

    def __post_init__(self):
        self.a = np.atleast_2d(np.asarray(self.a, dtype=complex))
        n = self.a.shape[0]
        self.b = np.zeros(n, dtype=complex) if self.b is None else np.asarray(self.b, dtype=complex).reshape(n)
        if not np.allclose(self.a, self.a.T):
            raise ValueError("quadratic part must be symmetric")
        try:
            np.linalg.cholesky(self.a.real)
        except np.linalg.LinAlgError as exc:
            raise ValueError("real part of the quadratic form is not positive definite") from exc

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def __call__(self, x) -> complex:
        x = np.asarray(x, dtype=float)
        return complex(self.scale * np.exp(-x @ self.a @ x + self.b @ x))

    def rescaled(self, s: float) -> GaussianSpec:
        """The Gaussian ``x -> phi(s x)``."""
        return GaussianSpec(self.a * s * s, self.b * s, self.scale)

    def fourier(self) -> GaussianSpec:
        """Unitary transform ``(2 pi)^(-n/2) integral phi(u) exp(-i u y^t) du``."""
        n = self.dim
        ainv = np.linalg.inv(self.a)
        # continuous branch of det(a)^(-1/2): eigenvalues lie in the right half plane
        root = np.prod([cmath.sqrt(lam) for lam in np.linalg.eigvals(self.a)])
        const = self.scale * 2 ** (-n / 2) / root * cmath.exp(self.b @ ainv @ self.b / 4)
        return GaussianSpec(ainv / 4, -0.5j * (self.b @ ainv), const)


@dataclass(frozen=True)
class SiegelPoint:
    z: np.ndarray = field(compare=False)

    def __post_init__(self):
        z = np.atleast_2d(np.asarray(self.z, dtype=complex))
        object.__setattr__(self, "z", z)
        if not np.allclose(z, z.T, atol=1e-12):
            raise NotInSiegelDomain("z is not symmetric")
        if not _is_pd(z.imag):
            raise NotInSiegelDomain("imaginary part is not positive definite")

    @property
    def dim(self) -> int:
        return self.z.shape[0]


def _is_pd(m: np.ndarray) -> bool:
    try:
        np.linalg.cholesky((m + m.T) / 2)
    except np.linalg.LinAlgError:
        return False
    return True


# -- lattice sums ---------------------------------------------------------------------


@dataclass
class _Support:
    """Float view of an element: coset reps, invariance basis and complex values."""

    reps: np.ndarray
    values: np.ndarray
    basis: np.ndarray
    covolume: float

    @classmethod
    def of(cls, f: MElement) -> _Support:
        reps = np.array([[float(c) for c in r] for r in f.support], dtype=float).reshape(-1, f.dim)
        pre = math.sqrt(f.root)
        values = np.array([v.to_complex() * pre for v in f.support.values()], dtype=complex)
        basis = np.array([[float(c) for c in b] for b in f.K.basis], dtype=float)
        return cls(reps, values, basis, float(f.K.covolume()))


def _ball_volume(n: int, r: float) -> float:
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1) * r**n


def _tail_bound(s: _Support, lam: float, beta: float, rho: float) -> float:
    """Bound on ``sum |f(xi)| exp(-lam |xi|^2 + beta |xi|)`` over ``|xi| > rho``.

    Lattice points in a ball of radius ``t`` number at most
    ``vol(B(t + diam)) / covol`` with ``diam`` the sum of the basis norms.
    """
    n = s.basis.shape[1]
    diam = float(np.sum(np.linalg.norm(s.basis, axis=1)))
    vmax = float(np.max(np.abs(s.values))) if len(s.values) else 0.0
    total, k = 0.0, 0
    while True:
        t = rho + k
        shell = _ball_volume(n, t + 1 + diam) / s.covolume
        term = shell * math.exp(-lam * t * t + beta * (t + 1))
        total += term
        if k > 0 and term < 1e-300 + 1e-18 * total and lam * t > beta:
            break
        k += 1
        if k > 100_000:
            return math.inf
    return vmax * len(s.values) * total


def _points(s: _Support, rho: float):
    """All ``(xi, value)`` with ``|xi| <= rho``, ``xi`` running over the support."""
    binv = np.linalg.inv(s.basis)
    widths = rho * np.linalg.norm(binv, axis=0)
    for r, v in zip(s.reps, s.values):
        c0 = -r @ binv
        ranges = [range(math.floor(c - w), math.ceil(c + w) + 1) for c, w in zip(c0, widths)]
        ns = np.array(list(itertools.product(*ranges)), dtype=float)
        xi = r + ns @ s.basis
        keep = np.einsum("ij,ij->i", xi, xi) <= rho * rho
        yield xi[keep], v


def gaussian_lattice_sum(f: MElement, a, b=None, tol: float = 1e-12, rho: float | None = None):
    """``sum_xi f(xi) exp(-xi a xi^t + b xi^t)`` and a bound on the neglected tail."""
    a = np.atleast_2d(np.asarray(a, dtype=complex))
    n = a.shape[0]
    b = np.zeros(n, dtype=complex) if b is None else np.asarray(b, dtype=complex).reshape(n)
    if f.is_zero():
        return 0j, 0.0
    s = _Support.of(f)
    lam = float(np.min(np.linalg.eigvalsh((a.real + a.real.T) / 2)))
    if lam <= 0:
        raise ValueError("real part of the quadratic form is not positive definite")
    beta = float(np.linalg.norm(b.real))
    if rho is None:
        rho = beta / lam + 1.0
        while _tail_bound(s, lam, beta, rho) > tol:
            rho *= 1.25
    tail = _tail_bound(s, lam, beta, rho)
    total = 0j
    for xi, v in _points(s, rho):
        if len(xi):
            expo = -np.einsum("ij,jk,ik->i", xi, a, xi) + xi @ b
            total += v * complex(np.sum(np.exp(expo)))
    return total, tail


def pair_poisson_gaussian(f: PoissonDistribution | MElement, phi: GaussianSpec, radius: float | None = None, tol: float = 1e-12):
    """``<I f, phi> = sum_xi f(xi) phi(sqrt(2 pi) xi)`` and its tail bound.

    ``radius`` bounds ``|sqrt(2 pi) xi|``; when omitted it is chosen so the
    tail bound is below ``tol``.
    """
    data = f.data if isinstance(f, PoissonDistribution) else f
    g = phi.rescaled(SQRT_2PI)
    rho = None if radius is None else radius / SQRT_2PI
    value, tail = gaussian_lattice_sum(data, g.a, g.b, tol, rho)
    if tail > tol:
        raise RadiusTooSmall(f"tail bound {tail:.3e} exceeds tolerance {tol:.3e}")
    return complex(phi.scale) * value, abs(phi.scale) * tail


# -- theta series ------------------------------------------------------------------------


def _siegel(z) -> SiegelPoint:
    return z if isinstance(z, SiegelPoint) else SiegelPoint(z)


def theta_with_bound(f: MElement, z, tol: float = 1e-12):
    z = _siegel(z)
    if z.dim != f.dim:
        raise ValueError("dimension mismatch")
    return gaussian_lattice_sum(f, -1j * math.pi * z.z, None, tol)


def theta(f: MElement, z, tol: float = 1e-12) -> complex:
    """``sum_xi f(xi) exp(pi i xi z xi^t)`` for ``z`` in the Siegel half space."""
    return theta_with_bound(f, z, tol)[0]


def t_half_transform(g: SpMatrix, z):
    """``z -> (A + z C)^-1 (B + z D)`` with factor ``det(A + z C)^(-1/2)`` (principal branch)."""
    z = _siegel(z)
    A, B, C, D = (np.array([[float(x) for x in row] for row in blk]) for blk in (g.A, g.B, g.C, g.D))
    m = A + z.z @ C
    dm = np.linalg.det(m)
    if abs(dm) < 1e-14:
        raise SingularAutomorphyFactor("det(A + zC) vanishes")
    if dm.real < 0 and abs(dm.imag) <= 1e-13 * abs(dm):
        dm = complex(dm.real, 0.0)  # on the cut: principal sqrt(-x) = i sqrt(x)
    zp = np.linalg.solve(m, B + z.z @ D)
    zp = (zp + zp.T) / 2
    return SiegelPoint(zp), 1 / cmath.sqrt(dm)


def is_eighth_root(w: complex, tol: float) -> bool:
    return abs(abs(w) - 1) <= tol and abs(w**8 - 1) <= 8 * tol


@dataclass
class ModularityReport:
    ratios: list[complex]
    constant: bool
    eighth_root: bool
    exact_one: bool

    @property
    def verdict(self) -> str:
        """Every ratio is an 8th root of unity; under the principal branch it need not be constant."""
        return "PASS" if self.eighth_root else "FAIL"

    def to_json(self) -> dict:
        return {
            "ratios": [[float(r.real), float(r.imag)] for r in self.ratios],
            "constant": bool(self.constant),
            "eighth_root": bool(self.eighth_root),
            "exact_one": bool(self.exact_one),
            "verdict": self.verdict,
        }


def modularity_ratios(f: MElement, g: SpMatrix, samples, tol: float = 1e-12) -> list[complex]:
    out = []
    for z in samples:
        zp, factor = t_half_transform(g, z)
        out.append(theta(f, z, tol) / (factor * theta(f, zp, tol)))
    return out


def modularity_check(f: MElement, g: SpMatrix, samples, tol: float = 1e-8) -> ModularityReport:
    """Compare ``theta(f, z)`` with ``factor(g, z) theta(f, g z)`` at each sample."""
    ratios = modularity_ratios(f, g, samples, tol * 1e-3)
    r0 = ratios[0]
    constant = all(abs(r - r0) <= tol for r in ratios)
    return ModularityReport(
        ratios,
        constant,
        all(is_eighth_root(r, tol) for r in ratios),
        constant and abs(r0 - 1) <= tol,
    )


def standard_theta(z, tol: float = 1e-12) -> complex:
    """``theta`` of the standard indicator ``Z^n``."""
    z = _siegel(z)
    return theta(delta(z.dim), z, tol)
