"""Seeded verification suites with machine-readable reports.

Each trial draws its objects from ``random.Random("<suite>/<seed>/<trial>")``
(string seeding in :mod:`random` is platform independent), so a config fixes
the report bytes.  Draws that exceed the index cap are redrawn from the same
stream and do not count as failures.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, fields
from typing import Callable

import numpy as np

from . import sampling
from .bridge import GaussianSpec, modularity_check, pair_poisson_gaussian
from .bruhat import delta, indicator, pairing, parity, projective_equal, scale
from .congruence import CongruenceSpec, delta_normalized_apply, level_of, random_gamma12, sample_generators
from .errors import IndexOverflow, SchemaError
from .heisenberg import commutant_dimension, heis_act
from .lattice import dual_lattice, haar_volume, index_cap
from .serialize import heis_to_json, lattice_to_json, matrix_to_json, melement_to_json, scalar_to_json
from .weil import SpMatrix, covariance_check, sp_factor, weil_apply, weil_fourier

MAX_REDRAWS = 200


@dataclass(frozen=True)
class VerifyConfig:
    suite: str
    n: int = 1
    trials: int = 10
    seed: int = 0
    max_den: int = 6
    index_cap: int = 10**4
    tol: float = 1e-8
    level: int = 2

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {', '.join(sorted(SUITES))}")
        for name in ("n", "trials", "max_den", "index_cap", "level"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")

    @classmethod
    def from_json(cls, text: str) -> VerifyConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"line {exc.lineno}", exc.msg) from None
        if not isinstance(data, dict):
            raise SchemaError("", "config must be an object")
        known = {f.name: f.type for f in fields(cls)}
        for key, val in data.items():
            if key not in known:
                raise SchemaError(f"/{key}", "unknown field")
            want = str if key == "suite" else float if key == "tol" else int
            if isinstance(val, bool) or not isinstance(val, (int, float) if want is float else want):
                raise SchemaError(f"/{key}", f"expected {want.__name__}")
        if "suite" not in data:
            raise SchemaError("/suite", "missing field")
        try:
            return cls(**data)
        except ValueError as exc:
            raise SchemaError("", str(exc)) from None


@dataclass
class Report:
    suite: str
    trials: int
    passes: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return asdict(self)


# -- trials ---------------------------------------------------------------------------------
# A trial returns (passed, detail); detail is only reported on failure.


def _covariance(rng, c):
    g = sampling.symplectic(rng, c.n, c.max_den)
    h = sampling.heis_element(rng, c.n, c.max_den)
    f = sampling.melement(rng, c.n, c.max_den)
    return covariance_check(g, h, f), {"g": matrix_to_json(g), "h": heis_to_json(h), "f": melement_to_json(f)}


def _projective(rng, c):
    g = sampling.symplectic(rng, c.n, c.max_den)
    w0, w1 = sp_factor(g, 0), sp_factor(g, 1)
    lams = []
    for _ in range(3):
        f = sampling.melement(rng, c.n, c.max_den)
        lams.append(projective_equal(weil_apply(g, f, w0), weil_apply(g, f, w1)))
    ok = lams[0] is not None and all(lam == lams[0] for lam in lams)
    return ok, {"g": matrix_to_json(g), "scalars": [None if lam is None else scalar_to_json(lam) for lam in lams]}


def _commutant(rng, c):
    pair = sampling.lattice_pair(rng, c.n, 16)
    d = commutant_dimension(pair)
    return d == 1, {"L": lattice_to_json(pair.sup), "K": lattice_to_json(pair.sub), "dimension": d}


def _poisson(rng, c):
    L = sampling.lattice(rng, c.n, c.max_den)
    lhs = weil_fourier(indicator(L))
    return lhs == scale(indicator(dual_lattice(L)), haar_volume(L)), {"L": lattice_to_json(L)}


def _heisenberg(rng, c):
    h1 = sampling.heis_element(rng, c.n, c.max_den)
    h2 = sampling.heis_element(rng, c.n, c.max_den)
    f = sampling.melement(rng, c.n, c.max_den)
    ok = heis_act(h1, heis_act(h2, f)) == heis_act(h1 * h2, f)
    return ok, {"h1": heis_to_json(h1), "h2": heis_to_json(h2), "f": melement_to_json(f)}


def _gamma12(rng, c):
    g1, g2 = random_gamma12(rng, c.n), random_gamma12(rng, c.n)
    f = sampling.melement(rng, c.n, c.max_den)
    lhs = delta_normalized_apply(g1 * g2, f)
    rhs = delta_normalized_apply(g1, delta_normalized_apply(g2, f))
    fixed = delta_normalized_apply(g1, delta(c.n)) == delta(c.n)
    return lhs == rhs and fixed, {"g1": matrix_to_json(g1), "g2": matrix_to_json(g2), "f": melement_to_json(f)}


def _stabilizer(rng, c):
    f = sampling.melement_of_level(rng, c.n, c.level)
    N = level_of(f)
    (u,) = sample_generators(CongruenceSpec.U(2 * N * N, c.n), 1, rng.randrange(2**32))
    return delta_normalized_apply(u, f) == f, {"f": melement_to_json(f), "generator": matrix_to_json(u)}


def _theta(rng, c):
    samples = [1j * rng.uniform(0.5, 2.0) * np.eye(c.n) for _ in range(3)]
    samples.append(1j * np.eye(c.n) + rng.uniform(-0.5, 0.5) * np.eye(c.n))
    report = modularity_check(delta(c.n), SpMatrix.J(c.n), samples, c.tol)
    return report.verdict == "PASS", report.to_json()


def _fourier(rng, c):
    f = sampling.melement(rng, c.n, c.max_den)
    g = sampling.melement(rng, c.n, c.max_den)
    Ff = weil_fourier(f)
    ok = projective_equal(weil_fourier(Ff), parity(f)) is not None and pairing(Ff, weil_fourier(g)) == pairing(f, g)
    return ok, {"f": melement_to_json(f), "g": melement_to_json(g)}


def _gaussian(rng, n):
    m = np.array([[rng.uniform(-0.3, 0.3) for _ in range(n)] for _ in range(n)])
    a = m @ m.T + np.eye(n) * rng.uniform(0.3, 1.0)
    a = a + 1j * np.diag([rng.uniform(-0.5, 0.5) for _ in range(n)])
    b = np.array([complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)) for _ in range(n)])
    return GaussianSpec(a, b)


def _bridge(rng, c):
    f = sampling.melement(rng, c.n, min(c.max_den, 4))
    phi = _gaussian(rng, c.n)
    lhs, _ = pair_poisson_gaussian(f, phi, tol=c.tol * 1e-3)
    rhs, _ = pair_poisson_gaussian(weil_fourier(f), phi.fourier(), tol=c.tol * 1e-3)
    return abs(lhs - rhs) <= c.tol * max(1.0, abs(lhs)), {"f": melement_to_json(f), "lhs": [float(lhs.real), float(lhs.imag)], "rhs": [float(rhs.real), float(rhs.imag)]}


SUITES: dict[str, Callable] = {
    "covariance": _covariance,
    "projective": _projective,
    "commutant": _commutant,
    "poisson": _poisson,
    "heisenberg": _heisenberg,
    "gamma12": _gamma12,
    "stabilizer": _stabilizer,
    "theta": _theta,
    "fourier": _fourier,
    "bridge": _bridge,
}


def trial_rng(suite: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{suite}/{seed}/{trial}")


def run_trial(config: VerifyConfig, trial: int):
    rng = trial_rng(config.suite, config.seed, trial)
    check = SUITES[config.suite]
    with index_cap(config.index_cap):
        for _ in range(MAX_REDRAWS):
            try:
                return check(rng, config)
            except IndexOverflow:
                continue
    return False, {"status": "every draw exceeded the index cap"}


def run_suite(config: VerifyConfig) -> Report:
    passes, failures = 0, []
    for t in range(config.trials):
        ok, detail = run_trial(config, t)
        if ok:
            passes += 1
        else:
            failures.append({"trial": t, "status": "fail", **detail})
    return Report(config.suite, config.trials, passes, failures)


__all__ = ["VerifyConfig", "Report", "SUITES", "run_suite", "run_trial", "trial_rng"]
