"""Exact rational model of the Weil representation of Sp(2n, Q).

Lattices in Q^n, the finite function spaces M(L|K), the Heisenberg action,
the Weil operators with their generator factorization, the bridge to theta
series, and congruence-subgroup invariance.
"""

from .bridge import (
    GaussianSpec,
    ModularityReport,
    PoissonDistribution,
    SiegelPoint,
    modularity_check,
    pair_poisson_gaussian,
    standard_theta,
    t_half_transform,
    theta,
    theta_with_bound,
)
from .bruhat import MElement, add, delta, evaluate, indicator, pairing, parity, projective_equal, refine, scale, space_pair, support_lattice, zero
from .congruence import CongruenceSpec, delta_normalized_apply, level_of, membership, sample_generators, stabilizer_level
from .errors import *  # noqa: F403
from .heisenberg import FiniteHeisDescriptor, HeisElement, commutant_dimension, heis_act, heis_inv, heis_mul
from .lattice import (
    LatticePair,
    QLattice,
    adapted_basis,
    contains,
    coset_reps,
    dual_lattice,
    generalized_index,
    haar_volume,
    index_cap,
    is_sublattice,
    lattice_from_generators,
    lattice_intersect,
    lattice_sum,
    lattice_transform,
    standard_lattice,
)
from .scalars import CycloScalar, NormFactor, Scalar, cyclo, cyclo_unit
from .verify import VerifyConfig, run_suite
from .weil import Dilate, FourierJ, GeneratorWord, Quad, SpMatrix, covariance_check, sigma_act, sp_factor, weil_apply, weil_dilate, weil_fourier, weil_quad

__version__ = "0.1.0"
