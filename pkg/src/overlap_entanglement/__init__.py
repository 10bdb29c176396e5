"""Entanglement between two qubit ensembles dissipating into overlapping environments.

Closed-form coefficient dynamics and negativities for a single initial
excitation, plus a brute-force Lindblad reference path to check them.
"""

__version__ = "0.1.0"

from .core import (
    ConfigError,
    EnsembleConfig,
    ExcitationCase,
    QubitLayout,
    subspace_dim_bound,
    validate_config,
)
from .dynamics import (
    CoefficientVector,
    ReducedBipartiteState,
    coeff_closed,
    coeff_closed_common,
    coeff_closed_side,
    coeff_rhs_common,
    coeff_rhs_side,
    expand_reduced_state,
    reduced_state,
    reduced_state_common,
    reduced_state_side,
)
from .negativity import (
    PTBlockSpectrum,
    argmax_over_N,
    negativity,
    negativity_common,
    negativity_from_spectrum,
    negativity_side,
    pt_spectrum,
    pt_spectrum_common,
    pt_spectrum_side,
    stationary_negativity,
    stationary_negativity_common,
    stationary_negativity_side,
)
from .numerics import rk4_integrate, symmetric_eigenvalues
from .oracle import evolve_full, oracle_negativity
