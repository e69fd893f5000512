"""Optimized configuration interaction for two contact-interacting bosons in 1D traps."""
from .exceptions import (BosonCIError, BracketError, ConfigurationError, NumericalError,
                         UnsupportedError)
from .grid import Grid
from .hamiltonian import PairBasis, ProblemSpec, assemble, interaction_tensor, trace_of_truncation
from .ho_basis import BasisSet, gauss_hermite, ho_eval, kinetic_matrix, potential_matrix
from .orbitals import (entanglement_entropy, one_body_density, orbital_eval, pair_density,
                       schmidt)
from .potentials import (PotentialSpec, evaluate, from_config, make_double_well,
                         make_harmonic, make_triple_well)
from .solver import OmegaSearchConfig, SpectrumResult, diagonalize, optimize_omega, solve

__version__ = "0.1.0"

__all__ = [
    "BasisSet", "BosonCIError", "BracketError", "ConfigurationError", "Grid",
    "NumericalError", "OmegaSearchConfig", "PairBasis", "PotentialSpec", "ProblemSpec",
    "SpectrumResult", "UnsupportedError", "assemble", "diagonalize", "entanglement_entropy",
    "evaluate", "from_config", "gauss_hermite", "ho_eval", "interaction_tensor",
    "kinetic_matrix", "make_double_well", "make_harmonic", "make_triple_well",
    "one_body_density", "optimize_omega", "orbital_eval", "pair_density",
    "potential_matrix", "schmidt", "solve", "trace_of_truncation",
]
