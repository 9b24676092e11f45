"""3-cycle and 4-cycle densities in tournaments.

Generators for the extremal constructions, exact cycle counts, the conjectured
extremal curve ``g``, the skew-symmetric spectral decomposition of tournament
matrices and a solver for the spectrum relaxation.
"""
from .bounds import construction_point, g, invert_z, lower_envelope_lm, upper_envelope
from .core import (
    Tournament, TournamentMatrix, TournamentError, TRNFormatError,
    read_trn, to_matrix, validate, write_trn,
)
from .count import cycle_homs, density_report, enumerate_all, sigma, trans_density
from .spectral import eigs_normalized, extremality_test, reconstruct_sigma, skew_decompose
from .spopt import SpectrumInstance, min_over_rho, rho_min, solve_numeric, solve_structured

__version__ = "0.1.0"
