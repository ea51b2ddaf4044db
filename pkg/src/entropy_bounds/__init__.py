"""Entropy continuity bounds for energy-constrained states.

Gibbs states and the maximum-entropy curve, the Alicki-Fannes-Winter
coupling, three continuity bounds, and a numerical search for the energy at
which a bounded-energy orthonormal basis would contradict the entropy bound.
"""

from .afw import (AfwCoupling, OmegaStructure, build_coupling, check_prop1, delta_energy,
                  omega_entropy, omega_structure)
from .bounds import (BoundReport, audenaert_bound, compare_bounds, mixture_bound,
                     mixture_bound_via_basis, winter_bound)
from .contradiction import ContradictionCertificate, find_contradiction_energy, theorem4_report
from .errors import (EnergyOutOfRange, EntropyBoundsError, HypothesisViolation, InvalidArgument,
                     InvariantViolation, NumericFailure, ParseError, ThresholdNotReached,
                     TruncationLimit)
from .maxent import (EntropyCurve, ThermalSolve, gamma_entropy, gamma_entropy_curve,
                     gibbs_state, thermal_for_energy)
from .spectra import (Spectrum, TailModel, check_gibbs_summable, dump_spectrum, from_levels,
                      harmonic_oscillator, load_spectrum, power_law)
from .states import (DenseState, SpectralState, binary_entropy, energy, hermitian_eigenvalues,
                     trace_distance_dense, trace_distance_spectral, von_neumann_entropy_dense,
                     von_neumann_entropy_spectral)

__version__ = "0.1.0"


__all__ = [
    "AfwCoupling",
    "audenaert_bound",
    "binary_entropy",
    "BoundReport",
    "build_coupling",
    "check_gibbs_summable",
    "check_prop1",
    "compare_bounds",
    "ContradictionCertificate",
    "delta_energy",
    "DenseState",
    "dump_spectrum",
    "energy",
    "EnergyOutOfRange",
    "EntropyBoundsError",
    "EntropyCurve",
    "find_contradiction_energy",
    "from_levels",
    "gamma_entropy",
    "gamma_entropy_curve",
    "gibbs_state",
    "harmonic_oscillator",
    "hermitian_eigenvalues",
    "HypothesisViolation",
    "InvalidArgument",
    "InvariantViolation",
    "load_spectrum",
    "mixture_bound",
    "mixture_bound_via_basis",
    "NumericFailure",
    "omega_entropy",
    "omega_structure",
    "OmegaStructure",
    "ParseError",
    "power_law",
    "SpectralState",
    "Spectrum",
    "TailModel",
    "theorem4_report",
    "thermal_for_energy",
    "ThermalSolve",
    "ThresholdNotReached",
    "trace_distance_dense",
    "trace_distance_spectral",
    "TruncationLimit",
    "von_neumann_entropy_dense",
    "von_neumann_entropy_spectral",
    "winter_bound",
]
