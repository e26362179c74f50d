"""Two-way qubit transfer through an open XY spin chain in a transverse field."""

from .chain import ChainConfig, FieldSign, QubitState, make_qubit, validate_config
from .evolution import DuplexAmplitudes, evolve_duplex, initial_state
from .exceptions import ConsistencyError, DomainError, DuplexChainError, ResourceError
from .fidelity import (DensityMatrix2x2, FidelityResult, end_fidelities, fidelity_closed_form,
                       fidelity_via_rho, reduced_density)
from .propagator import (ModeSpectrum, PropagatorMatrix, mode_spectrum, pair_amplitude,
                         propagator_matrix)
from .sweep import (End, Experiment, Grid, SearchResult, SweepSpec, SweepTable, TimeWindow,
                    fmax_search, run_sweep, sweep_length, sweep_phase, sweep_theta)

__version__ = "0.1.0"

__all__ = [
    "ChainConfig", "FieldSign", "QubitState", "make_qubit", "validate_config",
    "DuplexAmplitudes", "evolve_duplex", "initial_state",
    "ConsistencyError", "DomainError", "DuplexChainError", "ResourceError",
    "DensityMatrix2x2", "FidelityResult", "end_fidelities", "fidelity_closed_form",
    "fidelity_via_rho", "reduced_density",
    "ModeSpectrum", "PropagatorMatrix", "mode_spectrum", "pair_amplitude", "propagator_matrix",
    "End", "Experiment", "Grid", "SearchResult", "SweepSpec", "SweepTable", "TimeWindow",
    "fmax_search", "run_sweep", "sweep_length", "sweep_phase", "sweep_theta",
]
