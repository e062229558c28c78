"""Lindblad simulator for a self-contained three-qubit absorption refrigerator."""

from .bath import BathSpec, OccupationResult, decay_rate, occupation, spectral_density
from .dynamics import (
    Trajectory,
    evolve,
    initial_product_gibbs,
    slowest_rate,
    steady_state,
    validate_density_matrix,
)
from .errors import (
    ConfigError,
    DegenerateSteadyStateError,
    DegenerateTransitionError,
    SeriesConvergenceError,
    SolverError,
)
from .liouvillian import (
    GeneratorMatrix,
    JumpChannel,
    bohr_frequencies,
    build_generator,
    build_jump_channels,
    dissipator_apply,
)
from .observables import (
    LocalTemperature,
    ThermoReadout,
    cop,
    heat_current,
    local_temperature,
    reduced_qubit,
    thermo_readout,
    virtual_temperature,
)
from .operators import (
    RefrigeratorSpec,
    Spectrum,
    build_free_hamiltonian,
    build_hamiltonian,
    build_interaction,
    diagonalize,
    local_pauli_x,
)

__version__ = "0.1.0"

__all__ = [
    "BathSpec",
    "ConfigError",
    "DegenerateSteadyStateError",
    "DegenerateTransitionError",
    "GeneratorMatrix",
    "JumpChannel",
    "LocalTemperature",
    "OccupationResult",
    "RefrigeratorSpec",
    "SeriesConvergenceError",
    "SolverError",
    "Spectrum",
    "ThermoReadout",
    "Trajectory",
    "bohr_frequencies",
    "build_free_hamiltonian",
    "build_generator",
    "build_hamiltonian",
    "build_interaction",
    "build_jump_channels",
    "cop",
    "decay_rate",
    "diagonalize",
    "dissipator_apply",
    "evolve",
    "heat_current",
    "initial_product_gibbs",
    "local_pauli_x",
    "local_temperature",
    "occupation",
    "reduced_qubit",
    "slowest_rate",
    "spectral_density",
    "steady_state",
    "thermo_readout",
    "validate_density_matrix",
    "virtual_temperature",
]
