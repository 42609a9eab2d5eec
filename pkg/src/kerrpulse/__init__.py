"""kerrpulse: compile Fock-superposition targets into N-pulse laser
sequences on a Kerr-nonlinear cavity and verify them by simulation."""

from .compiler import (
    CompileLog,
    Pulse,
    PulseRecord,
    PulseSequence,
    TargetState,
    compile_sequence,
    decompile_check,
)
from .errors import (
    ContractViolationError,
    InternalConsistencyError,
    IntegrationResolutionError,
    InvalidDimensionError,
    InvalidStateError,
    JobSpecError,
    KerrPulseError,
    NormalizationError,
)
from .fock import (
    HamiltonianParams,
    build_hamiltonian,
    fidelity,
    fock_state,
    kerr_phase_compensation,
    propagate_const,
    pulse_frame_hamiltonian,
    vacuum_state,
)
from .lindblad import (
    LossConfig,
    evolve_lindblad_free,
    evolve_lindblad_sequence,
    mean_photon_number,
    pure_density,
)
from .simulate import (
    SimConfig,
    SimReport,
    evolve_full_sequence,
    evolve_rwa_pulse,
    evolve_rwa_sequence,
    rwa_error_sweep,
)

__all__ = [
    "CompileLog", "Pulse", "PulseRecord", "PulseSequence", "TargetState",
    "compile_sequence", "decompile_check",
    "HamiltonianParams", "build_hamiltonian", "fidelity", "fock_state",
    "kerr_phase_compensation", "propagate_const", "pulse_frame_hamiltonian",
    "vacuum_state",
    "SimConfig", "SimReport", "evolve_full_sequence", "evolve_rwa_pulse",
    "evolve_rwa_sequence", "rwa_error_sweep",
    "LossConfig", "evolve_lindblad_free", "evolve_lindblad_sequence",
    "mean_photon_number", "pure_density",
    "KerrPulseError", "InvalidDimensionError", "ContractViolationError",
    "InvalidStateError", "NormalizationError", "InternalConsistencyError",
    "IntegrationResolutionError", "JobSpecError",
]

__version__ = "0.1.0"
