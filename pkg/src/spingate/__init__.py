"""Simulator of single-pulse CONTROL-NOT gate dynamics in a four-spin Ising
register, with deviation diagnostics for off-resonant effects."""

from ._backend import backend_name
from .evolve import (
    EvolutionConfig,
    Trajectory,
    apply_cn_pulse,
    exact_propagate,
    integrate,
    pi_pulse_duration,
)
from .metrics import (
    DeviationReport,
    amplitude_deviation,
    deviation_report,
    expected_final,
    ideal_cn_unitary,
    phase_deviation,
    summarize,
)
from .model import (
    SystemParams,
    basis_energy,
    drive_potential_lab,
    interaction_potential,
    resonant_drive_frequency,
    rotating_frame,
    static_hamiltonian,
)
from .operators import SpinAxis, commutator, hermitian_exponential, kron, single_spin_operator
from .states import (
    extract_block,
    initial_state,
    phase_dressed_rdm,
    prepared_deviation,
    rdm_from_pure,
    thermal_density,
)
from .sweeps import SweepRow, SweepSpec, find_critical, run_single, run_sweep

__version__ = "0.1.0"

__all__ = [
    "EvolutionConfig",
    "Trajectory",
    "SweepRow",
    "SweepSpec",
    "SystemParams",
    "SpinAxis",
    "DeviationReport",
    "amplitude_deviation",
    "apply_cn_pulse",
    "backend_name",
    "basis_energy",
    "commutator",
    "deviation_report",
    "drive_potential_lab",
    "exact_propagate",
    "expected_final",
    "extract_block",
    "find_critical",
    "hermitian_exponential",
    "ideal_cn_unitary",
    "initial_state",
    "integrate",
    "interaction_potential",
    "kron",
    "phase_deviation",
    "phase_dressed_rdm",
    "pi_pulse_duration",
    "prepared_deviation",
    "rdm_from_pure",
    "resonant_drive_frequency",
    "rotating_frame",
    "run_single",
    "run_sweep",
    "single_spin_operator",
    "static_hamiltonian",
    "summarize",
    "thermal_density",
]
