"""Exact correlation dynamics for two qubits in lossy cavities.

Two non-interacting qubits, each in its own zero-temperature reservoir with
a Lorentzian spectrum, lose quantum discord, classical correlation, and
entanglement at rates set by a single decoherence function.  A bang-bang
train of ideal pi pulses reshapes that function and thereby protects the
correlations.  This package computes the exact dynamics, locates sudden
changes and entanglement sudden death, and reproduces the standard figure
sweeps through a CLI.
"""

from .correlations import (
    Branch,
    CorrelationReport,
    MeasurementBasis,
    classical_correlation_oracle,
    concurrence_general,
    concurrence_x,
    discord_x_closed,
    mutual_information,
    von_neumann_entropy,
)
from .decoherence import (
    DecoherenceGrid,
    PulseSchedule,
    Regime,
    ReservoirParams,
    amplitude,
    discord_zero_times,
    memory_kernel,
    pt_analytic,
    pt_numeric,
    pulse_train_coefficients,
)
from .detect import (
    EsdResult,
    EventList,
    Trajectory,
    find_discord_zeros,
    find_esd,
    find_events,
    find_sudden_changes,
    simulate_trajectory,
)
from .errors import DomainError
from .evolution import (
    BellDiagonalParams,
    XState,
    bell_diagonal_state,
    evolve,
    evolve_bd,
    validate_state,
    werner_state,
)

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "BellDiagonalParams",
    "CorrelationReport",
    "DecoherenceGrid",
    "DomainError",
    "EsdResult",
    "EventList",
    "MeasurementBasis",
    "PulseSchedule",
    "Regime",
    "ReservoirParams",
    "Trajectory",
    "XState",
    "amplitude",
    "bell_diagonal_state",
    "classical_correlation_oracle",
    "concurrence_general",
    "concurrence_x",
    "discord_x_closed",
    "discord_zero_times",
    "evolve",
    "evolve_bd",
    "find_discord_zeros",
    "find_esd",
    "find_events",
    "find_sudden_changes",
    "memory_kernel",
    "mutual_information",
    "pt_analytic",
    "pt_numeric",
    "pulse_train_coefficients",
    "simulate_trajectory",
    "validate_state",
    "von_neumann_entropy",
    "werner_state",
    "__version__",
]
