"""Single-photon routing by two distant two-level emitters on two lines.

The closed-form model lives in :mod:`photonrouter.model`; two independent
cross-checks (a frequency-domain steady-state solve and a time-domain
delayed-wavepacket simulation) live in :mod:`photonrouter.steady_state`
and :mod:`photonrouter.pulse`; parameter sweeps and canned figure datasets
in :mod:`photonrouter.sweep`; the command-line interface in
:mod:`photonrouter.cli`.
"""

from .errors import (
    InvalidAxisMapping,
    ParseError,
    SingularDenominator,
    SingularSystem,
    StepTooLarge,
    TraceTruncated,
    UnresolvedDelay,
    ValidationError,
)
from .model import (
    EmitterParams,
    InterferenceFactors,
    RouterConfig,
    ScatteringAmplitudes,
    StandingWave,
    conservation_defect,
    interference_factors,
    phase_shift,
    probe_for_phase_shift,
    scattering_amplitudes,
    standing_wave_length,
    symmetric_closed_form,
    symmetric_standing_wave_probabilities,
)
from .pulse import (
    PulseSpec,
    TimeTrace,
    default_duration,
    default_pulse,
    default_time_step,
    energy_defect,
    extract_probabilities,
    simulate_pulse,
)
from .steady_state import (
    SteadyStateSolution,
    amplitudes_from_steady_state,
    steady_state_residual,
    steady_state_solve,
)
from .sweep import (
    AxisSpec,
    CellResult,
    FigureDataset,
    find_optimal_distance,
    grid_sweep,
    reproduce_figure,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "CellResult",
    "EmitterParams",
    "FigureDataset",
    "InterferenceFactors",
    "InvalidAxisMapping",
    "ParseError",
    "PulseSpec",
    "RouterConfig",
    "ScatteringAmplitudes",
    "SingularDenominator",
    "SingularSystem",
    "StandingWave",
    "SteadyStateSolution",
    "StepTooLarge",
    "TimeTrace",
    "TraceTruncated",
    "UnresolvedDelay",
    "ValidationError",
    "amplitudes_from_steady_state",
    "conservation_defect",
    "default_duration",
    "default_pulse",
    "default_time_step",
    "energy_defect",
    "extract_probabilities",
    "find_optimal_distance",
    "grid_sweep",
    "interference_factors",
    "phase_shift",
    "probe_for_phase_shift",
    "reproduce_figure",
    "scattering_amplitudes",
    "simulate_pulse",
    "standing_wave_length",
    "steady_state_residual",
    "steady_state_solve",
    "symmetric_closed_form",
    "symmetric_standing_wave_probabilities",
]
