"""Frequency-domain cross-check of the closed-form amplitudes.

Instead of resumming the multiple-scattering series, drive both emitters at
a fixed wavenumber and solve the coupled steady-state response as a 2x2
complex linear system:

    x1 = i*S1 + T1 * phase * x2
    x2 = i*S2 + T2 * x1

where ``phase = exp(2ikL/v_g)`` and ``x_n`` is the steady lowering-operator
amplitude of emitter ``n`` per unit input, referenced at the delayed
argument that enters the output relations.  The four outgoing amplitudes
are then assembled directly from the input-output relations.  Agreement
with :func:`photonrouter.model.scattering_amplitudes` is elementwise in the
complex amplitudes, not just in the probabilities, so any transcription
slip in the closed form (including its phase placement) would show up here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularSystem
from .model import RouterConfig, ScatteringAmplitudes, interference_factors

__all__ = [
    "SteadyStateSolution",
    "steady_state_solve",
    "amplitudes_from_steady_state",
    "steady_state_residual",
]

_DET_THRESHOLD = 1e-12


@dataclass(frozen=True, slots=True)
class SteadyStateSolution:
    """Steady emitter amplitudes per unit input at one wavenumber."""

    emitter_amplitude1: complex
    emitter_amplitude2: complex
    input_wavenumber: float


def steady_state_solve(
    config: RouterConfig,
    wavenumber: float,
    use_omega1_for_emitter2: bool = False,
) -> SteadyStateSolution:
    """Solve the coupled emitter response at ``wavenumber``.

    The system matrix is ``[[1, -T1*phase], [-T2, 1]]`` with right-hand side
    ``(i*S1, i*S2)``; its determinant ``1 - T1*T2*phase`` is exactly the
    interference denominator of the closed form.  The 2x2 system is solved
    by direct elimination with the analytically expanded determinant.

    Parameters
    ----------
    use_omega1_for_emitter2 : bool
        Comparison mode: evaluate emitter 2's response as if it precessed
        at emitter 1's transition frequency.  Off by default.

    Raises
    ------
    SingularSystem
        If the determinant modulus is at or below 1e-12 (the same physical
        condition as the closed form's singular denominator).
    """
    f = interference_factors(wavenumber, config)
    s2, t2 = f.s2, f.t2
    if use_omega1_for_emitter2:
        # Re-evaluate emitter 2's resonance response as if it precessed at
        # emitter 1's transition frequency.
        e1, e2 = config.emitter1, config.emitter2
        th2 = math.atan((wavenumber - e1.transition_frequency) / e2.total_width)
        lobe2 = math.cos(th2) * complex(math.cos(th2), math.sin(th2))
        cross = math.sqrt(e1.decay_to_a * e2.decay_to_a) + math.sqrt(
            e1.decay_to_b * e2.decay_to_b
        )
        s2 = -math.sqrt(e2.decay_to_a) / e2.total_width * lobe2
        t2 = -cross / e2.total_width * lobe2
    phase = f.round_trip_phase
    det = 1.0 - f.t1 * t2 * phase
    if abs(det) <= _DET_THRESHOLD:
        raise SingularSystem(
            f"steady-state system is singular (|det|={abs(det):.3e}) at "
            f"wavenumber={wavenumber!r}, separation={config.separation!r}"
        )
    b1 = 1j * f.s1
    b2 = 1j * s2
    return SteadyStateSolution(
        emitter_amplitude1=(b1 + f.t1 * phase * b2) / det,
        emitter_amplitude2=(b2 + t2 * b1) / det,
        input_wavenumber=wavenumber,
    )


def amplitudes_from_steady_state(
    solution: SteadyStateSolution, config: RouterConfig
) -> ScatteringAmplitudes:
    """Assemble the four outgoing amplitudes from emitter amplitudes.

    Right-moving outputs collect the pass-through term plus ``-i*sqrt(gamma)``
    times each emitter amplitude; left-moving outputs pick up the round-trip
    phase on the downstream emitter's contribution (the convention that
    keeps the reflected amplitudes elementwise equal to the closed form).
    """
    e1, e2 = config.emitter1, config.emitter2
    r1a, r1b = math.sqrt(e1.decay_to_a), math.sqrt(e1.decay_to_b)
    r2a, r2b = math.sqrt(e2.decay_to_a), math.sqrt(e2.decay_to_b)
    k = solution.input_wavenumber
    angle = 2.0 * k * config.separation / config.group_velocity
    phase = complex(math.cos(angle), math.sin(angle))
    x1 = solution.emitter_amplitude1
    x2 = solution.emitter_amplitude2
    return ScatteringAmplitudes(
        transmit_a=1.0 - 1j * r1a * x1 - 1j * r2a * x2,
        reflect_a=-1j * r1a * x1 - 1j * r2a * phase * x2,
        transfer_forward_b=-1j * r1b * x1 - 1j * r2b * x2,
        transfer_backward_b=-1j * r1b * x1 - 1j * r2b * phase * x2,
    )


def steady_state_residual(
    solution: SteadyStateSolution, config: RouterConfig
) -> float:
    """Largest residual of the two steady-state relations at the solution.

    Substitutes the amplitudes back into ``x1 - i*S1 - T1*phase*x2`` and
    ``x2 - i*S2 - T2*x1``; a correct solve leaves only rounding noise.
    """
    f = interference_factors(solution.input_wavenumber, config)
    x1, x2 = solution.emitter_amplitude1, solution.emitter_amplitude2
    r1 = x1 - 1j * f.s1 - f.t1 * f.round_trip_phase * x2
    r2 = x2 - 1j * f.s2 - f.t2 * x1
    return max(abs(r1), abs(r2))
