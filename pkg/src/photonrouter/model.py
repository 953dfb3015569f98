"""Closed-form single-photon routing model.

Two two-level emitters sit a distance ``L`` apart (at ``z = -L/2`` and
``z = +L/2``) and couple to the right- and left-moving modes of two
one-dimensional transmission lines, ``a`` and ``b``.  A single photon of
wavenumber ``k`` enters line ``a`` from the left and leaves through one of
four ports: transmitted in ``a``, reflected in ``a``, or transferred
forward/backward into ``b``.

Everything here is an elementary function of the emitter parameters.  The
photon picks up a phase shift ``theta_n = arctan((k - omega_n) / Gamma_n)``
at each emitter; interference between the direct and emitter-mediated paths
is governed by per-emitter factors ``S_n`` and ``T_n`` together with the
round-trip propagation phase ``exp(2ikL/v_g)``.  The four outgoing
amplitudes follow from summing the multiple-scattering series between the
two emitters, which leaves the common denominator
``1 - T1*T2*exp(2ikL/v_g)``.

All quantities are dimensionless: frequencies and decay rates in units of a
reference rate, lengths in units of ``v_g`` times the reference time.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import SingularDenominator, ValidationError

__all__ = [
    "SINGULAR_THRESHOLD",
    "EmitterParams",
    "RouterConfig",
    "InterferenceFactors",
    "ScatteringAmplitudes",
    "StandingWave",
    "phase_shift",
    "probe_for_phase_shift",
    "interference_factors",
    "scattering_amplitudes",
    "conservation_defect",
    "symmetric_closed_form",
    "symmetric_standing_wave_probabilities",
    "standing_wave_length",
]

# Below this denominator modulus the closed form is treated as singular: the
# amplitudes are a 0/0 limit there and the limit depends on the approach
# direction, so no value is returned.
SINGULAR_THRESHOLD = 1e-12


@dataclass(frozen=True, slots=True)
class EmitterParams:
    """One two-level emitter: transition frequency and its two decay rates.

    Parameters
    ----------
    transition_frequency : float
        Angular transition frequency (dimensionless units).
    decay_to_a, decay_to_b : float
        Nonnegative decay rates into lines ``a`` and ``b``.  Their sum, the
        total linewidth, must be positive: a fully decoupled emitter is not
        a valid scatterer.
    """

    transition_frequency: float
    decay_to_a: float
    decay_to_b: float

    def __post_init__(self):
        if not (self.decay_to_a >= 0.0):
            raise ValidationError(f"decay_to_a must be >= 0, got {self.decay_to_a}")
        if not (self.decay_to_b >= 0.0):
            raise ValidationError(f"decay_to_b must be >= 0, got {self.decay_to_b}")
        if not (self.decay_to_a + self.decay_to_b > 0.0):
            raise ValidationError(
                "total linewidth decay_to_a + decay_to_b must be > 0"
            )

    @property
    def total_width(self) -> float:
        """Total linewidth Gamma = decay_to_a + decay_to_b."""
        return self.decay_to_a + self.decay_to_b


@dataclass(frozen=True, slots=True)
class RouterConfig:
    """Full parameter set of the two-emitter router.

    The emitters are implicitly located at ``z = -separation/2`` (emitter 1)
    and ``z = +separation/2`` (emitter 2); the positions are not stored.
    """

    emitter1: EmitterParams
    emitter2: EmitterParams
    separation: float
    group_velocity: float = 1.0

    def __post_init__(self):
        if not (self.separation > 0.0):
            raise ValidationError(f"separation must be > 0, got {self.separation}")
        if not (self.group_velocity > 0.0):
            raise ValidationError(
                f"group_velocity must be > 0, got {self.group_velocity}"
            )

    @property
    def delay(self) -> float:
        """One-way propagation time separation / group_velocity."""
        return self.separation / self.group_velocity


@dataclass(frozen=True, slots=True)
class InterferenceFactors:
    """Per-emitter scattering factors at a fixed probe frequency.

    ``theta1``/``theta2`` are the reflected phase shifts, ``s1``/``s2`` the
    input-coupling factors, ``t1``/``t2`` the cross-emitter feedback factors
    and ``round_trip_phase`` is ``exp(2ikL/v_g)``, constructed directly from
    the angle so its modulus never drifts.
    """

    theta1: float
    theta2: float
    s1: complex
    s2: complex
    t1: complex
    t2: complex
    round_trip_phase: complex

    @property
    def denominator(self) -> complex:
        """Common interference denominator 1 - t1*t2*round_trip_phase."""
        return 1.0 - self.t1 * self.t2 * self.round_trip_phase


@dataclass(frozen=True, slots=True)
class ScatteringAmplitudes:
    """The four outgoing single-photon amplitudes for input from the left
    of line ``a``."""

    transmit_a: complex
    reflect_a: complex
    transfer_forward_b: complex
    transfer_backward_b: complex

    def probabilities(self) -> tuple[float, float, float, float]:
        """Routing probabilities (T_a, R_a, Tb_fwd, Tb_bwd)."""
        return (
            abs(self.transmit_a) ** 2,
            abs(self.reflect_a) ** 2,
            abs(self.transfer_forward_b) ** 2,
            abs(self.transfer_backward_b) ** 2,
        )


def phase_shift(probe_frequency: float, emitter: EmitterParams) -> float:
    """Phase shift imprinted on light scattered by one emitter.

    ``arctan((probe - omega) / Gamma)``: zero on resonance, strictly
    increasing in the probe frequency, confined to (-pi/2, pi/2).
    """
    return math.atan(
        (probe_frequency - emitter.transition_frequency) / emitter.total_width
    )


def probe_for_phase_shift(emitter: EmitterParams, theta: float) -> float:
    """Probe frequency at which ``emitter`` imprints phase shift ``theta``.

    Inverse of :func:`phase_shift`; requires ``|theta| < pi/2``.
    """
    if not abs(theta) < math.pi / 2:
        raise ValidationError(f"phase shift must lie in (-pi/2, pi/2), got {theta}")
    return emitter.transition_frequency + emitter.total_width * math.tan(theta)


def interference_factors(
    probe_frequency: float, config: RouterConfig
) -> InterferenceFactors:
    """Evaluate the interference building blocks at one probe frequency.

    For emitter ``n`` with total width ``Gamma_n``:

    * ``S_n = -sqrt(gamma_na) / Gamma_n * cos(theta_n) * exp(i theta_n)``
    * ``T_n = -(sqrt(gamma_1a*gamma_2a) + sqrt(gamma_1b*gamma_2b)) / Gamma_n
      * cos(theta_n) * exp(i theta_n)``

    together with the round-trip phase ``exp(2ikL/v_g)`` at ``k`` equal to
    the probe frequency.
    """
    e1, e2 = config.emitter1, config.emitter2
    g1, g2 = e1.total_width, e2.total_width
    th1 = phase_shift(probe_frequency, e1)
    th2 = phase_shift(probe_frequency, e2)
    lobe1 = math.cos(th1) * cmath.exp(1j * th1)
    lobe2 = math.cos(th2) * cmath.exp(1j * th2)
    cross = math.sqrt(e1.decay_to_a * e2.decay_to_a) + math.sqrt(
        e1.decay_to_b * e2.decay_to_b
    )
    angle = 2.0 * probe_frequency * config.separation / config.group_velocity
    return InterferenceFactors(
        theta1=th1,
        theta2=th2,
        s1=-math.sqrt(e1.decay_to_a) / g1 * lobe1,
        s2=-math.sqrt(e2.decay_to_a) / g2 * lobe2,
        t1=-cross / g1 * lobe1,
        t2=-cross / g2 * lobe2,
        round_trip_phase=complex(math.cos(angle), math.sin(angle)),
    )


def scattering_amplitudes(
    config: RouterConfig, wavenumber: float
) -> ScatteringAmplitudes:
    """Closed-form outgoing amplitudes for a photon of ``wavenumber``.

    The emitter-mediated contributions are resummed into a geometric series
    with denominator ``D = 1 - T1*T2*exp(2ikL/v_g)``.  In the transmitted
    numerators only the ``T1*S2`` path carries the round-trip phase (the
    ``T2*S1`` path closes on the upstream emitter, so its extra propagation
    cancels); in the reflected/backward numerators every two-emitter path
    carries it.  This asymmetry is what builds the standing-wave
    interference.

    Raises
    ------
    SingularDenominator
        If ``|D| <= 1e-12``.  At such points the amplitudes are a 0/0 form
        whose limit depends on the direction of approach in parameter
        space, so no value is defined.
    """
    f = interference_factors(wavenumber, config)
    phase = f.round_trip_phase
    den = 1.0 - f.t1 * f.t2 * phase
    if abs(den) <= SINGULAR_THRESHOLD:
        raise SingularDenominator(
            "interference denominator vanished "
            f"(|D|={abs(den):.3e}) at wavenumber={wavenumber!r}, "
            f"separation={config.separation!r}: amplitudes are undefined at "
            "the exact standing-wave resonance"
        )
    e1, e2 = config.emitter1, config.emitter2
    r1a, r1b = math.sqrt(e1.decay_to_a), math.sqrt(e1.decay_to_b)
    r2a, r2b = math.sqrt(e2.decay_to_a), math.sqrt(e2.decay_to_b)
    # Two-emitter path sums. "forward" collects paths whose last bounce is on
    # emitter 1 as seen from the right ports, "closing" those that close on
    # the upstream emitter; only the former carries the round-trip phase.
    forward = f.s1 + f.t1 * f.s2 * phase
    closing = f.s2 + f.t2 * f.s1
    return ScatteringAmplitudes(
        transmit_a=1.0 + (r1a * forward + r2a * closing) / den,
        reflect_a=(r1a * f.s1 + (r1a * f.t1 * f.s2 + r2a * closing) * phase) / den,
        transfer_forward_b=(r1b * forward + r2b * closing) / den,
        transfer_backward_b=(r1b * f.s1 + (r1b * f.t1 * f.s2 + r2b * closing) * phase)
        / den,
    )


def conservation_defect(amps: ScatteringAmplitudes) -> float:
    """Deviation of the summed routing probabilities from unity."""
    return abs(sum(amps.probabilities()) - 1.0)


def symmetric_closed_form(theta: float, beta: float) -> tuple[float, float]:
    """Routing on the symmetric standing-wave locus, in closed form.

    When both emitters imprint the same phase shift ``theta``, share the
    decay ratio ``beta = gamma_a / gamma_b`` and sit at a standing-wave
    separation, the backward channels close and the photon splits between
    forward transmission and forward transfer only:

    ``forward_transfer = 4*beta / (1 + beta)**2 * cos(theta)**2``

    Returns
    -------
    (transmission, forward_transfer)
        Probabilities summing to 1 exactly.
    """
    if not beta > 0.0:
        raise ValidationError(f"beta must be > 0, got {beta}")
    transfer = 4.0 * beta / (1.0 + beta) ** 2 * math.cos(theta) ** 2
    return 1.0 - transfer, transfer


def symmetric_standing_wave_probabilities(
    theta: float, beta: float
) -> tuple[float, float, float, float]:
    """All four routing probabilities on the symmetric standing-wave locus.

    The reflected and backward-transfer amplitudes vanish identically there
    (destructive interference of the left-moving waves from the two
    emitters), so this is :func:`symmetric_closed_form` padded with exact
    zeros, ordered (T_a, R_a, Tb_fwd, Tb_bwd).

    This closed form is also the well-defined value at the exact resonant
    standing-wave point (``theta = 0``), where the general formula in
    :func:`scattering_amplitudes` degenerates to 0/0 and raises.
    """
    transmission, transfer = symmetric_closed_form(theta, beta)
    return transmission, 0.0, transfer, 0.0


class StandingWave(NamedTuple):
    """Separation satisfying the standing-wave condition, plus the branch
    index actually used."""

    length: float
    branch: int


def standing_wave_length(
    wavenumber: float,
    theta1: float,
    theta2: float,
    branch: int = 1,
    group_velocity: float = 1.0,
) -> StandingWave:
    """Separation eliminating the backward-moving scattered waves.

    Solves ``2*k*L/v_g + theta1 + theta2 = 2*n*pi`` for ``L``.  If the
    requested branch ``n`` gives a nonpositive length, the smallest branch
    with ``L > 0`` is used instead; the branch actually applied is returned
    alongside the length.
    """
    if not wavenumber > 0.0:
        raise ValidationError(f"wavenumber must be > 0, got {wavenumber}")
    if branch < 0:
        raise ValidationError(f"branch must be >= 0, got {branch}")
    n = branch
    length = (2.0 * n * math.pi - theta1 - theta2) * group_velocity / (2.0 * wavenumber)
    if length <= 0.0:
        n = 0 if theta1 + theta2 < 0.0 else 1
        length = (
            (2.0 * n * math.pi - theta1 - theta2)
            * group_velocity
            / (2.0 * wavenumber)
        )
    return StandingWave(length=length, branch=n)
