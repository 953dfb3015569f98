"""Shared helpers for the test suite."""

import math

import pytest

from photonrouter import EmitterParams, RouterConfig, scattering_amplitudes


def amp_tuple(amps):
    return (
        amps.transmit_a,
        amps.reflect_a,
        amps.transfer_forward_b,
        amps.transfer_backward_b,
    )


def max_amp_gap(a, b):
    return max(abs(x - y) for x, y in zip(amp_tuple(a), amp_tuple(b)))


def adaptive_pulse_width(config, carrier, floor=50.0, safety=15.0):
    """Pulse width wide enough that spectrum averaging stays well inside a
    1 percent error budget: bounds the quadratic term of the probability
    curves over the pulse bandwidth via a finite-difference curvature."""
    gamma_min = min(config.emitter1.total_width, config.emitter2.total_width)
    d = min(gamma_min, 1.0 / (2.0 * config.delay + 1e-12), 0.5) / 50.0
    p0 = scattering_amplitudes(config, carrier).probabilities()
    pp = scattering_amplitudes(config, carrier + d).probabilities()
    pm = scattering_amplitudes(config, carrier - d).probabilities()
    curvature = max(abs(a + b - 2.0 * c) / d**2 for a, b, c in zip(pp, pm, p0))
    return max(floor / gamma_min, safety * math.sqrt(curvature))


@pytest.fixture
def unit_emitter():
    return EmitterParams(transition_frequency=20.0, decay_to_a=1.0, decay_to_b=1.0)


@pytest.fixture
def quarter_config(unit_emitter):
    """All decay rates 1, both emitters resonant at 20, 2kL/v = pi/2 at k=20."""
    return RouterConfig(unit_emitter, unit_emitter, separation=math.pi / 80.0)
