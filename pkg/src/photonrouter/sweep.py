"""Parameter sweeps: grid evaluation, figure datasets, optimal spacing.

Grids are evaluated cell by cell through the closed-form model; cells that
land exactly on the singular standing-wave resonance are flagged rather
than fatal.  Datasets render to CSV deterministically (shortest
round-trip float formatting), so identical inputs give byte-identical
files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

from .errors import InvalidAxisMapping, SingularDenominator, ValidationError
from .model import (
    EmitterParams,
    RouterConfig,
    conservation_defect,
    probe_for_phase_shift,
    scattering_amplitudes,
)

__all__ = [
    "AxisSpec",
    "CellResult",
    "FigureDataset",
    "grid_sweep",
    "standing_wave_locus_mapping",
    "reproduce_figure",
    "find_optimal_distance",
    "FIGURE_IDS",
]

AXIS_NAMES = ("theta", "L", "k", "omega2", "beta")

FIGURE_IDS = (
    "fig2a",
    "fig2b",
    "fig3a",
    "fig3b",
    "fig4a",
    "fig4b",
    "fig5a",
    "fig5b",
)

# Baked-in figure conventions: resonance frequency, unit decay into line a,
# and unit group velocity.
_OMEGA_DEFAULT = 20.0


@dataclass(frozen=True, slots=True)
class AxisSpec:
    """One linear sweep axis."""

    name: str
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValidationError(
                f"axis name must be one of {AXIS_NAMES}, got {self.name!r}"
            )
        if not self.start < self.stop:
            raise ValidationError(
                f"axis start must be < stop, got [{self.start}, {self.stop}]"
            )
        if self.count < 2:
            raise ValidationError(f"axis count must be >= 2, got {self.count}")
        if self.scale != "linear":
            raise ValidationError(f"unsupported axis scale {self.scale!r}")

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count)]


class CellResult(NamedTuple):
    """Routing probabilities and conservation defect at one grid point."""

    T_a: float
    R_a: float
    Tb_fwd: float
    Tb_bwd: float
    defect: float
    singular: bool


Mapping = Callable[[RouterConfig, dict[str, float]], tuple[RouterConfig, float]]


@dataclass(frozen=True)
class FigureDataset:
    """Gridded sweep results with axis metadata.

    ``cells`` is a flat tuple for one axis and a tuple of rows (outer axis
    first) for two.  ``value_key`` names the headline quantity used as the
    value column of two-dimensional CSV output.
    """

    axes: tuple[AxisSpec, ...]
    cells: tuple
    value_key: str = "Tb_fwd"
    provenance: dict = field(default_factory=dict)

    def cell(self, *indices: int) -> CellResult:
        out = self.cells
        for i in indices:
            out = out[i]
        return out

    def iter_cells(self):
        if len(self.axes) <= 1:
            yield from self.cells
        else:
            for row in self.cells:
                yield from row

    def to_csv(self) -> str:
        """Render the dataset: 1-D as per-channel columns, 2-D long form."""
        if len(self.axes) <= 1:
            xs = self.axes[0].values() if self.axes else [0.0]
            lines = ["x,T_a,R_a,Tb_fwd,Tb_bwd,defect"]
            for x, c in zip(xs, self.cells):
                lines.append(
                    f"{x!r},{c.T_a!r},{c.R_a!r},{c.Tb_fwd!r},{c.Tb_bwd!r},{c.defect!r}"
                )
        else:
            xs = self.axes[0].values()
            ys = self.axes[1].values()
            key = CellResult._fields.index(self.value_key)
            lines = ["x,y,value,defect"]
            for x, row in zip(xs, self.cells):
                for y, c in zip(ys, row):
                    lines.append(f"{x!r},{y!r},{c[key]!r},{c.defect!r}")
        return "\n".join(lines) + "\n"


def _evaluate(config: RouterConfig, wavenumber: float) -> CellResult:
    try:
        amps = scattering_amplitudes(config, wavenumber)
    except SingularDenominator:
        nan = float("nan")
        return CellResult(nan, nan, nan, nan, nan, True)
    t_a, r_a, tb_f, tb_b = amps.probabilities()
    return CellResult(t_a, r_a, tb_f, tb_b, conservation_defect(amps), False)


def _default_mapping(template: RouterConfig, point: dict[str, float]):
    """Resolve named axis values into a config and probe wavenumber.

    Parameter axes are applied first (``beta``, ``omega2``, ``L``), then the
    probe is fixed by ``k`` directly or by ``theta`` through the phase-shift
    inversion on emitter 1.
    """
    e1, e2 = template.emitter1, template.emitter2
    sep = template.separation
    if "beta" in point:
        beta = point["beta"]
        if beta <= 0.0:
            raise InvalidAxisMapping(f"beta must be > 0, got {beta}")
        e1 = EmitterParams(e1.transition_frequency, 1.0, 1.0 / beta)
        e2 = EmitterParams(e2.transition_frequency, 1.0, 1.0 / beta)
    if "omega2" in point:
        e2 = EmitterParams(point["omega2"], e2.decay_to_a, e2.decay_to_b)
    if "L" in point:
        sep = point["L"]
    config = RouterConfig(e1, e2, sep, template.group_velocity)
    if "k" in point:
        return config, point["k"]
    if "theta" in point:
        return config, probe_for_phase_shift(config.emitter1, point["theta"])
    return config, None


def grid_sweep(
    template: RouterConfig,
    axes: Sequence[AxisSpec],
    mapping: Mapping | None = None,
    wavenumber: float | None = None,
    value_key: str = "Tb_fwd",
    provenance: dict | None = None,
) -> FigureDataset:
    """Evaluate the routing probabilities over a 0-, 1- or 2-axis grid.

    Without a custom ``mapping``, axis names are interpreted by
    :func:`_default_mapping`; the probe wavenumber must then come from a
    ``k`` or ``theta`` axis or the ``wavenumber`` argument.  A custom
    mapping receives ``(template, {axis_name: value})`` and returns the
    resolved ``(config, wavenumber)`` for that cell.
    """
    if len(axes) > 2:
        raise InvalidAxisMapping("at most two sweep axes are supported")
    names = [ax.name for ax in axes]
    if len(set(names)) != len(names):
        raise InvalidAxisMapping(f"duplicate axis names: {names}")
    if mapping is None and "k" in names and "theta" in names:
        raise InvalidAxisMapping("axes k and theta both fix the probe")
    resolve = mapping if mapping is not None else _default_mapping

    def run_cell(point: dict[str, float]) -> CellResult:
        try:
            config, k = resolve(template, point)
        except (ValidationError, InvalidAxisMapping) as exc:
            raise InvalidAxisMapping(
                f"axis point {point} does not resolve to a valid configuration: {exc}"
            ) from exc
        if k is None:
            k = wavenumber
        if k is None:
            raise InvalidAxisMapping(
                "no probe wavenumber: provide a k/theta axis or the "
                "wavenumber argument"
            )
        return _evaluate(config, k)

    if not axes:
        cells: tuple = (run_cell({}),)
    elif len(axes) == 1:
        name = axes[0].name
        cells = tuple(run_cell({name: v}) for v in axes[0].values())
    else:
        n0, n1 = axes[0].name, axes[1].name
        inner = axes[1].values()
        cells = tuple(
            tuple(run_cell({n0: v0, n1: v1}) for v1 in inner)
            for v0 in axes[0].values()
        )
    return FigureDataset(
        axes=tuple(axes),
        cells=cells,
        value_key=value_key,
        provenance=provenance or {},
    )


def standing_wave_locus_mapping(branch: int = 1) -> Mapping:
    """Mapping for theta sweeps that re-solves the standing-wave separation
    at every point, so the whole sweep rides the interference ridge."""
    from .model import standing_wave_length

    def resolve(template: RouterConfig, point: dict[str, float]):
        config, k = _default_mapping(template, {n: v for n, v in point.items() if n != "L"})
        theta = point.get("theta", 0.0)
        if k is None:
            raise InvalidAxisMapping("locus mapping needs a theta or k axis")
        length = standing_wave_length(
            k, theta, theta, branch, template.group_velocity
        ).length
        return (
            RouterConfig(
                config.emitter1, config.emitter2, length, config.group_velocity
            ),
            k,
        )

    return resolve


def _symmetric_template(beta: float, omega: float = _OMEGA_DEFAULT) -> RouterConfig:
    emitter = EmitterParams(omega, 1.0, 1.0 / beta)
    return RouterConfig(emitter, emitter, separation=1.0)


def reproduce_figure(figure_id: str) -> FigureDataset:
    """Regenerate one of the routing datasets with baked-in parameters.

    * ``fig2a``/``fig2b``: forward transfer over (phase shift, separation)
      for decay ratio 1 and 3, symmetric phase shifts.  The separation axis
      is expressed in resonance wavelength units aligned with the
      standing-wave ridge: a cell at (theta, ell) uses the absolute
      separation ``(2*pi*ell - theta) * v_g / k`` so the ridge sits exactly
      on the rows ell = n/2.
    * ``fig3a``: all four probabilities against separation (wavelength
      units) at symmetric phase shift 0.2.
    * ``fig3b``: forward transfer against wavenumber for several
      sub-half-wavelength separations.
    * ``fig4a``/``fig4b``: transmission over (phase shift, separation) for
      antisymmetric phase shifts (emitter 2 detuned opposite to emitter 1).
    * ``fig5a``: probabilities against separation in the antisymmetric
      arrangement at phase shift 0.2.
    * ``fig5b``: transmission against wavenumber for several emitter-2
      frequencies, separation locked to ``4*pi*v_g/(omega1+omega2)``.
    """
    if figure_id not in FIGURE_IDS:
        raise ValidationError(f"unknown figure id {figure_id!r}")
    omega = _OMEGA_DEFAULT
    if figure_id in ("fig2a", "fig2b"):
        beta = 1.0 if figure_id == "fig2a" else 3.0
        template = _symmetric_template(beta)
        gamma = template.emitter1.total_width

        def resolve(tpl: RouterConfig, point: dict[str, float]):
            theta = point["theta"]
            ell = point["L"]
            k = omega + gamma * math.tan(theta)
            sep = (2.0 * math.pi * ell - theta) * tpl.group_velocity / k
            return (
                RouterConfig(tpl.emitter1, tpl.emitter2, sep, tpl.group_velocity),
                k,
            )

        axes = [
            AxisSpec("theta", -1.25, 1.25, 201),
            AxisSpec("L", 0.25, 1.25, 201),
        ]
        return grid_sweep(
            template,
            axes,
            mapping=resolve,
            value_key="Tb_fwd",
            provenance={
                "figure": figure_id,
                "beta": beta,
                "omega1": omega,
                "omega2": omega,
                "probe": "k = omega1 + Gamma*tan(theta), theta1 = theta2 = theta",
                "separation": "L = (2*pi*ell - theta)*v_g/k, ridge at ell = n/2",
            },
        )
    if figure_id in ("fig4a", "fig4b"):
        beta = 1.0 if figure_id == "fig4a" else 3.0
        template = _symmetric_template(beta)
        gamma = template.emitter1.total_width

        def resolve(tpl: RouterConfig, point: dict[str, float]):
            theta = point["theta"]
            ell = point["L"]
            k = omega + gamma * math.tan(theta)
            omega2 = k + gamma * math.tan(theta)  # theta2 = -theta at probe k
            e2 = EmitterParams(omega2, tpl.emitter2.decay_to_a, tpl.emitter2.decay_to_b)
            sep = ell * 2.0 * math.pi * tpl.group_velocity / k
            return RouterConfig(tpl.emitter1, e2, sep, tpl.group_velocity), k

        axes = [
            AxisSpec("theta", -1.25, 1.25, 201),
            AxisSpec("L", 0.25, 1.25, 201),
        ]
        return grid_sweep(
            template,
            axes,
            mapping=resolve,
            value_key="T_a",
            provenance={
                "figure": figure_id,
                "beta": beta,
                "omega1": omega,
                "probe": "k = omega1 + Gamma*tan(theta); omega2 = k + Gamma*tan(theta)"
                " so theta1 = -theta2 = theta",
                "separation": "L = ell*lambda(k), antisymmetric ridge at ell = n/2",
            },
        )
    if figure_id == "fig3a":
        theta = 0.2
        template = _symmetric_template(1.0)
        k = probe_for_phase_shift(template.emitter1, theta)
        lam = 2.0 * math.pi * template.group_velocity / k

        def resolve(tpl: RouterConfig, point: dict[str, float]):
            sep = point["L"] * lam
            return RouterConfig(tpl.emitter1, tpl.emitter2, sep, tpl.group_velocity), k

        axes = [AxisSpec("L", 0.0015, 1.5, 1001)]
        return grid_sweep(
            template,
            axes,
            mapping=resolve,
            value_key="Tb_fwd",
            provenance={
                "figure": figure_id,
                "beta": 1.0,
                "omega1": omega,
                "omega2": omega,
                "theta": theta,
                "probe": k,
                "separation": "axis in wavelength units, L = x*lambda(k)",
            },
        )
    if figure_id == "fig3b":
        template = _symmetric_template(1.0)
        lam1 = 2.0 * math.pi * template.group_velocity / omega

        def resolve(tpl: RouterConfig, point: dict[str, float]):
            sep = point["L"] * lam1
            return (
                RouterConfig(tpl.emitter1, tpl.emitter2, sep, tpl.group_velocity),
                point["k"],
            )

        axes = [
            AxisSpec("L", 0.05, 0.20, 4),
            AxisSpec("k", 12.0, 25.0, 1001),
        ]
        return grid_sweep(
            template,
            axes,
            mapping=resolve,
            value_key="Tb_fwd",
            provenance={
                "figure": figure_id,
                "beta": 1.0,
                "omega1": omega,
                "omega2": omega,
                "separation": "rows in units of lambda1 = 2*pi*v_g/omega1",
            },
        )
    if figure_id == "fig5a":
        theta = 0.2
        template = _symmetric_template(1.0)
        gamma = template.emitter1.total_width
        k = omega + gamma * math.tan(theta)
        omega2 = k + gamma * math.tan(theta)
        lam = 2.0 * math.pi * template.group_velocity / k

        def resolve(tpl: RouterConfig, point: dict[str, float]):
            e2 = EmitterParams(omega2, tpl.emitter2.decay_to_a, tpl.emitter2.decay_to_b)
            sep = point["L"] * lam
            return RouterConfig(tpl.emitter1, e2, sep, tpl.group_velocity), k

        axes = [AxisSpec("L", 0.0015, 1.5, 1001)]
        return grid_sweep(
            template,
            axes,
            mapping=resolve,
            value_key="T_a",
            provenance={
                "figure": figure_id,
                "beta": 1.0,
                "omega1": omega,
                "omega2": omega2,
                "theta": theta,
                "probe": k,
                "separation": "axis in wavelength units, L = x*lambda(k)",
            },
        )
    # fig5b
    template = _symmetric_template(1.0)

    def resolve(tpl: RouterConfig, point: dict[str, float]):
        omega2 = point["omega2"]
        e2 = EmitterParams(omega2, tpl.emitter2.decay_to_a, tpl.emitter2.decay_to_b)
        sep = 4.0 * math.pi * tpl.group_velocity / (omega + omega2)
        return RouterConfig(tpl.emitter1, e2, sep, tpl.group_velocity), point["k"]

    axes = [
        AxisSpec("omega2", 22.0, 26.0, 3),
        AxisSpec("k", 12.0, 36.0, 1001),
    ]
    return grid_sweep(
        template,
        axes,
        mapping=resolve,
        value_key="T_a",
        provenance={
            "figure": "fig5b",
            "beta": 1.0,
            "omega1": omega,
            "separation": "L = 4*pi*v_g/(omega1+omega2) per row",
        },
    )


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def find_optimal_distance(
    config: RouterConfig,
    wavenumber: float,
    objective: str = "max_forward_transfer",
) -> tuple[float, float]:
    """Separation maximizing one routing probability over one period.

    The probabilities depend on the separation only through the round-trip
    phase, so one period ``pi*v_g/k`` contains the full range.  A 256-point
    scan brackets the maximum and golden-section search refines it to an
    absolute separation tolerance of 1e-10.  Singular points score minus
    infinity, so the scan never settles on one.

    Returns
    -------
    (separation, value)
    """
    keys = {"max_forward_transfer": 2, "max_transmission": 0}
    if objective not in keys:
        raise ValidationError(f"unknown objective {objective!r}")
    index = keys[objective]
    period = math.pi * config.group_velocity / wavenumber

    def score(length: float) -> float:
        try:
            amps = scattering_amplitudes(
                RouterConfig(
                    config.emitter1, config.emitter2, length, config.group_velocity
                ),
                wavenumber,
            )
        except SingularDenominator:
            return -math.inf
        return amps.probabilities()[index]

    eps = period * 1e-6
    n_scan = 256
    best_value = -math.inf
    best_i = 0
    lengths = [eps + i * period / (n_scan - 1) for i in range(n_scan)]
    for i, length in enumerate(lengths):
        v = score(length)
        if v > best_value:
            best_value, best_i = v, i
    best_len = lengths[best_i]

    # Golden-section refinement (maximization) to |dL| < 1e-10.
    lo = lengths[max(best_i - 1, 0)]
    hi = lengths[min(best_i + 1, n_scan - 1)]
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    fc, fd = score(c), score(d)
    while hi - lo > 1e-10:
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_PHI * (hi - lo)
            fc = score(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_PHI * (hi - lo)
            fd = score(d)
        if fc > best_value:
            best_value, best_len = fc, c
        if fd > best_value:
            best_value, best_len = fd, d
    mid = 0.5 * (lo + hi)
    v_mid = score(mid)
    if v_mid > best_value:
        best_value, best_len = v_mid, mid
    return best_len, best_value
