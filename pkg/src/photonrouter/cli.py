"""Command-line front end.

Subcommands: ``scatter`` (four probabilities at one wavenumber), ``verify``
(seeded cross-check suites), ``pulse`` (time-domain wavepacket run),
``sweep`` (ad-hoc grids), ``figure`` (canned datasets) and ``optimize``
(best separation).  Configuration files are line-oriented ``key = value``
with ``#`` comments; all physics defaults (unit decay rates, transition
frequency 20, unit group velocity) mirror the conventions used by the
canned figures, so bare commands produce comparable numbers.

Exit codes: 0 success, 1 parse/validation errors, 2 singular-parameter
errors.
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from random import Random

from . import pulse as pulse_mod
from . import svg as svg_mod
from .errors import (
    InvalidAxisMapping,
    ParseError,
    SingularDenominator,
    SingularSystem,
    TraceTruncated,
    ValidationError,
)
from .model import (
    EmitterParams,
    RouterConfig,
    conservation_defect,
    scattering_amplitudes,
)
from .sampling import sample_regular, sample_symmetric_standing_wave
from .steady_state import (
    amplitudes_from_steady_state,
    steady_state_residual,
    steady_state_solve,
)
from .sweep import FIGURE_IDS, AxisSpec, find_optimal_distance, grid_sweep, reproduce_figure

__all__ = ["RunConfig", "parse_config", "serialize_config", "run", "main"]

CONFIG_KEYS = ("omega1", "omega2", "gamma1a", "gamma1b", "gamma2a", "gamma2b", "L", "vg")
_REQUIRED_KEYS = CONFIG_KEYS[:-1]  # vg defaults to 1

DEFAULT_CONFIG_TEXT = """\
omega1 = 20.0
omega2 = 20.0
gamma1a = 1.0
gamma1b = 1.0
gamma2a = 1.0
gamma2b = 1.0
L = 0.15707963267948966
vg = 1.0
"""


@dataclass
class RunConfig:
    """Resolved invocation: subcommand plus shared I/O settings."""

    subcommand: str
    config_path: str | None = None
    overrides: dict[str, float] = field(default_factory=dict)
    output_path: str = "-"
    format: str = "summary"
    options: dict = field(default_factory=dict)


def parse_config(text: str) -> RouterConfig:
    """Parse ``key = value`` configuration text into a RouterConfig.

    ``#`` begins a comment; blank lines are ignored; every key except
    ``vg`` is required and duplicates are rejected.
    """
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", line=lineno)
        key, _, rhs = line.partition("=")
        key = key.strip()
        rhs = rhs.strip()
        if key not in CONFIG_KEYS:
            raise ParseError(f"unknown key {key!r}", line=lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", line=lineno)
        try:
            values[key] = float(rhs)
        except ValueError:
            raise ParseError(f"invalid number {rhs!r} for key {key!r}", line=lineno)
    missing = [k for k in _REQUIRED_KEYS if k not in values]
    if missing:
        raise ParseError("missing keys: " + ", ".join(missing))
    return RouterConfig(
        emitter1=EmitterParams(values["omega1"], values["gamma1a"], values["gamma1b"]),
        emitter2=EmitterParams(values["omega2"], values["gamma2a"], values["gamma2b"]),
        separation=values["L"],
        group_velocity=values.get("vg", 1.0),
    )


def serialize_config(config: RouterConfig) -> str:
    """Inverse of :func:`parse_config`; floats round-trip exactly."""
    e1, e2 = config.emitter1, config.emitter2
    pairs = (
        ("omega1", e1.transition_frequency),
        ("omega2", e2.transition_frequency),
        ("gamma1a", e1.decay_to_a),
        ("gamma1b", e1.decay_to_b),
        ("gamma2a", e2.decay_to_a),
        ("gamma2b", e2.decay_to_b),
        ("L", config.separation),
        ("vg", config.group_velocity),
    )
    return "".join(f"{k} = {v!r}\n" for k, v in pairs)


def _load_config(rc: RunConfig) -> RouterConfig:
    if rc.config_path is not None:
        with open(rc.config_path, "r", encoding="utf-8") as f:
            text = f.read()
    else:
        text = DEFAULT_CONFIG_TEXT
    config = parse_config(text)
    if rc.overrides:
        for key in rc.overrides:
            if key not in CONFIG_KEYS:
                raise ValidationError(f"unknown override key {key!r}")
        raw = {
            "omega1": config.emitter1.transition_frequency,
            "omega2": config.emitter2.transition_frequency,
            "gamma1a": config.emitter1.decay_to_a,
            "gamma1b": config.emitter1.decay_to_b,
            "gamma2a": config.emitter2.decay_to_a,
            "gamma2b": config.emitter2.decay_to_b,
            "L": config.separation,
            "vg": config.group_velocity,
        }
        raw.update(rc.overrides)
        config = RouterConfig(
            EmitterParams(raw["omega1"], raw["gamma1a"], raw["gamma1b"]),
            EmitterParams(raw["omega2"], raw["gamma2a"], raw["gamma2b"]),
            raw["L"],
            raw["vg"],
        )
    return config


def _write_output(rc: RunConfig, text: str) -> None:
    """Write to stdout or atomically (write-temp-then-rename) to a file."""
    if rc.output_path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(rc.output_path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".photonrouter-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, rc.output_path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cmd_scatter(rc: RunConfig) -> int:
    config = _load_config(rc)
    k = rc.options["wavenumber"]
    if rc.options.get("wavelength_units"):
        config = RouterConfig(
            config.emitter1,
            config.emitter2,
            config.separation * 2.0 * math.pi * config.group_velocity / k,
            config.group_velocity,
        )
    amps = scattering_amplitudes(config, k)
    t_a, r_a, tb_f, tb_b = amps.probabilities()
    defect = conservation_defect(amps)
    if rc.format == "csv":
        text = (
            "k,T_a,R_a,Tb_fwd,Tb_bwd,defect\n"
            f"{k!r},{t_a!r},{r_a!r},{tb_f!r},{tb_b!r},{defect!r}\n"
        )
    else:
        text = (
            f"k = {k!r}\nT_a = {t_a!r}\nR_a = {r_a!r}\nTb_fwd = {tb_f!r}\n"
            f"Tb_bwd = {tb_b!r}\ndefect = {defect!r}\n"
        )
    _write_output(rc, text)
    return 0


def _cmd_verify(rc: RunConfig) -> int:
    samples = rc.options.get("samples", 100_000)
    seed = rc.options.get("seed", 7)
    rng = Random(seed)

    max_defect = 0.0
    for _ in range(samples):
        config, k = sample_regular(rng, min_denominator=1e-6)
        max_defect = max(max_defect, conservation_defect(scattering_amplitudes(config, k)))

    oracle_samples = min(samples, 10_000)
    max_oracle = 0.0
    max_residual = 0.0
    for _ in range(oracle_samples):
        config, k = sample_regular(rng, min_denominator=1e-3)
        closed = scattering_amplitudes(config, k)
        solution = steady_state_solve(config, k)
        assembled = amplitudes_from_steady_state(solution, config)
        max_residual = max(max_residual, steady_state_residual(solution, config))
        max_oracle = max(
            max_oracle,
            abs(closed.transmit_a - assembled.transmit_a),
            abs(closed.reflect_a - assembled.reflect_a),
            abs(closed.transfer_forward_b - assembled.transfer_forward_b),
            abs(closed.transfer_backward_b - assembled.transfer_backward_b),
        )

    periodic_samples = min(samples, 2_000)
    max_periodic = 0.0
    for _ in range(periodic_samples):
        config, k = sample_regular(rng, min_denominator=1e-3)
        shifted = RouterConfig(
            config.emitter1,
            config.emitter2,
            config.separation + math.pi * config.group_velocity / k,
            config.group_velocity,
        )
        a = scattering_amplitudes(config, k)
        b = scattering_amplitudes(shifted, k)
        max_periodic = max(
            max_periodic,
            abs(a.transmit_a - b.transmit_a),
            abs(a.reflect_a - b.reflect_a),
            abs(a.transfer_forward_b - b.transfer_forward_b),
            abs(a.transfer_backward_b - b.transfer_backward_b),
        )

    zero_samples = min(samples, 1_000)
    max_zero = 0.0
    for _ in range(zero_samples):
        config, k = sample_symmetric_standing_wave(rng)
        amps = scattering_amplitudes(config, k)
        max_zero = max(max_zero, abs(amps.reflect_a), abs(amps.transfer_backward_b))

    checks = (
        ("max conservation defect", max_defect, 1e-9, samples),
        ("max oracle disagreement", max_oracle, 1e-12, oracle_samples),
        ("max oracle residual", max_residual, 1e-12, oracle_samples),
        ("max period violation", max_periodic, 1e-12, periodic_samples),
        ("max standing-wave leak", max_zero, 1e-10, zero_samples),
    )
    lines = [f"seed = {seed}"]
    ok = True
    for label, value, bound, n in checks:
        status = "pass" if value < bound else "FAIL"
        ok = ok and value < bound
        lines.append(f"{label} = {value!r} (n={n}, bound={bound:g}) {status}")
    lines.append("result = " + ("pass" if ok else "FAIL"))
    _write_output(rc, "\n".join(lines) + "\n")
    return 0 if ok else 1


def _cmd_pulse(rc: RunConfig) -> int:
    config = _load_config(rc)
    opts = rc.options
    k0 = opts["carrier"]
    spec_kwargs = {}
    if opts.get("sigma_t") is not None:
        spec_kwargs["temporal_width"] = opts["sigma_t"]
    else:
        spec_kwargs["temporal_width"] = pulse_mod.default_pulse(config, k0).temporal_width
    spec_kwargs["peak_time"] = (
        opts["peak_time"]
        if opts.get("peak_time") is not None
        else 5.0 * spec_kwargs["temporal_width"]
    )
    spec = pulse_mod.PulseSpec(
        carrier_wavenumber=k0,
        amplitude=opts.get("amplitude", 1.0),
        **spec_kwargs,
    )
    trace = pulse_mod.simulate_pulse(
        config, spec, time_step=opts.get("step"), duration=opts.get("duration")
    )
    if rc.format == "csv":
        buf = io.StringIO()
        trace.to_csv(buf)
        _write_output(rc, buf.getvalue())
        return 0
    probs = pulse_mod.extract_probabilities(trace)
    defect = pulse_mod.energy_defect(trace)
    lines = [
        f"T_a = {probs[0]!r}",
        f"R_a = {probs[1]!r}",
        f"Tb_fwd = {probs[2]!r}",
        f"Tb_bwd = {probs[3]!r}",
        f"energy_defect = {defect!r}",
    ]
    try:
        model_probs = scattering_amplitudes(config, k0).probabilities()
        gap = max(abs(p - m) for p, m in zip(probs, model_probs))
        lines.append(f"model_gap = {gap!r}")
    except SingularDenominator:
        lines.append("model_gap = n/a (singular at carrier)")
    _write_output(rc, "\n".join(lines) + "\n")
    return 0


def _parse_axis(text: str) -> AxisSpec:
    try:
        name, _, rest = text.partition("=")
        start_s, stop_s, count_s = rest.split(":")
        return AxisSpec(name.strip(), float(start_s), float(stop_s), int(count_s))
    except (ValueError, TypeError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(
            f"axis must look like name=start:stop:count, got {text!r}"
        ) from exc


def _cmd_sweep(rc: RunConfig) -> int:
    config = _load_config(rc)
    axes = [_parse_axis(a) for a in rc.options.get("axes", [])]
    dataset = grid_sweep(config, axes, wavenumber=rc.options.get("wavenumber"))
    if rc.format == "svg":
        text = (
            svg_mod.heatmap_svg(dataset) if len(axes) == 2 else svg_mod.line_svg(dataset)
        )
    else:
        text = dataset.to_csv()
    _write_output(rc, text)
    return 0


def _cmd_figure(rc: RunConfig) -> int:
    dataset = reproduce_figure(rc.options["figure_id"])
    if rc.format == "svg":
        if len(dataset.axes) == 2 and dataset.axes[0].count > 10:
            text = svg_mod.heatmap_svg(dataset)
        else:
            text = svg_mod.line_svg(dataset)
    else:
        text = dataset.to_csv()
    _write_output(rc, text)
    return 0


def _cmd_optimize(rc: RunConfig) -> int:
    config = _load_config(rc)
    length, value = find_optimal_distance(
        config, rc.options["wavenumber"], rc.options.get("objective", "max_forward_transfer")
    )
    _write_output(rc, f"L = {length!r}\nvalue = {value!r}\n")
    return 0


_HANDLERS = {
    "scatter": _cmd_scatter,
    "verify": _cmd_verify,
    "pulse": _cmd_pulse,
    "sweep": _cmd_sweep,
    "figure": _cmd_figure,
    "optimize": _cmd_optimize,
}


def run(rc: RunConfig) -> int:
    """Dispatch a resolved invocation; map errors to exit codes 1 and 2."""
    try:
        return _HANDLERS[rc.subcommand](rc)
    except (ParseError, ValidationError, InvalidAxisMapping, TraceTruncated, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SingularDenominator, SingularSystem) as exc:
        print(f"singular parameters: {exc}", file=sys.stderr)
        return 2


def _add_common(sub: argparse.ArgumentParser, with_config: bool = True) -> None:
    if with_config:
        sub.add_argument("--config", help="path to a key = value configuration file")
        sub.add_argument(
            "--set",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="override one configuration key (repeatable)",
        )
    sub.add_argument("-o", "--output", default="-", help="output path ('-' = stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="photonrouter",
        description="Single-photon routing by two distant emitters on two lines.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("scatter", help="probabilities at one wavenumber")
    _add_common(p)
    p.add_argument("--k", type=float, required=True, help="probe wavenumber")
    p.add_argument(
        "--wavelength-units",
        action="store_true",
        help="interpret L as a multiple of the probe wavelength 2*pi*vg/k",
    )
    p.add_argument("--format", choices=("summary", "csv"), default="summary")

    p = sub.add_parser("verify", help="seeded cross-check suites")
    _add_common(p, with_config=False)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=7)

    p = sub.add_parser("pulse", help="time-domain wavepacket simulation")
    _add_common(p)
    p.add_argument("--k0", type=float, required=True, help="carrier wavenumber")
    p.add_argument("--sigma-t", type=float, help="temporal width (default 100/Gamma_min)")
    p.add_argument("--peak-time", type=float, help="envelope peak time (default 5 sigma)")
    p.add_argument("--amplitude", type=float, default=1.0)
    p.add_argument("--step", type=float, help="integration step (default resolution bound)")
    p.add_argument("--duration", type=float, help="simulated time span")
    p.add_argument("--format", choices=("summary", "csv"), default="summary")

    p = sub.add_parser("sweep", help="grid sweep over one or two axes")
    _add_common(p)
    p.add_argument(
        "--axis",
        action="append",
        default=[],
        metavar="NAME=START:STOP:COUNT",
        help="sweep axis (theta, L, k, omega2 or beta; repeatable, max 2)",
    )
    p.add_argument("--k", type=float, help="probe wavenumber if no k/theta axis")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("figure", help="regenerate a canned dataset")
    _add_common(p, with_config=False)
    p.add_argument("figure_id", choices=FIGURE_IDS)
    p.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("optimize", help="best separation over one period")
    _add_common(p)
    p.add_argument("--k", type=float, required=True, help="probe wavenumber")
    p.add_argument(
        "--objective",
        choices=("max_forward_transfer", "max_transmission"),
        default="max_forward_transfer",
    )
    return parser


def _overrides_from(args: argparse.Namespace) -> dict[str, float]:
    overrides = {}
    for item in getattr(args, "set", []):
        key, sep, value = item.partition("=")
        if not sep:
            raise ValidationError(f"override must look like KEY=VALUE, got {item!r}")
        try:
            overrides[key.strip()] = float(value)
        except ValueError:
            raise ValidationError(f"invalid override value in {item!r}")
    return overrides


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        overrides = _overrides_from(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    options: dict = {}
    if args.subcommand == "scatter":
        options = {"wavenumber": args.k, "wavelength_units": args.wavelength_units}
    elif args.subcommand == "verify":
        options = {"samples": args.samples, "seed": args.seed}
    elif args.subcommand == "pulse":
        options = {
            "carrier": args.k0,
            "sigma_t": args.sigma_t,
            "peak_time": args.peak_time,
            "amplitude": args.amplitude,
            "step": args.step,
            "duration": args.duration,
        }
    elif args.subcommand == "sweep":
        options = {"axes": args.axis, "wavenumber": args.k}
    elif args.subcommand == "figure":
        options = {"figure_id": args.figure_id}
    elif args.subcommand == "optimize":
        options = {"wavenumber": args.k, "objective": args.objective}
    rc = RunConfig(
        subcommand=args.subcommand,
        config_path=getattr(args, "config", None),
        overrides=overrides,
        output_path=args.output,
        format=getattr(args, "format", "summary"),
        options=options,
    )
    return run(rc)


if __name__ == "__main__":
    raise SystemExit(main())
