"""Minimal SVG emission for sweep datasets. Presentation only."""

from __future__ import annotations

import math

from .sweep import FigureDataset

WIDTH, HEIGHT = 800, 600
_MARGIN = 60

# Compact perceptual-ish ramp, dark blue to yellow.
_RAMP = (
    (0.267, 0.005, 0.329),
    (0.283, 0.141, 0.458),
    (0.254, 0.265, 0.530),
    (0.207, 0.372, 0.553),
    (0.164, 0.471, 0.558),
    (0.128, 0.567, 0.551),
    (0.135, 0.659, 0.518),
    (0.267, 0.749, 0.441),
    (0.478, 0.821, 0.318),
    (0.741, 0.873, 0.150),
    (0.993, 0.906, 0.144),
)

_LINE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _color(value: float) -> str:
    if not math.isfinite(value):
        return "#bbbbbb"
    v = min(max(value, 0.0), 1.0) * (len(_RAMP) - 1)
    i = min(int(v), len(_RAMP) - 2)
    f = v - i
    rgb = [
        round(255 * ((1 - f) * _RAMP[i][c] + f * _RAMP[i + 1][c])) for c in range(3)
    ]
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def _header(title: str) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH // 2}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{title}</text>',
    ]


def heatmap_svg(dataset: FigureDataset) -> str:
    """Render a two-axis dataset as a colored-cell heatmap."""
    if len(dataset.axes) != 2:
        raise ValueError("heatmap needs a two-axis dataset")
    ax0, ax1 = dataset.axes
    key = dataset.cells[0][0]._fields.index(dataset.value_key)
    n0, n1 = ax0.count, ax1.count
    plot_w = WIDTH - 2 * _MARGIN
    plot_h = HEIGHT - 2 * _MARGIN
    cw = plot_w / n0
    ch = plot_h / n1
    title = dataset.provenance.get("figure", dataset.value_key)
    parts = _header(f"{title}: {dataset.value_key}")
    for i, row in enumerate(dataset.cells):
        x = _MARGIN + i * cw
        for j, cell in enumerate(row):
            y = HEIGHT - _MARGIN - (j + 1) * ch
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cw + 0.5:.2f}" '
                f'height="{ch + 0.5:.2f}" fill="{_color(cell[key])}"/>'
            )
    parts.append(_axis_labels(ax0.name, ax0.start, ax0.stop, ax1.name, ax1.start, ax1.stop))
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_svg(dataset: FigureDataset) -> str:
    """Render a dataset as probability curves.

    One axis: the four routing probabilities against the axis.  Two axes:
    the headline quantity against the inner axis, one curve per outer
    value.
    """
    if not dataset.axes:
        raise ValueError("line plot needs at least one axis")
    title = dataset.provenance.get("figure", dataset.value_key)
    parts = _header(str(title))
    plot_w = WIDTH - 2 * _MARGIN
    plot_h = HEIGHT - 2 * _MARGIN

    def path(xs, ys, color):
        pts = []
        for x, y in zip(xs, ys):
            if not math.isfinite(y):
                continue
            px = _MARGIN + x * plot_w
            py = HEIGHT - _MARGIN - min(max(y, 0.0), 1.0) * plot_h
            pts.append(f"{px:.2f},{py:.2f}")
        return (
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
            f'points="{" ".join(pts)}"/>'
        )

    if len(dataset.axes) == 1:
        ax = dataset.axes[0]
        frac = [i / (ax.count - 1) for i in range(ax.count)]
        for ch, (label, color) in enumerate(
            zip(("T_a", "R_a", "Tb_fwd", "Tb_bwd"), _LINE_COLORS)
        ):
            parts.append(path(frac, [c[ch] for c in dataset.cells], color))
            parts.append(
                f'<text x="{_MARGIN + 8}" y="{_MARGIN + 16 * (ch + 1)}" '
                f'font-family="sans-serif" font-size="12" fill="{color}">{label}</text>'
            )
        parts.append(
            _axis_labels(ax.name, ax.start, ax.stop, "probability", 0.0, 1.0)
        )
    else:
        ax0, ax1 = dataset.axes
        key = dataset.cells[0][0]._fields.index(dataset.value_key)
        frac = [i / (ax1.count - 1) for i in range(ax1.count)]
        for r, (v0, row) in enumerate(zip(ax0.values(), dataset.cells)):
            color = _LINE_COLORS[r % len(_LINE_COLORS)]
            parts.append(path(frac, [c[key] for c in row], color))
            parts.append(
                f'<text x="{_MARGIN + 8}" y="{_MARGIN + 16 * (r + 1)}" '
                f'font-family="sans-serif" font-size="12" fill="{color}">'
                f"{ax0.name}={v0:g}</text>"
            )
        parts.append(
            _axis_labels(ax1.name, ax1.start, ax1.stop, dataset.value_key, 0.0, 1.0)
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _axis_labels(xname, x0, x1, yname, y0, y1) -> str:
    bottom = HEIGHT - _MARGIN
    return "\n".join(
        [
            f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{WIDTH - 2 * _MARGIN}" '
            f'height="{HEIGHT - 2 * _MARGIN}" fill="none" stroke="black"/>',
            f'<text x="{_MARGIN}" y="{bottom + 20}" font-family="sans-serif" '
            f'font-size="12">{x0:g}</text>',
            f'<text x="{WIDTH - _MARGIN}" y="{bottom + 20}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{x1:g}</text>',
            f'<text x="{WIDTH // 2}" y="{bottom + 36}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="13">{xname}</text>',
            f'<text x="{_MARGIN - 6}" y="{bottom}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{y0:g}</text>',
            f'<text x="{_MARGIN - 6}" y="{_MARGIN + 4}" text-anchor="end" '
            f'font-family="sans-serif" font-size="12">{y1:g}</text>',
            f'<text x="16" y="{HEIGHT // 2}" font-family="sans-serif" '
            f'font-size="13" transform="rotate(-90 16 {HEIGHT // 2})" '
            f'text-anchor="middle">{yname}</text>',
        ]
    )
