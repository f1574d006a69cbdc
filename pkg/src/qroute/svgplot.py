"""Standalone SVG line charts, generated directly (no plotting backend).

Enough for convergence traces and learning curves: one polyline per
series, axes with ticks, a legend, and an optional secondary y-axis for
overlaying series on different scales.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")

WIDTH, HEIGHT = 720, 440
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 64, 64, 40, 48
N_TICKS = 5


@dataclass(frozen=True)
class Series:
    """One named line; axis is "left" or "right"."""

    name: str
    xs: Sequence[float]
    ys: Sequence[float]
    axis: str = "left"


def _fmt(v: float) -> str:
    return f"{v:.6g}"


def _scale(lo: float, hi: float) -> tuple[float, float]:
    if hi == lo:
        pad = 1.0 if hi == 0 else abs(hi) * 0.1
        return lo - pad, hi + pad
    return lo, hi


def _axis_range(series: list[Series]) -> tuple[float, float]:
    lo = min(min(s.ys) for s in series)
    hi = max(max(s.ys) for s in series)
    return _scale(float(lo), float(hi))


def render_svg(
    series: Sequence[Series],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    ylabel_right: str = "",
) -> str:
    """Render the chart as an SVG document string."""
    series = list(series)
    if not series:
        raise ValueError("at least one series required")
    for s in series:
        if len(s.xs) == 0 or len(s.xs) != len(s.ys):
            raise ValueError(f"series {s.name!r} is empty or mismatched")
        if s.axis not in ("left", "right"):
            raise ValueError(f"series {s.name!r}: axis must be 'left' or 'right'")

    x_lo, x_hi = _scale(
        float(min(min(s.xs) for s in series)),
        float(max(max(s.xs) for s in series)),
    )
    left = [s for s in series if s.axis == "left"]
    right = [s for s in series if s.axis == "right"]
    y_ranges = {}
    if left:
        y_ranges["left"] = _axis_range(left)
    if right:
        y_ranges["right"] = _axis_range(right)

    px_w = WIDTH - MARGIN_L - MARGIN_R
    px_h = HEIGHT - MARGIN_T - MARGIN_B

    def to_x(v):
        return MARGIN_L + (v - x_lo) / (x_hi - x_lo) * px_w

    def to_y(v, axis):
        lo, hi = y_ranges[axis]
        return MARGIN_T + (1.0 - (v - lo) / (hi - lo)) * px_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
        f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(
            f'<text x="{WIDTH / 2}" y="{MARGIN_T - 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="15">{title}</text>'
        )

    # frame
    x0, y0 = MARGIN_L, MARGIN_T + px_h
    x1, y1 = MARGIN_L + px_w, MARGIN_T
    out.append(
        f'<rect x="{x0}" y="{y1}" width="{px_w}" height="{px_h}" '
        f'fill="none" stroke="#333" stroke-width="1"/>'
    )

    # x ticks
    for t in range(N_TICKS + 1):
        xv = x_lo + (x_hi - x_lo) * t / N_TICKS
        xp = to_x(xv)
        out.append(
            f'<line x1="{xp:.1f}" y1="{y0}" x2="{xp:.1f}" y2="{y0 + 5}" '
            f'stroke="#333"/>'
        )
        out.append(
            f'<text x="{xp:.1f}" y="{y0 + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xv)}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{MARGIN_L + px_w / 2}" y="{HEIGHT - 10}" '
            f'text-anchor="middle" font-family="sans-serif" '
            f'font-size="12">{xlabel}</text>'
        )

    # y ticks, left and right
    def y_ticks(axis, xpos, anchor, dx):
        lo, hi = y_ranges[axis]
        for t in range(N_TICKS + 1):
            yv = lo + (hi - lo) * t / N_TICKS
            yp = to_y(yv, axis)
            out.append(
                f'<line x1="{xpos}" y1="{yp:.1f}" x2="{xpos + (5 if dx > 0 else -5)}" '
                f'y2="{yp:.1f}" stroke="#333"/>'
            )
            out.append(
                f'<text x="{xpos + dx}" y="{yp + 4:.1f}" text-anchor="{anchor}" '
                f'font-family="sans-serif" font-size="11">{_fmt(yv)}</text>'
            )

    if left:
        y_ticks("left", x0, "end", -8)
        if ylabel:
            out.append(
                f'<text x="16" y="{MARGIN_T + px_h / 2}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="12" '
                f'transform="rotate(-90 16 {MARGIN_T + px_h / 2})">{ylabel}</text>'
            )
    if right:
        y_ticks("right", x1, "start", 8)
        if ylabel_right:
            xr = WIDTH - 14
            out.append(
                f'<text x="{xr}" y="{MARGIN_T + px_h / 2}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="12" '
                f'transform="rotate(90 {xr} {MARGIN_T + px_h / 2})">'
                f'{ylabel_right}</text>'
            )

    # data polylines
    for ix, s in enumerate(series):
        color = PALETTE[ix % len(PALETTE)]
        pts = " ".join(
            f"{to_x(float(x)):.2f},{to_y(float(y), s.axis):.2f}"
            for x, y in zip(s.xs, s.ys)
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="1.5"/>'
        )

    # legend
    for ix, s in enumerate(series):
        color = PALETTE[ix % len(PALETTE)]
        ly = MARGIN_T + 14 + 16 * ix
        lx = MARGIN_L + 10
        out.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{lx + 24}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{s.name}</text>'
        )

    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_plot(series, path, title="", xlabel="", ylabel="", ylabel_right=""):
    """Write the chart to `path`; returns the path."""
    text = render_svg(series, title, xlabel, ylabel, ylabel_right)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path
