"""Minimal SVG line charts (axes, polylines, legend)."""

from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")

WIDTH, HEIGHT = 640, 400
LEFT, RIGHT, TOP, BOTTOM = 70, 150, 40, 50


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    return [lo + (hi - lo) * k / (count - 1) for k in range(count)]


def line_chart(
    series: Sequence[tuple[str, Sequence[float], Sequence[float]]],
    title: str,
    xlabel: str,
    ylabel: str,
    log_x: bool = False,
    log_y: bool = False,
    dashed: Sequence[str] = (),
) -> str:
    """Render ``(label, xs, ys)`` series as one SVG document.

    Log axes plot ``log10`` of the data and label ticks with the original values;
    non-positive points are dropped on log axes.
    """
    def tx(v):
        return math.log10(v) if log_x else v

    def ty(v):
        return math.log10(v) if log_y else v

    cleaned = []
    for label, xs, ys in series:
        pts = [
            (tx(x), ty(y))
            for x, y in zip(xs, ys)
            if (not log_x or x > 0) and (not log_y or y > 0) and math.isfinite(x) and math.isfinite(y)
        ]
        cleaned.append((label, pts))
    all_pts = [p for _, pts in cleaned for p in pts] or [(0.0, 0.0)]
    x_lo, x_hi = min(p[0] for p in all_pts), max(p[0] for p in all_pts)
    y_lo, y_hi = min(p[1] for p in all_pts), max(p[1] for p in all_pts)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5

    plot_w = WIDTH - LEFT - RIGHT
    plot_h = HEIGHT - TOP - BOTTOM

    def px(x):
        return LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y):
        return TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="20" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line x1="{LEFT}" y1="{TOP + plot_h}" x2="{LEFT + plot_w}" y2="{TOP + plot_h}" stroke="black"/>',
        f'<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{TOP + plot_h}" stroke="black"/>',
    ]
    for v in _ticks(x_lo, x_hi):
        label = f"{10 ** v:.3g}" if log_x else f"{v:.3g}"
        out.append(
            f'<line x1="{px(v):.2f}" y1="{TOP + plot_h}" x2="{px(v):.2f}" y2="{TOP + plot_h + 4}" stroke="black"/>'
            f'<text x="{px(v):.2f}" y="{TOP + plot_h + 16}" text-anchor="middle">{label}</text>'
        )
    for v in _ticks(y_lo, y_hi):
        label = f"{10 ** v:.3g}" if log_y else f"{v:.3g}"
        out.append(
            f'<line x1="{LEFT - 4}" y1="{py(v):.2f}" x2="{LEFT}" y2="{py(v):.2f}" stroke="black"/>'
            f'<text x="{LEFT - 6}" y="{py(v) + 4:.2f}" text-anchor="end">{label}</text>'
        )
    out.append(
        f'<text x="{LEFT + plot_w / 2:.1f}" y="{HEIGHT - 12}" text-anchor="middle">{escape(xlabel)}</text>'
    )
    out.append(
        f'<text transform="translate(16 {TOP + plot_h / 2:.1f}) rotate(-90)" text-anchor="middle">'
        f"{escape(ylabel)}</text>"
    )
    for k, (label, pts) in enumerate(cleaned):
        color = PALETTE[k % len(PALETTE)]
        dash = ' stroke-dasharray="5,4"' if label in dashed else ""
        coords = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{coords}"/>')
        ly = TOP + 14 * k + 6
        lx = LEFT + plot_w + 12
        out.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 18}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>'
            f'<text x="{lx + 24}" y="{ly + 4}">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
