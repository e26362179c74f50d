"""Minimal standalone SVG output for heatmaps and line plots.

Output is a pure function of the input data so repeated runs produce
identical files.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

# viridis anchor colours at 0, 0.25, 0.5, 0.75, 1
_ANCHORS = np.array([
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37],
], dtype=float)

WIDTH, HEIGHT = 560, 460
MARGIN = dict(left=70, right=90, top=40, bottom=60)
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def colour(value: float) -> str:
    """Map [0, 1] onto the fixed colour scale (values outside are clipped)."""
    v = min(max(float(value), 0.0), 1.0) * (len(_ANCHORS) - 1)
    k = min(int(v), len(_ANCHORS) - 2)
    rgb = _ANCHORS[k] + (v - k) * (_ANCHORS[k + 1] - _ANCHORS[k])
    return "#%02x%02x%02x" % tuple(int(round(c)) for c in rgb)


def _num(x: float) -> str:
    return f"{x:.2f}"


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>',
    ]


def _frame():
    x0, y0 = MARGIN["left"], MARGIN["top"]
    w = WIDTH - MARGIN["left"] - MARGIN["right"]
    h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    return x0, y0, w, h


def _axes(lines, xlim, ylim, xlabel, ylabel, nticks=5):
    x0, y0, w, h = _frame()
    lines.append(f'<rect x="{x0}" y="{y0}" width="{w}" height="{h}" fill="none" stroke="black"/>')
    for k in range(nticks + 1):
        fx = xlim[0] + (xlim[1] - xlim[0]) * k / nticks
        px = x0 + w * k / nticks
        lines.append(f'<line x1="{_num(px)}" y1="{y0 + h}" x2="{_num(px)}" y2="{y0 + h + 5}" stroke="black"/>')
        lines.append(f'<text x="{_num(px)}" y="{y0 + h + 18}" text-anchor="middle">{fx:.3g}</text>')
        fy = ylim[0] + (ylim[1] - ylim[0]) * k / nticks
        py = y0 + h - h * k / nticks
        lines.append(f'<line x1="{x0 - 5}" y1="{_num(py)}" x2="{x0}" y2="{_num(py)}" stroke="black"/>')
        lines.append(f'<text x="{x0 - 8}" y="{_num(py + 4)}" text-anchor="end">{fy:.3g}</text>')
    lines.append(f'<text x="{x0 + w / 2}" y="{HEIGHT - 15}" text-anchor="middle">{escape(xlabel)}</text>')
    lines.append(f'<text x="18" y="{y0 + h / 2}" text-anchor="middle" '
                 f'transform="rotate(-90 18 {y0 + h / 2})">{escape(ylabel)}</text>')


def heatmap(values, x, y, title="", xlabel="", ylabel="") -> str:
    """``values[i, j]`` is drawn at (x[j], y[i]); colour scale fixed to [0, 1]."""
    values = np.asarray(values, dtype=float)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lines = _header(title)
    x0, y0, w, h = _frame()
    nx, ny = len(x), len(y)
    cw, ch = w / nx, h / ny
    for i in range(ny):
        for j in range(nx):
            px = x0 + j * cw
            py = y0 + h - (i + 1) * ch
            lines.append(f'<rect x="{_num(px)}" y="{_num(py)}" width="{_num(cw + 0.3)}" '
                         f'height="{_num(ch + 0.3)}" fill="{colour(values[i, j])}"/>')
    xlim = (x[0], x[-1]) if nx > 1 else (x[0] - 0.5, x[0] + 0.5)
    ylim = (y[0], y[-1]) if ny > 1 else (y[0] - 0.5, y[0] + 0.5)
    _axes(lines, xlim, ylim, xlabel, ylabel)

    # colour bar
    bx = x0 + w + 25
    steps = 50
    for k in range(steps):
        py = y0 + h - (k + 1) * h / steps
        lines.append(f'<rect x="{bx}" y="{_num(py)}" width="18" height="{_num(h / steps + 0.3)}" '
                     f'fill="{colour((k + 0.5) / steps)}"/>')
    for v in (0.0, 0.5, 1.0):
        lines.append(f'<text x="{bx + 24}" y="{_num(y0 + h - v * h + 4)}">{v:.1f}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def lineplot(x, series: dict, title="", xlabel="", ylabel="", ylim=(0.0, 1.0),
             markers=False) -> str:
    x = np.asarray(x, dtype=float)
    lines = _header(title)
    x0, y0, w, h = _frame()
    xlim = (float(x.min()), float(x.max())) if len(x) > 1 else (x[0] - 0.5, x[0] + 0.5)
    _axes(lines, xlim, ylim, xlabel, ylabel)

    def px(v):
        return x0 + w * (v - xlim[0]) / (xlim[1] - xlim[0])

    def py(v):
        return y0 + h - h * (v - ylim[0]) / (ylim[1] - ylim[0])

    for k, (name, ys) in enumerate(series.items()):
        col = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{_num(px(a))},{_num(py(b))}" for a, b in zip(x, ys))
        lines.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        if markers:
            for a, b in zip(x, ys):
                lines.append(f'<circle cx="{_num(px(a))}" cy="{_num(py(b))}" r="2.5" fill="{col}"/>')
        ly = y0 + 15 + 16 * k
        lines.append(f'<line x1="{x0 + w + 8}" y1="{ly}" x2="{x0 + w + 24}" y2="{ly}" '
                     f'stroke="{col}" stroke-width="2"/>')
        lines.append(f'<text x="{x0 + w + 28}" y="{ly + 4}" font-size="10">{escape(name)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
