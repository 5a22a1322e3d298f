"""Dependency-free SVG output: multi-series line charts and cell maps."""

from __future__ import annotations

import math
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 640, 420
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 150, 40, 50

SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")
REGIME_COLORS = {
    "two-way": "#d62728",
    "one-way-ab": "#1f77b4",
    "one-way-ba": "#17becf",
    "no-way": "#ffd92f",
    None: "#bbbbbb",
}
_RAMP = ((0.0, (68, 1, 84)), (0.5, (33, 145, 140)), (1.0, (253, 231, 37)))


class _Canvas:
    def __init__(self, width=WIDTH, height=HEIGHT):
        self.width, self.height = width, height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        ]

    def add(self, s: str):
        self.parts.append(s)

    def text(self, x, y, s, anchor="start", size=12, rotate=None):
        tr = f' transform="rotate({rotate} {x:.2f} {y:.2f})"' if rotate is not None else ""
        self.add(
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}"{tr}>{escape(str(s))}</text>'
        )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def _frame(c: _Canvas, xlo, xhi, ylo, yhi, title, xlabel, ylabel):
    x0, x1 = MARGIN_L, c.width - MARGIN_R
    y0, y1 = c.height - MARGIN_B, MARGIN_T
    c.add(f'<rect x="{x0}" y="{y1}" width="{x1 - x0}" height="{y0 - y1}" fill="none" stroke="black"/>')
    for t in _ticks(xlo, xhi):
        px = x0 + (t - xlo) / (xhi - xlo) * (x1 - x0)
        c.add(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
        c.text(px, y0 + 18, f"{t:.3g}", anchor="middle", size=10)
    for t in _ticks(ylo, yhi):
        py = y0 - (t - ylo) / (yhi - ylo) * (y0 - y1)
        c.add(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
        c.text(x0 - 8, py + 4, f"{t:.3g}", anchor="end", size=10)
    c.text((x0 + x1) / 2, 24, title, anchor="middle", size=14)
    c.text((x0 + x1) / 2, c.height - 12, xlabel, anchor="middle")
    c.text(18, (y0 + y1) / 2, ylabel, anchor="middle", rotate=-90)
    return x0, x1, y0, y1


def _span(values: Sequence[float]) -> tuple[float, float]:
    finite = [v for v in values if v is not None and math.isfinite(v)]
    if not finite:
        return 0.0, 1.0
    lo, hi = min(finite), max(finite)
    if hi == lo:
        pad = abs(hi) * 0.05 or 0.5
        return lo - pad, hi + pad
    return lo, hi


def line_plot(x: Sequence[float], series: Mapping[str, Sequence[float | None]], title="", xlabel="", ylabel="") -> str:
    """Polylines sharing one x axis; ``None`` values break a line."""
    c = _Canvas()
    xlo, xhi = _span(x)
    ylo, yhi = _span([v for ys in series.values() for v in ys])
    x0, x1, y0, y1 = _frame(c, xlo, xhi, ylo, yhi, title, xlabel, ylabel)

    def px(v):
        return x0 + (v - xlo) / (xhi - xlo) * (x1 - x0)

    def py(v):
        return y0 - (v - ylo) / (yhi - ylo) * (y0 - y1)

    for k, (name, ys) in enumerate(series.items()):
        color = SERIES_COLORS[k % len(SERIES_COLORS)]
        runs, cur = [], []
        for xv, yv in zip(x, ys):
            if yv is None or not math.isfinite(yv):
                if cur:
                    runs.append(cur)
                cur = []
            else:
                cur.append(f"{px(xv):.2f},{py(yv):.2f}")
        if cur:
            runs.append(cur)
        for run in runs:
            c.add(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{" ".join(run)}"/>')
        ly = y1 + 16 + 18 * k
        c.add(f'<line x1="{x1 + 12}" y1="{ly - 4}" x2="{x1 + 32}" y2="{ly - 4}" stroke="{color}" stroke-width="2"/>')
        c.text(x1 + 38, ly, name)
    return c.render()


def _ramp(t: float) -> str:
    t = min(1.0, max(0.0, t))
    for (t0, c0), (t1, c1) in zip(_RAMP, _RAMP[1:]):
        if t <= t1:
            u = (t - t0) / (t1 - t0)
            rgb = [round(a + (b - a) * u) for a, b in zip(c0, c1)]
            return "#%02x%02x%02x" % tuple(rgb)
    return "#%02x%02x%02x" % _RAMP[-1][1]


def cell_map(
    xs: Sequence[float],
    ys: Sequence[float],
    cells: Sequence[Sequence],
    title="",
    xlabel="",
    ylabel="",
    categorical: Mapping | None = None,
) -> str:
    """Grid of coloured cells; ``cells[i][j]`` sits at ``(xs[j], ys[i])``.

    With ``categorical`` the cell values are keys into that colour table;
    otherwise they are numbers mapped onto a colour ramp (``None`` is grey).
    """
    c = _Canvas()
    xlo, xhi = min(xs), max(xs)
    ylo, yhi = min(ys), max(ys)
    x0, x1, y0, y1 = _frame(c, xlo, xhi, ylo, yhi, title, xlabel, ylabel)
    nx, ny = len(xs), len(ys)
    cw = (x1 - x0) / nx
    ch = (y0 - y1) / ny
    if categorical is None:
        vlo, vhi = _span([v for row in cells for v in row])
    for i in range(ny):
        for j in range(nx):
            v = cells[i][j]
            if categorical is not None:
                fill = categorical.get(v, REGIME_COLORS[None])
            elif v is None:
                fill = REGIME_COLORS[None]
            else:
                fill = _ramp((v - vlo) / (vhi - vlo))
            c.add(
                f'<rect x="{x0 + j * cw:.2f}" y="{y0 - (i + 1) * ch:.2f}" width="{cw + 0.05:.2f}" '
                f'height="{ch + 0.05:.2f}" fill="{fill}"/>'
            )
    if categorical is not None:
        for k, (key, color) in enumerate(categorical.items()):
            ly = y1 + 16 + 18 * k
            c.add(f'<rect x="{x1 + 12}" y="{ly - 10}" width="12" height="12" fill="{color}"/>')
            c.text(x1 + 30, ly, "inadmissible" if key is None else key)
    else:
        for k, t in enumerate(_ticks(0.0, 1.0)):
            ly = y1 + 16 + 18 * k
            c.add(f'<rect x="{x1 + 12}" y="{ly - 10}" width="12" height="12" fill="{_ramp(t)}"/>')
            c.text(x1 + 30, ly, f"{vlo + t * (vhi - vlo):.3g}")
    return c.render()
