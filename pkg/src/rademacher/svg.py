"""Hand-written SVG line charts with deterministic output."""
from __future__ import annotations

import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 800, 500
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 90, 30, 40, 60
COLORS = ("#1f4e9c", "#c2410c", "#15803d", "#7c3aed")


class EmptyChartError(ValueError):
    pass


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / target
    mag = 10 ** math.floor(math.log10(raw))
    for m in (1, 2, 5, 10):
        if m * mag >= raw:
            return m * mag
    return 10 * mag


def _ticks(lo: float, hi: float) -> list[float]:
    step = _nice_step(hi - lo)
    t = math.ceil(lo / step) * step
    out = []
    while t <= hi + step * 1e-9:
        out.append(0.0 if abs(t) < step * 1e-9 else t)
        t += step
    return out


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _label(v: float) -> str:
    if v == 0:
        return "0"
    if 1e-3 <= abs(v) < 1e5:
        return f"{v:.6g}"
    return f"{v:.3g}"


def line_chart(
    series: Sequence[tuple[str, Sequence[tuple[float, float]]]],
    reference: Optional[float] = None,
    reference_label: str = "",
    title: str = "",
    x_label: str = "N",
    y_label: str = "",
) -> str:
    """Polyline-with-markers chart of one or more (label, [(x, y)]) series.

    ``reference`` draws a dashed horizontal line.  Coordinates are rounded to
    two decimals so the bytes depend only on the inputs.
    """
    pts = [p for _, s in series for p in s]
    if not pts:
        raise EmptyChartError("nothing to plot: empty range")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts] + ([reference] if reference is not None else [])
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 1, x1 + 1
    if y0 == y1:
        pad = abs(y0) * 0.1 or 1.0
        y0, y1 = y0 - pad, y1 + pad
    pad = (y1 - y0) * 0.05
    y0, y1 = y0 - pad, y1 + pad
    pw, ph = WIDTH - MARGIN_L - MARGIN_R, HEIGHT - MARGIN_T - MARGIN_B

    def sx(x):
        return MARGIN_L + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return MARGIN_T + (y1 - y) / (y1 - y0) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" '
        f'width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{pw}" height="{ph}" fill="none" stroke="#444"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.2f}" y="24" text-anchor="middle" font-size="15">{escape(title)}</text>')
    for t in _ticks(x0, x1):
        x = _fmt(sx(t))
        out.append(f'<line x1="{x}" y1="{MARGIN_T + ph}" x2="{x}" y2="{MARGIN_T + ph + 5}" stroke="#444"/>')
        out.append(f'<text x="{x}" y="{MARGIN_T + ph + 19}" text-anchor="middle">{_label(t)}</text>')
    for t in _ticks(y0, y1):
        y = _fmt(sy(t))
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{y}" x2="{MARGIN_L}" y2="{y}" stroke="#444"/>')
        out.append(f'<line x1="{MARGIN_L}" y1="{y}" x2="{MARGIN_L + pw}" y2="{y}" stroke="#ddd"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{y}" text-anchor="end" dominant-baseline="middle">{_label(t)}</text>')
    out.append(f'<text x="{MARGIN_L + pw / 2:.2f}" y="{HEIGHT - 15}" text-anchor="middle">{escape(x_label)}</text>')
    if y_label:
        cy = MARGIN_T + ph / 2
        out.append(f'<text x="18" y="{cy:.2f}" text-anchor="middle" transform="rotate(-90 18 {cy:.2f})">'
                   f"{escape(y_label)}</text>")
    if reference is not None:
        y = _fmt(sy(reference))
        out.append(f'<line x1="{MARGIN_L}" y1="{y}" x2="{MARGIN_L + pw}" y2="{y}" stroke="#b91c1c" '
                   f'stroke-dasharray="6 4"/>')
        if reference_label:
            out.append(f'<text x="{MARGIN_L + pw - 4}" y="{float(y) - 6:.2f}" text-anchor="end" fill="#b91c1c">'
                       f"{escape(reference_label)}</text>")
    for i, (name, s) in enumerate(series):
        color = COLORS[i % len(COLORS)]
        coords = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in s)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{coords}"/>')
        for x, y in s:
            out.append(f'<circle cx="{_fmt(sx(x))}" cy="{_fmt(sy(y))}" r="1.8" fill="{color}"/>')
        if name and len(series) > 1:
            ly = MARGIN_T + 16 + 16 * i
            out.append(f'<line x1="{MARGIN_L + 10}" y1="{ly}" x2="{MARGIN_L + 30}" y2="{ly}" stroke="{color}" '
                       f'stroke-width="2"/>')
            out.append(f'<text x="{MARGIN_L + 36}" y="{ly}" dominant-baseline="middle">{escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
