"""Byte-stable SVG overlays: the curve, circlines and marked points.

Everything is drawn in a fixed 1000 x 1000 viewBox with the y axis pointing
up; coordinates are printed with three decimals so identical inputs give
identical bytes.
"""
from __future__ import annotations

import numpy as np

from .circlines import Circline
from .curves import TWO_PI, PlaneCurve

SIZE = 1000.0
SAMPLES = 1024
PAD = 0.08

STYLES = {
    "curve": 'fill="none" stroke="#222" stroke-width="2"',
    "trace": 'fill="none" stroke="#7a9cc6" stroke-width="1" stroke-dasharray="4 3"',
    "inside": 'fill="none" stroke="#1a7f37" stroke-width="1.5"',
    "outside": 'fill="none" stroke="#c2410c" stroke-width="1.5"',
    "disc": 'fill="#1a7f37" fill-opacity="0.15" stroke="#1a7f37" stroke-width="2"',
    "plain": 'fill="none" stroke="#555" stroke-width="1"',
}
MARKS = {"vertex": "#6d28d9", "inside": "#1a7f37", "outside": "#c2410c", "point": "#111"}


def _num(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


class _Frame:
    def __init__(self, lo, hi):
        span = max(hi[0] - lo[0], hi[1] - lo[1], 1e-12)
        self.scale = SIZE * (1 - 2 * PAD) / span
        mid = 0.5 * (np.asarray(lo) + np.asarray(hi))
        self.mid = mid

    def __call__(self, p):
        p = np.atleast_2d(p)
        x = SIZE / 2 + (p[:, 0] - self.mid[0]) * self.scale
        y = SIZE / 2 - (p[:, 1] - self.mid[1]) * self.scale
        return np.column_stack([x, y])


def _circline_element(frame: _Frame, c: Circline, style: str) -> str:
    r = c.radius * frame.scale if c.k != 0 else np.inf
    if np.isfinite(r) and r < 50 * SIZE:
        (cx, cy), = frame(c.center)
        return f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(r)}" {STYLES[style]}/>'
    # effectively straight at this scale: a long segment through the anchor
    reach = 2 * SIZE / frame.scale
    ends = frame(np.array([c.anchor - reach * c.tangent, c.anchor + reach * c.tangent]))
    return (f'<line x1="{_num(ends[0, 0])}" y1="{_num(ends[0, 1])}" '
            f'x2="{_num(ends[1, 0])}" y2="{_num(ends[1, 1])}" {STYLES[style]}/>')


def render(curve: PlaneCurve, circlines=(), points=(), title: str | None = None, frame_circlines=()) -> str:
    """SVG text.

    ``circlines`` is a sequence of ``(Circline, style)``; ``points`` of
    ``(xy, kind)``.  The view fits the curve plus any ``frame_circlines``
    (typically the ones the reader must see whole, such as a final disc).
    """
    t = np.arange(SAMPLES) * (TWO_PI / SAMPLES)
    pts = curve.eval(t)
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    for c in frame_circlines:
        if not c.is_line():
            lo = np.minimum(lo, c.center - c.radius)
            hi = np.maximum(hi, c.center + c.radius)
    frame = _Frame(lo, hi)
    view = frame(pts)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {int(SIZE)} {int(SIZE)}" '
        f'width="{int(SIZE)}" height="{int(SIZE)}">',
    ]
    if title:
        out.append(f"<title>{_escape(title)}</title>")
    out.append('<rect width="100%" height="100%" fill="white"/>')
    for c, style in circlines:
        out.append(_circline_element(frame, c, style))
    d = "M" + " L".join(f"{_num(x)},{_num(y)}" for x, y in view) + " Z"
    out.append(f'<path d="{d}" {STYLES["curve"]}/>')
    for xy, kind in points:
        (x, y), = frame(np.asarray(xy, dtype=float))
        out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="5" fill="{MARKS.get(kind, MARKS["point"])}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
