"""SVG 1.1 drawings of a polygon pair and its relative convex hull."""

from __future__ import annotations

from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .polygon import Polygon, RegionPair, prepare


def _f(v) -> str:
    return f"{float(v):.6g}"


def render_svg(pair: RegionPair, rch: Optional[Polygon] = None, labels: bool = True,
               width: int = 640, margin: float = 0.06) -> bytes:
    """Outer polygon in grey, inner in blue, hull as a heavy red stroke.

    Labels ``p1..pn`` and ``q1..qm`` follow the annotation indices: each
    polygon is traced clockwise from its minimal-x (then minimal-y) vertex.
    """
    A = prepare(pair.inner).vertices
    B = prepare(pair.outer).vertices
    pts = list(A) + list(B)
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    pad = span * margin
    scale = (width - 2) / (span + 2 * pad)
    height = int((y1 - y0 + 2 * pad) * scale) + 2

    def xy(p):
        # flip y so the drawing has the usual mathematical orientation
        return (float(p[0]) - x0 + pad) * scale, (y1 + pad - float(p[1])) * scale

    def path(vs: Sequence) -> str:
        return " ".join(f"{_f(a)},{_f(b)}" for a, b in map(xy, vs))

    stroke = max(1.0, width / 400)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<polygon id="outer" points="{path(B)}" fill="#eeeeee" stroke="#555555" '
        f'stroke-width="{_f(stroke)}"/>',
        f'<polygon id="inner" points="{path(A)}" fill="#cfe0f5" stroke="#1f4e9a" '
        f'stroke-width="{_f(stroke)}"/>',
    ]
    if rch is not None:
        out.append(f'<polygon id="rch" points="{path(rch.vertices)}" fill="none" '
                   f'stroke="#d01010" stroke-width="{_f(3 * stroke)}" '
                   'stroke-linejoin="round"/>')
    if labels:
        size = _f(max(8.0, width / 60))
        out.append(f'<g font-family="sans-serif" font-size="{size}">')
        for letter, vs, color in (("p", A, "#1f4e9a"), ("q", B, "#333333")):
            for i, p in enumerate(vs, start=1):
                x, y = xy(p)
                out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(stroke * 1.5)}" '
                           f'fill="{color}"/>')
                out.append(f'<text x="{_f(x + 3)}" y="{_f(y - 3)}" fill="{color}">'
                           f'{escape(letter)}{i}</text>')
        out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
