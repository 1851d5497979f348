"""Deterministic SVG rendering of drawings.

Coordinates stay exact until emission, where they become floats printed with
15 significant digits.  The y axis is flipped so that larger y is drawn higher.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence
from xml.sax.saxutils import escape

from .geom import RationalPoint, bounding_box, upper_envelope, Line
from .search import Drawing

ROLE_COLORS = {
    "root": "#d62728",
    "s": "#2ca02c",
    "t": "#2ca02c",
    "p": "#1f77b4",
    "pprime": "#1f77b4",
    "peak": "#9467bd",
    "lit": "#ff7f0e",
    "anchor": "#8c564b",
    "qpt": "#ff7f0e",
    "sseg": "#17becf",
    "terminal": "#2ca02c",
}
DEFAULT_COLOR = "#444444"


@dataclass(frozen=True)
class RenderOptions:
    path: Optional[Sequence[int]] = None      # shade the slabs of this path's edges
    envelope_lines: Sequence[Line] = ()       # dash the upper envelope of these lines
    envelope_range: Optional[tuple[Fraction, Fraction]] = None
    labels: bool = False
    width: int = 800


def _num(v) -> str:
    return format(float(v), ".15g")


def _color(role: Optional[str]) -> str:
    if not role:
        return DEFAULT_COLOR
    return ROLE_COLORS.get(role.split(":")[0], DEFAULT_COLOR)


def _slab_polygon(a: RationalPoint, b: RationalPoint, reach: Fraction) -> list[RationalPoint]:
    d = b - a
    # a long perpendicular, scaled so it leaves the viewport
    n = RationalPoint(-d.y, d.x)
    k = reach / max(abs(n.x), abs(n.y))
    off = n.scale(k)
    return [a + off, b + off, b - off, a - off]


def render_svg(d: Drawing, options: RenderOptions = RenderOptions()) -> str:
    if not len(d):
        raise ValueError("nothing to render")
    x0, y0, x1, y1 = bounding_box(d.vertices)
    w = x1 - x0 or Fraction(1)
    h = y1 - y0 or Fraction(1)
    pad_x, pad_y = w / 20, h / 20
    vx0, vx1 = x0 - pad_x, x1 + pad_x
    vy0, vy1 = y0 - pad_y, y1 + pad_y
    vw, vh = vx1 - vx0, vy1 - vy0
    stroke = max(vw, vh) / 400
    radius = max(vw, vh) / 150

    def X(p):
        return _num(p.x)

    def Y(p):
        return _num(-p.y)

    # the longer side gets options.width pixels
    scale = options.width / max(float(vw), float(vh))
    width_px = max(1, round(float(vw) * scale))
    height_px = max(1, round(float(vh) * scale))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width_px}" height="{height_px}" '
        f'viewBox="{_num(vx0)} {_num(-vy1)} {_num(vw)} {_num(vh)}">',
    ]
    if options.path and len(options.path) > 1:
        out.append('<g class="slabs" fill="#bbbbbb" fill-opacity="0.25" stroke="none">')
        reach = 2 * max(vw, vh)
        for u, v in zip(options.path, options.path[1:]):
            poly = _slab_polygon(d.vertices[u], d.vertices[v], reach)
            pts = " ".join(f"{X(p)},{Y(p)}" for p in poly)
            out.append(f'<polygon points="{pts}"/>')
        out.append("</g>")
    if options.envelope_lines:
        lo, hi = options.envelope_range or (vx0, vx1)
        env = upper_envelope(list(options.envelope_lines))
        chain = env.clipped(lo, hi)
        if chain:
            pts = [chain[0].left] + [p.right for p in chain]
            coords = " ".join(f"{X(p)},{Y(p)}" for p in pts)
            out.append(
                f'<polyline class="envelope" points="{coords}" fill="none" stroke="#7f7f7f" '
                f'stroke-width="{_num(stroke)}" stroke-dasharray="{_num(4 * stroke)} {_num(3 * stroke)}"/>'
            )
    out.append(f'<g class="edges" stroke="#555555" stroke-width="{_num(stroke)}">')
    for u, v in d.edges:
        a, b = d.vertices[u], d.vertices[v]
        out.append(f'<line x1="{X(a)}" y1="{Y(a)}" x2="{X(b)}" y2="{Y(b)}"/>')
    out.append("</g>")
    if options.path and len(options.path) > 1:
        out.append(f'<g class="path" stroke="#d62728" stroke-width="{_num(2 * stroke)}">')
        for u, v in zip(options.path, options.path[1:]):
            a, b = d.vertices[u], d.vertices[v]
            out.append(f'<line x1="{X(a)}" y1="{Y(a)}" x2="{X(b)}" y2="{Y(b)}"/>')
        out.append("</g>")
    out.append('<g class="vertices">')
    for i, p in enumerate(d.vertices):
        role = d.labels.get(i)
        title = f"<title>{escape(role)}</title>" if role else ""
        out.append(f'<circle cx="{X(p)}" cy="{Y(p)}" r="{_num(radius)}" fill="{_color(role)}">{title}</circle>')
    out.append("</g>")
    if options.labels:
        out.append(f'<g class="labels" font-size="{_num(3 * radius)}" font-family="monospace">')
        for i, p in enumerate(d.vertices):
            text = escape(d.labels.get(i, str(i)))
            out.append(f'<text x="{_num(p.x + radius)}" y="{_num(-p.y - radius)}">{text}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
