"""Deterministic SVG drawing of G(F)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import CURVE, POINT, SEGMENT, VERTICAL, graph_primitives
from .model import MarkovMultiMap
from .numbers import format_rational

CURVE_SAMPLES = 64


@dataclass(frozen=True)
class RenderOptions:
    size: int = 400
    margin: int = 30
    gridlines: bool = True
    stroke: float = 3.0
    grid_stroke: float = 1.0
    dot_radius: float = 3.5
    labels: bool = False

    def __post_init__(self):
        if self.size <= 0 or self.margin < 0 or self.stroke <= 0 or self.dot_radius <= 0:
            raise ValueError("render dimensions must be positive")


def _f(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(F: MarkovMultiMap, options: RenderOptions = RenderOptions()) -> str:
    """Gridlines at partition points are dashed paths; segments and verticals
    are ``<line>`` elements, monomial branches ``<polyline>``, point symbols
    ``<circle>``."""
    o = options
    lo, width = F.ambient.lo, F.ambient.length
    span = o.size - 2 * o.margin

    def X(x):
        return o.margin + float((Fraction(x) - lo) / width) * span

    def Y(y):
        return o.size - o.margin - float((Fraction(y) - lo) / width) * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{o.size}" height="{o.size}" '
        f'viewBox="0 0 {o.size} {o.size}">',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if o.gridlines:
        d = []
        for p in F.P:
            d.append(f"M{_f(X(p))} {_f(Y(F.ambient.lo))}V{_f(Y(F.ambient.hi))}")
            d.append(f"M{_f(X(F.ambient.lo))} {_f(Y(p))}H{_f(X(F.ambient.hi))}")
        out.append(
            f'<path class="grid" d="{"".join(d)}" stroke="#777" stroke-width="{_f(o.grid_stroke)}" '
            'stroke-dasharray="2 3" fill="none"/>'
        )
    if o.labels:
        for p in F.P:
            out.append(
                f'<text x="{_f(X(p))}" y="{_f(o.size - o.margin / 3)}" font-size="10" '
                f'text-anchor="middle">{format_rational(p)}</text>'
            )
    dots = []
    for prim in graph_primitives(F):
        (x0, y0), (x1, y1) = prim.start, prim.end
        if prim.kind in (SEGMENT, VERTICAL):
            out.append(
                f'<line class="{prim.kind}" data-symbol="{prim.owner}" x1="{_f(X(x0))}" y1="{_f(Y(y0))}" '
                f'x2="{_f(X(x1))}" y2="{_f(Y(y1))}" stroke="black" stroke-width="{_f(o.stroke)}" '
                'stroke-linecap="round"/>'
            )
        elif prim.kind == CURVE:
            s = F[prim.owner]
            pts = []
            for i in range(CURVE_SAMPLES + 1):
                x = x0 + (x1 - x0) * Fraction(i, CURVE_SAMPLES)
                pts.append(f"{_f(X(x))},{_f(Y(s.forward(x)))}")
            out.append(
                f'<polyline class="curve" data-symbol="{prim.owner}" points="{" ".join(pts)}" '
                f'stroke="black" stroke-width="{_f(o.stroke)}" fill="none"/>'
            )
        elif prim.kind == POINT:
            dots.append(
                f'<circle class="point" data-symbol="{prim.owner}" cx="{_f(X(x0))}" cy="{_f(Y(y0))}" '
                f'r="{_f(o.dot_radius)}" fill="black"/>'
            )
    out.extend(dots)
    out.append("</svg>")
    return "\n".join(out) + "\n"
