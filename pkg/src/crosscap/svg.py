"""Deterministic SVG diagrams of curves gamma_I on a row of crosscaps.

Crosscaps sit as shaded circles on a horizontal axis. Each curve is a trunk
above the axis with legs dipping into the crosscaps of I; trunk height grows
with nesting depth so nested curves stay readable. One-sided curves are dashed.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .surface import CurveSymbol, curve_name


@dataclass(frozen=True)
class Layout:
    spacing: int = 60
    margin: int = 40
    radius: int = 12
    axis_y: int = 0  # filled in from the depth of the tallest trunk
    trunk_base: int = 30
    trunk_step: int = 22
    label_pad: int = 6
    font_size: int = 12
    stroke_width: float = 2.0
    dash: str = "6 4"
    crosscap_fill: str = "#d0d0d0"
    palette: tuple[str, ...] = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


LAYOUT = Layout()


def _fmt(v: float) -> str:
    return f"{v:.1f}".rstrip("0").rstrip(".")


def _element_id(curve: CurveSymbol, taken: set[str]) -> str:
    name = curve_name(curve.indices)
    base = "curve-" + (name if not name.startswith("{") else "-".join(map(str, curve.indices)))
    ident, n = base, 2
    while ident in taken:
        ident, n = f"{base}-{n}", n + 1
    taken.add(ident)
    return ident


def assign_depths(curves: list[CurveSymbol]) -> list[int]:
    """Narrow curves first; each curve sits one level above anything under its span."""
    order = sorted(range(len(curves)), key=lambda k: (curves[k].indices[-1] - curves[k].indices[0], k))
    depth = [0] * len(curves)
    placed: list[int] = []
    for k in order:
        lo, hi = curves[k].indices[0], curves[k].indices[-1]
        under = [depth[j] for j in placed if curves[j].indices[0] <= hi and curves[j].indices[-1] >= lo]
        depth[k] = 1 + max(under, default=0)
        placed.append(k)
    return depth


def render(curves: list[CurveSymbol], genus: int, layout: Layout = LAYOUT, labels: list[str] | None = None) -> str:
    """SVG document for ``curves`` on N_g. Output depends only on the arguments."""
    depths = assign_depths(curves)
    top = max(depths, default=0)
    axis_y = layout.margin + layout.font_size + layout.trunk_base + top * layout.trunk_step
    width = 2 * layout.margin + (genus - 1) * layout.spacing
    height = axis_y + layout.radius + layout.margin + layout.font_size

    def cx(i: int) -> int:
        return layout.margin + (i - 1) * layout.spacing

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<g id="crosscaps" fill="{layout.crosscap_fill}" stroke="#000" stroke-width="1">',
    ]
    for i in range(1, genus + 1):
        out.append(f'<circle id="crosscap-{i}" cx="{cx(i)}" cy="{axis_y}" r="{layout.radius}"/>')
    out.append("</g>")
    out.append(f'<g id="crosscap-labels" font-family="sans-serif" font-size="{layout.font_size}" text-anchor="middle">')
    for i in range(1, genus + 1):
        out.append(f'<text x="{cx(i)}" y="{axis_y + layout.radius + layout.font_size + 4}">{i}</text>')
    out.append("</g>")

    taken: set[str] = set()
    for k, curve in enumerate(curves):
        ident = _element_id(curve, taken)
        color = layout.palette[k % len(layout.palette)]
        ty = axis_y - layout.trunk_base - (depths[k] - 1) * layout.trunk_step
        xs = [cx(i) for i in curve.indices]
        # trunk runs over the legs; legs end at the crosscap centre
        if len(xs) == 1:
            r = layout.radius / 2
            pts = [(xs[0] - r, axis_y), (xs[0] - r, ty), (xs[0] + r, ty), (xs[0] + r, axis_y)]
        else:
            pts = [(xs[0], axis_y), (xs[0], ty)]
            for x in xs[1:]:
                pts += [(x, ty), (x, axis_y), (x, ty)]
            pts.pop()
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        dash = "" if curve.two_sided else f' stroke-dasharray="{layout.dash}"'
        side = "two-sided" if curve.two_sided else "one-sided"
        label = labels[k] if labels else curve_name(curve.indices)
        out.append(f'<g id={quoteattr(ident)} class="curve {side}">')
        out.append(
            f'<polyline points="{points}" fill="none" stroke="{color}" stroke-width="{_fmt(layout.stroke_width)}"'
            f' stroke-linejoin="round"{dash}/>'
        )
        out.append(
            f'<text x="{_fmt(xs[-1] + layout.label_pad)}" y="{_fmt(ty - layout.label_pad)}" font-family="sans-serif"'
            f' font-size="{layout.font_size}" fill="{color}">{escape(label)}</text>'
        )
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
