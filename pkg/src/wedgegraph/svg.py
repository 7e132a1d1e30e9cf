"""Deterministic SVG drawings of instances and wedge assignments."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .connector import Assignment

ANCHOR_COLORS = {"x": "#d62728", "z": "#2ca02c", "y": "#1f77b4"}
LEAF_COLOR = "#444444"
EDGE_COLOR = "#999999"
WEDGE_COLOR = "#ff7f0e"

_SIZE = 800.0
_MARGIN = 20.0


def _fmt(v: float) -> str:
    s = f"{v:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(points, assignment: Optional[Assignment] = None, edges=None) -> str:
    """SVG text for ``points``; wedges, anchors and ``edges`` when given.

    Wedge boundary rays are drawn to 1.5 times the instance diameter.  The
    output depends only on the inputs.
    """
    P = np.asarray(points, dtype=float)
    lo = P.min(axis=0)
    hi = P.max(axis=0)
    diam = float(np.hypot(*(hi - lo)))
    if diam == 0.0:
        diam = 1.0
    reach = 1.5 * diam if assignment is not None else 0.0
    lo = lo - reach
    hi = hi + reach
    span = float(max(hi - lo)) or 1.0
    scale = (_SIZE - 2 * _MARGIN) / span

    def tx(x, y):
        # SVG y grows downwards
        return _MARGIN + (x - lo[0]) * scale, _SIZE - _MARGIN - (y - lo[1]) * scale

    dot = max(1.0, min(4.0, 400.0 / math.sqrt(len(P) + 1)))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" '
        f'viewBox="0 0 {_fmt(_SIZE)} {_fmt(_SIZE)}">',
        f'<rect width="{_fmt(_SIZE)}" height="{_fmt(_SIZE)}" fill="white"/>',
    ]
    if edges is not None and len(edges):
        out.append(f'<g stroke="{EDGE_COLOR}" stroke-width="0.6">')
        for i, j in np.asarray(edges).tolist():
            x1, y1 = tx(*P[i])
            x2, y2 = tx(*P[j])
            out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
        out.append("</g>")
    role = {}
    if assignment is not None:
        x, z, y = assignment.anchors
        for name, idx in (("y", y), ("z", z), ("x", x)):
            role[int(idx)] = name
        h = assignment.half_angle
        out.append(f'<g stroke="{WEDGE_COLOR}" stroke-width="0.5" fill="none" opacity="0.8">')
        for i, b in enumerate(assignment.bisectors.tolist()):
            ax, ay = tx(*P[i])
            parts = []
            for t in (b - h, b + h):
                ex, ey = tx(P[i, 0] + reach * math.cos(t), P[i, 1] + reach * math.sin(t))
                parts.append(f"{_fmt(ex)},{_fmt(ey)}")
            out.append(f'<polyline points="{parts[0]} {_fmt(ax)},{_fmt(ay)} {parts[1]}"/>')
        out.append("</g>")
    out.append(f'<g fill="{LEAF_COLOR}">')
    for i, (px, py) in enumerate(P.tolist()):
        if i in role:
            continue
        cx, cy = tx(px, py)
        out.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(dot)}"/>')
    out.append("</g>")
    for i in sorted(role):
        cx, cy = tx(*P[i])
        out.append(
            f'<circle class="anchor-{role[i]}" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(dot + 2)}" '
            f'fill="{ANCHOR_COLORS[role[i]]}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
