"""Static SVG drawings: the 2D cell decomposition and the Segre CM/depth diagram."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .conic import ConicTable, _hull

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac",
)
DEPTH_SHADES = ("#f4f4f4", "#dcdcdc", "#c4c4c4", "#acacac", "#949494")


def _label_key(label) -> str:
    return "t" + "_".join(map(str, label.torsion)) + "f" + "_".join(map(str, label.free))


def _ccw(points: Sequence[Sequence[Fraction]]) -> list:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def render_cells(table: ConicTable, size: int = 400, margin: int = 30) -> str:
    """Pieces of the unit square coloured by conic class (d = 2 only)."""
    for row in table:
        for p in row.pieces:
            if p.dim != 2:
                raise ValueError("cell rendering needs a rank 2 monoid")

    def xy(v):
        return (margin + float(v[0]) * size, margin + (1 - float(v[1])) * size)

    width = size + 2 * margin + 160
    height = size + 2 * margin
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    for i, row in enumerate(table):
        color = PALETTE[i % len(PALETTE)]
        key = _label_key(row.label)
        for piece in row.pieces:
            pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in map(xy, _ccw(piece.vertices)))
            out.append(
                f'<polygon class="cell" data-class="{key}" points="{pts}" fill="{color}" '
                f'stroke="black" stroke-width="1"/>'
            )
        ly = margin + 20 * i + 10
        out.append(f'<rect x="{size + 2 * margin}" y="{ly - 10}" width="12" height="12" fill="{color}"/>')
        text = escape(f"{row.label.torsion}{row.label.free} vol {row.volume}")
        out.append(f'<text x="{size + 2 * margin + 18}" y="{ly}" font-size="12">{text}</text>')
    out.append("</svg>")
    return "\n".join(out)


def render_segre(
    depths: dict[tuple[int, ...], int],
    full_dim: int,
    conic: Sequence[tuple[int, ...]] = (),
    step: int = 30,
    margin: int = 30,
) -> str:
    """Dots for CM classes, depth shading for the rest, conic hull overlaid.

    ``depths`` maps difference vectors (1 or 2 coordinates) to depth.
    """
    keys = list(depths)
    if not keys:
        raise ValueError("empty window")
    two_d = len(keys[0]) == 2
    if len(keys[0]) not in (1, 2):
        raise ValueError("Segre diagrams are drawn for 2 or 3 factors")
    xs = [k[0] for k in keys]
    ys = [k[1] for k in keys] if two_d else [0]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = (x1 - x0) * step + 2 * margin
    height = (y1 - y0) * step + 2 * margin

    def xy(p):
        y = p[1] if two_d else 0
        return (margin + (p[0] - x0) * step, margin + (y1 - y) * step)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
    ]
    levels = sorted(set(depths.values()))
    for p, dep in depths.items():
        if dep == full_dim:
            continue
        shade = DEPTH_SHADES[levels.index(dep) % len(DEPTH_SHADES)]
        x, y = xy(p)
        out.append(
            f'<rect class="depth" data-depth="{dep}" x="{x - step / 2}" y="{y - step / 2}" '
            f'width="{step}" height="{step}" fill="{shade}"/>'
        )
    ox, oy = xy((0, 0))
    out.append(f'<line x1="{margin - 10}" y1="{oy}" x2="{width - margin + 10}" y2="{oy}" stroke="black"/>')
    if two_d:
        out.append(f'<line x1="{ox}" y1="{height - margin + 10}" x2="{ox}" y2="{margin - 10}" stroke="black"/>')
    if conic:
        if two_d:
            pts = [tuple(Fraction(c) for c in p) for p in conic]
            _, verts = _hull(pts, 2)
            poly = " ".join(f"{x},{y}" for x, y in map(xy, _ccw(verts)))
            out.append(
                f'<polygon class="conic-hull" points="{poly}" fill="#4e79a7" fill-opacity="0.25" '
                f'stroke="#4e79a7" stroke-width="2"/>'
            )
        else:
            lo, hi = min(p[0] for p in conic), max(p[0] for p in conic)
            (ax, ay), (bx, _) = xy((lo, 0)), xy((hi, 0))
            out.append(f'<line class="conic-hull" x1="{ax}" y1="{ay}" x2="{bx}" y2="{ay}" '
                       f'stroke="#4e79a7" stroke-width="6" stroke-opacity="0.4"/>')
    for p, dep in sorted(depths.items()):
        if dep != full_dim:
            continue
        x, y = xy(p)
        out.append(f'<circle class="cm-dot" cx="{x}" cy="{y}" r="3.5" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out)
