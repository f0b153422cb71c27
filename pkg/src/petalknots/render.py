"""Deterministic SVG drawings of realized petal diagrams.

SVG's y axis points down, so the picture is the plane reflected in the
x axis; that is the orientation in which crossing signs match the frozen
expansion convention.
"""
from __future__ import annotations

from dataclasses import dataclass

from .geometry import ClosedPolyline, recover_z_profile, realize_polyline
from .petal_core import LagrangianPetalDiagram, PetalPermutation, canonical_twists

__all__ = ["SvgOptions", "render_svg"]


@dataclass(frozen=True)
class SvgOptions:
    size: int = 480
    margin: int = 24
    stroke_width: float = 2.0
    halo_width: float = 7.0
    labels: bool = False
    segments_per_lobe: int = 32


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _path(points) -> str:
    head, *rest = points
    return "M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in [head] + rest)


def render_svg(obj, options: SvgOptions | None = None) -> str:
    """Render a diagram, a permutation (canonical twists) or a polyline."""
    opts = options or SvgOptions()
    if isinstance(obj, PetalPermutation):
        obj = canonical_twists(obj)
    if isinstance(obj, LagrangianPetalDiagram):
        poly = realize_polyline(obj, opts.segments_per_lobe)
    elif isinstance(obj, ClosedPolyline):
        poly = obj
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")

    xs = [p[0] for p in poly.vertices]
    ys = [p[1] for p in poly.vertices]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = (opts.size - 2 * opts.margin) / span
    cx = (max(xs) + min(xs)) / 2
    cy = (max(ys) + min(ys)) / 2

    def tr(p):
        return (opts.size / 2 + (p[0] - cx) * scale, opts.size / 2 + (p[1] - cy) * scale)

    v = [tr(p) for p in poly.vertices]
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.size}" '
        f'height="{opts.size}" viewBox="0 0 {opts.size} {opts.size}">',
        f'<rect width="{opts.size}" height="{opts.size}" fill="white"/>',
        f'<g fill="none" stroke="black" stroke-width="{_fmt(opts.stroke_width)}" '
        'stroke-linejoin="round" stroke-linecap="round">',
    ]
    if poly.lobe_marks:
        for mark in poly.lobe_marks:
            out.append(
                f'<path class="petal" data-petal="{mark.petal}" '
                f'd="{_path(v[mark.start:mark.end + 1])}"/>'
            )
    else:
        out.append(f'<path class="curve" d="{_path(v)} Z"/>')

    def over_pass(points, cls):
        out.append(
            f'<path class="{cls}-halo" stroke="white" stroke-width="{_fmt(opts.halo_width)}" '
            f'd="{_path(points)}"/>'
        )
        out.append(f'<path class="{cls}" d="{_path(points)}"/>')

    z = recover_z_profile(poly).samples
    for mark in poly.lobe_marks:
        if mark.x1 is not None:
            # the first pass through the twist crossing is the upper one
            over_pass(v[mark.x1 - 1:mark.x1 + 2], "twist-over")
    if len(poly.strand_marks) > 1:
        last = len(v) - 1
        for i in sorted(poly.strand_marks, key=lambda s: (z[poly.strand_marks[s]], s)):
            k = poly.strand_marks[i]
            before = v[k - 1] if k > 0 else v[last - 1]
            over_pass([before, v[k], v[k + 1]], "strand")
    out.append("</g>")
    for mark in poly.lobe_marks:
        if mark.x1 is not None:
            x, y = v[mark.x1]
            out.append(
                f'<circle class="twist" data-petal="{mark.petal}" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                f'r="{_fmt(2.5 * opts.stroke_width)}" fill="none" stroke="red"/>'
            )
    if opts.labels:
        centre = v[0]
        for mark in poly.lobe_marks:
            pts = v[mark.start:mark.end + 1]
            far = max(pts, key=lambda p: ((p[0] - centre[0]) ** 2 + (p[1] - centre[1]) ** 2))
            lx = centre[0] + 1.08 * (far[0] - centre[0])
            ly = centre[1] + 1.08 * (far[1] - centre[1])
            out.append(
                f'<text class="label" x="{_fmt(lx)}" y="{_fmt(ly)}" font-size="12" '
                f'text-anchor="middle">{mark.petal}</text>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
