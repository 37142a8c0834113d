"""SVG and DOT drawings of quadruples: rose panel on top, covering graph below."""

from __future__ import annotations

import cmath
import math
from typing import Sequence

from .errors import GeometryError
from .geometry import midpoint_split
from .planar import HalfEdgeGraph, id_key
from .quad import Quadruple

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
WIDTH = 640.0
PAD = 20.0


def petal_color(j: int) -> str:
    return PALETTE[(j - 1) % len(PALETTE)]


def _f(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Affine map from a bounding box into a horizontal band of the canvas."""

    def __init__(self, pts: Sequence[complex], top: float):
        xs = [p.real for p in pts]
        ys = [p.imag for p in pts]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-9)
        self.scale = (WIDTH - 2 * PAD) / span
        self.top = top
        self.height = (self.y1 - self.y0) * self.scale + 2 * PAD

    def __call__(self, z: complex) -> tuple[float, float]:
        return PAD + (z.real - self.x0) * self.scale, self.top + PAD + (self.y1 - z.imag) * self.scale


def _polyline(frame: _Frame, pts, cls: str, color: str) -> str:
    coords = " ".join(f"{_f(x)},{_f(y)}" for x, y in (frame(p) for p in pts))
    return f'<polyline class="{cls}" points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>'


def _arrow(frame: _Frame, pts, color: str) -> str:
    """Filled triangle at the middle of a polyline pointing along its direction."""
    head, mid, tail = midpoint_split(pts)
    after = tail[1] if len(tail) > 1 else tail[-1]
    before = head[-2]
    (mx, my), (ax, ay), (bx, by) = frame(mid), frame(after), frame(before)
    ang = math.atan2(ay - by, ax - bx)
    size = 7.0
    tip = complex(mx, my) + size * cmath.exp(1j * ang)
    left = complex(mx, my) + size * 0.6 * cmath.exp(1j * (ang + 2.5))
    right = complex(mx, my) + size * 0.6 * cmath.exp(1j * (ang - 2.5))
    pts_s = " ".join(f"{_f(p.real)},{_f(p.imag)}" for p in (tip, left, right))
    return f'<polygon class="arrow" points="{pts_s}" fill="{color}"/>'


def _marked(frame: _Frame, q: Quadruple) -> list[str]:
    out = []
    for p in q.marked:
        x, y = frame(p.z)
        out.append(f'<rect class="marked" x="{_f(x - 4)}" y="{_f(y - 4)}" width="8" height="8" fill="black"/>')
    return out


def graph_to_render(q: Quadruple, n: int | None = None) -> HalfEdgeGraph:
    """The covering graph itself, or the ball K_n of a generator."""
    if q.is_finite:
        return q.graph
    from .approx import ball

    return ball(q.generator, 2 if n is None else n)


def render_svg(q: Quadruple, n: int | None = None) -> str:
    g = graph_to_render(q, n)
    if not g.has_geometry:
        raise GeometryError("svg output needs vertex coordinates")
    rose_pts = [q.rose.center] + [z for p in q.rose.petals for z in p.polyline] + [p.z for p in q.marked]
    top = _Frame(rose_pts, 0.0)
    g_pts = [z for e in sorted(g.edges, key=id_key) for z in g.edge_points(e)] + list(g.vertices.values())
    g_pts += [p.z for p in q.marked]
    bottom = _Frame(g_pts, top.height)
    height = top.height + bottom.height
    body = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_f(WIDTH)}" height="{_f(height)}" '
            f'viewBox="0 0 {_f(WIDTH)} {_f(height)}">',
            '<g class="rose">']
    for p in q.rose.petals:
        body.append(_polyline(top, p.polyline, f"petal petal-{p.index}", petal_color(p.index)))
    cx, cy = top(q.rose.center)
    body.append(f'<circle class="center" cx="{_f(cx)}" cy="{_f(cy)}" r="3" fill="black"/>')
    body += _marked(top, q)
    body.append("</g>")
    body.append(f'<line x1="0" y1="{_f(top.height)}" x2="{_f(WIDTH)}" y2="{_f(top.height)}" stroke="#999"/>')
    body.append('<g class="graph">')
    for e in sorted(g.edges, key=id_key):
        edge = g.edges[e]
        color = petal_color(edge.petal or 1)
        pts = g.edge_points(e)
        body.append(_polyline(bottom, pts, f"edge petal-{edge.petal}", color))
        body.append(_arrow(bottom, pts, color))
    for v in sorted(g.vertices, key=id_key):
        x, y = bottom(g.vertices[v])
        body.append(f'<circle class="vertex" cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="black"/>')
    body += _marked(bottom, q)
    body.append("</g>")
    body.append("</svg>")
    return "\n".join(body) + "\n"


def _dot_id(v) -> str:
    text = str(v).replace('"', "'")
    return f'"{text}"'


def render_dot(q: Quadruple, n: int | None = None) -> str:
    g = graph_to_render(q, n)
    lines = ["digraph covering {", "  node [shape=point];"]
    for v in sorted(g.vertices, key=id_key):
        z = g.vertices[v]
        pos = "" if z is None else f' pos="{_f(z.real)},{_f(z.imag)}!"'
        lines.append(f"  {_dot_id(v)} [label={_dot_id(v)}{pos}];")
    for e in sorted(g.edges, key=id_key):
        edge = g.edges[e]
        lines.append(f"  {_dot_id(edge.tail)} -> {_dot_id(edge.head)} "
                     f'[label="x{edge.petal}", color="{petal_color(edge.petal or 1)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(q: Quadruple, fmt: str = "svg", n: int | None = None) -> str:
    if fmt == "svg":
        return render_svg(q, n)
    if fmt == "dot":
        return render_dot(q, n)
    raise ValueError(f"unknown format {fmt!r}")
