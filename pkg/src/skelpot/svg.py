"""Deterministic SVG 1.1 rendering of 2-D objects.

Raster rule: every emitted coordinate is an exact rational snapped to a
1/8-px grid (round-half-up), printed as a decimal with at most three
places (1/8 = 0.125 is exact).  No floating point is involved anywhere,
so equal input yields byte-identical output.

Renderable objects: a metrized graph (optionally with a PL overlay), a
polyhedral complex (cells clipped to the bounding box and labeled), a
single polyhedron, or a sequence of polyhedra (drawn as a skeleton:
1-dimensional pieces and polygon boundaries become line segments).
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .graphs import MetrizedGraph, PLFunction
from .polyhedra import (
    Polyhedron,
    convex_hull_2d,
    intersect2,
    minimalize,
    poly_contains,
    poly_dim,
)
from .rat import Rat, rat, rat_str, rfloor, vec_add, vec_scale, vec_sub
from .toric import PolyComplex

_SIZE = 640
_MARGIN = 80
_RASTER = 8

_PALETTE = (
    "#3366cc",
    "#dc3912",
    "#ff9900",
    "#109618",
    "#990099",
    "#0099c6",
    "#dd4477",
    "#66aa00",
)

_HEADER = (
    '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
    f'width="{_SIZE}" height="{_SIZE}" viewBox="0 0 {_SIZE} {_SIZE}">'
)
_BACKGROUND = f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE}" fill="#ffffff"/>'


def _snap(q) -> str:
    """Exact rational -> decimal string on the 1/8-px raster."""
    eighths = rfloor(rat(q) * _RASTER + Rat(1, 2))
    thousandths = eighths * 125
    sign = "-" if thousandths < 0 else ""
    whole, frac = divmod(abs(thousandths), 1000)
    if frac == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}." + f"{frac:03d}".rstrip("0")


def _xy(p) -> str:
    return f"{_snap(p[0])},{_snap(p[1])}"


def _line(p, q, color: str, width: str = "2") -> str:
    return (
        f'<line x1="{_snap(p[0])}" y1="{_snap(p[1])}" x2="{_snap(q[0])}" '
        f'y2="{_snap(q[1])}" stroke="{color}" stroke-width="{width}"/>'
    )


def _circle(p, r: str, fill: str) -> str:
    return f'<circle cx="{_snap(p[0])}" cy="{_snap(p[1])}" r="{r}" fill="{fill}"/>'


def _text(p, s: str, size: str = "14", anchor: str = "start") -> str:
    return (
        f'<text x="{_snap(p[0])}" y="{_snap(p[1])}" font-family="monospace" '
        f'font-size="{size}" text-anchor="{anchor}" fill="#111111">{escape(s)}</text>'
    )


def _document(body) -> str:
    return "\n".join([_HEADER, _BACKGROUND, *body, "</svg>"]) + "\n"


# ---------------------------------------------------------------------------
# Plane mapping for polyhedral data
# ---------------------------------------------------------------------------


class _Plane:
    """Maps the box [-b, b]^2 to the canvas, y pointing up."""

    def __init__(self, b):
        b = rat(b)
        if b <= 0:
            raise ValueError("bounding box half-width must be positive")
        self.b = b
        self.scale = Rat(_SIZE - 2 * _MARGIN) / (2 * b)

    def to_px(self, p):
        x = _MARGIN + (rat(p[0]) + self.b) * self.scale
        y = _SIZE - _MARGIN - (rat(p[1]) + self.b) * self.scale
        return (x, y)

    def box(self) -> Polyhedron:
        b = self.b
        return Polyhedron(((-b, -b), (b, -b), (b, b), (-b, b)))


def _clip_thin(poly: Polyhedron, plane: _Plane):
    """Clip a point / segment / half-line / line to the box.

    Parametric: write the piece as base + t*d and shrink the t-interval by
    each box halfplane.  intersect2 cannot be used here because halfplane
    representations only exist for full-dimensional cells."""
    slim = minimalize(poly)
    pts, rays = slim.gen_points, slim.gen_rays
    base = pts[0]
    d = None
    for p in pts[1:]:
        d = vec_sub(p, base)
    if rays:
        d = rays[0]
    if d is None:
        return [base] if poly_contains(plane.box(), base) else None
    axis = 0 if d[0] != 0 else 1
    ts = [(p[axis] - base[axis]) / d[axis] for p in pts]
    lo, hi = min(ts), max(ts)
    for r in rays:  # parallel to d since dim(poly) = 1
        if r[axis] / d[axis] > 0:
            hi = None
        else:
            lo = None
    b = plane.b
    for n, c in (((1, 0), b), ((-1, 0), b), ((0, 1), b), ((0, -1), b)):
        a = n[0] * d[0] + n[1] * d[1]
        room = rat(c) - (n[0] * base[0] + n[1] * base[1])
        if a == 0:
            if room < 0:
                return None
        elif a > 0:
            hi = room / a if hi is None else min(hi, room / a)
        else:
            lo = room / a if lo is None else max(lo, room / a)
    if lo > hi:
        return None
    at = lambda t: vec_add(base, vec_scale(t, d))  # noqa: E731
    return [at(lo)] if lo == hi else [at(lo), at(hi)]


def _clipped_hull(poly: Polyhedron, plane: _Plane):
    """Hull vertices of poly ∩ box, in drawing order; None when disjoint."""
    if poly_dim(poly) < 2:
        return _clip_thin(poly, plane)
    cut = intersect2(poly, plane.box())
    if cut is None:
        return None
    pts = minimalize(cut).gen_points
    if len(pts) > 2:
        return convex_hull_2d(pts)
    return list(pts)


def _render_complex(pc: PolyComplex, bbox, labels) -> str:
    plane = _Plane(bbox)
    if labels is None:
        labels = [f"c{i}" for i in range(len(pc.cells))]
    if len(labels) != len(pc.cells):
        raise ValueError("one label per cell required")
    fills, edges, texts = [], [], []
    for i, cell in enumerate(pc.cells):
        hull = _clipped_hull(cell, plane)
        if hull is None:
            continue
        color = _PALETTE[i % len(_PALETTE)]
        px = [plane.to_px(p) for p in hull]
        if len(px) >= 3:
            pts = " ".join(_xy(p) for p in px)
            fills.append(
                f'<polygon points="{pts}" fill="{color}" fill-opacity="0.3" '
                'stroke="#222222" stroke-width="1.5"/>'
            )
        elif len(px) == 2:
            edges.append(_line(px[0], px[1], "#222222", "1.5"))
        else:
            edges.append(_circle(px[0], "2.5", "#222222"))
        cx = sum((p[0] for p in hull), start=Rat(0)) / len(hull)
        cy = sum((p[1] for p in hull), start=Rat(0)) / len(hull)
        texts.append(_text(plane.to_px((cx, cy)), labels[i], anchor="middle"))
    return _document(fills + edges + texts)


def _render_skeleton(polys, bbox) -> str:
    plane = _Plane(bbox)
    lines, dots = [], []
    for poly in polys:
        if poly.ambient_dim != 2:
            raise ValueError("only 2-D data can be rendered")
        hull = _clipped_hull(poly, plane)
        if hull is None:
            continue
        px = [plane.to_px(p) for p in hull]
        if len(px) == 1:
            dots.append(_circle(px[0], "3", "#111111"))
        elif len(px) == 2:
            lines.append(_line(px[0], px[1], "#111111"))
        else:
            for a, b in zip(px, px[1:] + px[:1]):
                lines.append(_line(a, b, "#111111"))
    return _document(lines + dots)


# ---------------------------------------------------------------------------
# Graph drawing
# ---------------------------------------------------------------------------


def _vertex_positions(n: int):
    """Evenly spaced (by perimeter) positions on a square outline."""
    side = Rat(_SIZE - 2 * _MARGIN)
    out = []
    for k in range(n):
        d = 4 * side * k / n
        s = rfloor(d / side)
        r = d - s * side
        m = Rat(_MARGIN)
        out.append(
            {
                0: (m + r, m),
                1: (m + side, m + r),
                2: (m + side - r, m + side),
                3: (m, m + side - r),
            }[s]
        )
    return out


def _edge_polyline(pa, pb, copy_index: int, loop_index: int | None):
    """Polyline vertices for one drawn edge; parallel copies bow out."""
    if loop_index is not None:
        d = Rat(18 * (loop_index + 1))
        return [
            pa,
            vec_add(pa, (d, -d)),
            vec_add(pa, (Rat(0), -2 * d)),
            vec_add(pa, (-d, -d)),
            pa,
        ]
    mid = vec_scale(Rat(1, 2), vec_add(pa, pb))
    j = copy_index
    off = Rat(16 * ((j + 1) // 2) * (1 if j % 2 else -1))
    if off == 0:
        return [pa, pb]
    dx, dy = vec_sub(pb, pa)
    denom = max(abs(dx), abs(dy))
    perp = (-dy * off / denom, dx * off / denom)
    return [pa, vec_add(mid, perp), pb]


def _along(polyline, frac):
    """Point at parameter frac in [0, 1], linear in segment count."""
    segs = len(polyline) - 1
    t = rat(frac) * segs
    i = min(rfloor(t), segs - 1)
    local = t - i
    return vec_add(
        polyline[i], vec_scale(local, vec_sub(polyline[i + 1], polyline[i]))
    )


def _render_graph(g: MetrizedGraph, overlay: PLFunction | None) -> str:
    if overlay is not None and overlay.graph != g:
        raise ValueError("overlay function lives on a different graph")
    pos = _vertex_positions(g.n_vertices)
    pair_seen: dict = {}
    loop_seen: dict = {}
    edge_elems, marker_elems = [], []
    for e, (a, b, length, _w) in enumerate(g.edges):
        color = _PALETTE[e % len(_PALETTE)] if overlay is not None else "#555555"
        if a == b:
            k = loop_seen.get(a, 0)
            loop_seen[a] = k + 1
            line = _edge_polyline(pos[a], pos[a], 0, k)
        else:
            key = (min(a, b), max(a, b))
            j = pair_seen.get(key, 0)
            pair_seen[key] = j + 1
            line = _edge_polyline(pos[a], pos[b], j, None)
        pts = " ".join(_xy(p) for p in line)
        edge_elems.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        if overlay is not None:
            for t, val in overlay.breaks[e]:
                p = _along(line, t / length)
                marker_elems.append(_circle(p, "3", color))
                marker_elems.append(
                    _text(vec_add(p, (Rat(5), Rat(-5))), rat_str(val), size="11")
                )
    dots, labels = [], []
    for v, p in enumerate(pos):
        dots.append(_circle(p, "4", "#111111"))
        name = g.labels[v]
        if overlay is not None:
            name = f"{name}={rat_str(overlay.vertex_values[v])}"
        labels.append(_text(vec_add(p, (Rat(6), Rat(-8))), name))
    return _document(edge_elems + marker_elems + dots + labels)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def render_svg(obj, *, bbox=3, overlay: PLFunction | None = None, labels=None) -> str:
    """SVG text for a graph, complex, polyhedron or sequence of polyhedra.

    bbox is the half-width b of the clipping box [-b, b]^2 used for
    polyhedral data (unbounded cells are cut there); it is ignored for
    graphs, whose layout is combinatorial.
    """
    if isinstance(obj, MetrizedGraph):
        return _render_graph(obj, overlay)
    if isinstance(obj, PolyComplex):
        return _render_complex(obj, bbox, labels)
    if isinstance(obj, Polyhedron):
        return _render_skeleton([obj], bbox)
    if isinstance(obj, (list, tuple)) and all(isinstance(p, Polyhedron) for p in obj):
        return _render_skeleton(obj, bbox)
    raise TypeError(f"cannot render {type(obj).__name__}")
