"""Rendering: byte-reproducible SVG 1.1 on a 1/8-px raster."""

import re

import pytest

from skelpot.fixtures import CELL_LABELS, counterexample_fixture
from skelpot.graphs import MetrizedGraph, PLFunction
from skelpot.polyhedra import Polyhedron
from skelpot.rat import Rat
from skelpot.svg import render_svg
from skelpot.toric import skeleton


def _coords(svg):
    # every numeric attribute in the document
    return re.findall(r'(?:x|y|cx|cy|x1|y1|x2|y2)="(-?[0-9.]+)"', svg) + [
        tok
        for points in re.findall(r'points="([^"]+)"', svg)
        for pair in points.split()
        for tok in pair.split(",")
    ]


def test_unit_triangle_skeleton_is_three_segments():
    tri = Polyhedron(((0, 0), (1, 0), (0, 1)))
    svg = render_svg(tri)
    assert svg.startswith("<svg ")
    assert svg.count("<line ") == 3
    assert "<polygon" not in svg


def test_byte_reproducible():
    fx = counterexample_fixture()
    a = render_svg(fx.pi, labels=list(CELL_LABELS))
    b = render_svg(fx.pi, labels=list(CELL_LABELS))
    assert a == b
    g = MetrizedGraph(["a", "b"], [(0, 1, 1, 1), (0, 1, 1, 2), (0, 0, 2, 1)])
    f = PLFunction(g, [Rat(0), Rat(1)], (((Rat(1, 2), Rat(2)),), (), ()))
    assert render_svg(g, overlay=f) == render_svg(g, overlay=f)


def _thousandths(tok):
    neg = tok.startswith("-")
    tok = tok.lstrip("-")
    whole, _, frac = tok.partition(".")
    assert len(frac) <= 3
    v = int(whole) * 1000 + int(frac.ljust(3, "0") or "0")
    return -v if neg else v


def test_raster_snapping():
    svg = render_svg(Polyhedron(((Rat(1, 3), Rat(1, 7)), (1, 1))), bbox=2)
    toks = _coords(svg)
    assert toks
    for tok in toks:
        # the 1/8-px raster: value * 1000 is an integer multiple of 125
        assert _thousandths(tok) % 125 == 0


def test_complex_clipping_and_labels():
    fx = counterexample_fixture()
    svg = render_svg(fx.pi, bbox=3, labels=list(CELL_LABELS))
    for name in CELL_LABELS:
        assert f">{name}</text>" in svg
    # unbounded cells are clipped: no coordinate leaves the canvas
    for tok in _coords(svg):
        v = float(tok)
        assert -1 <= v <= 641
    with pytest.raises(ValueError, match="label per cell"):
        render_svg(fx.pi, labels=["just-one"])


def test_bbox_validation_and_types():
    tri = Polyhedron(((0, 0), (1, 0), (0, 1)))
    with pytest.raises(ValueError):
        render_svg(tri, bbox=0)
    with pytest.raises(TypeError):
        render_svg("not renderable")
    with pytest.raises(ValueError, match="2-D"):
        render_svg([Polyhedron(((0, 0, 0),))])


def test_graph_overlay_markers():
    g = MetrizedGraph(["a", "b"], [(0, 1, 2, 1)])
    f = PLFunction(g, [Rat(0), Rat(0)], (((Rat(1), Rat(-1)),),))
    svg = render_svg(g, overlay=f)
    assert "a=0" in svg and "b=0" in svg  # vertex value labels
    assert ">-1</text>" in svg  # breakpoint value marker
    g2 = MetrizedGraph(["x", "y"], [(0, 1, 2, 1)])
    with pytest.raises(ValueError, match="different graph"):
        render_svg(g2, overlay=f)


def test_skeleton_of_refined_complex_renders():
    fx = counterexample_fixture()
    svg = render_svg(list(skeleton(fx.refined())), bbox=2)
    assert svg.count("<line ") >= 6  # two triangles
    assert svg.rstrip().endswith("</svg>")
