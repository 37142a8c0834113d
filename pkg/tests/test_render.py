import dataclasses
import re

import pytest

from thurstonquad import fixtures
from thurstonquad.errors import GeometryError
from thurstonquad.planar import Edge, HalfEdgeGraph
from thurstonquad.render import PALETTE, petal_color, render


def test_cycle3_svg():
    svg = render(fixtures.load("cycle3"), "svg")
    edges = re.findall(r'class="edge petal-(\d+)"[^>]*stroke="([^"]+)"', svg)
    assert len(edges) == 3
    assert {c for _, c in edges} == {petal_color(1)}
    assert svg.count('class="arrow"') == 3
    assert svg.count('class="marked"') == 2  # once in the rose panel, once below
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")


def test_output_is_deterministic(fixture_name):
    q = fixtures.load(fixture_name)
    assert render(q, "svg") == render(q, "svg")
    assert render(q, "dot") == render(q, "dot")


def test_petal_colors_follow_labels():
    svg = render(fixtures.load("g1"), "svg", n=2)
    for j in (1, 2, 3):
        assert f'class="petal petal-{j}" points=' in svg
        assert re.search(rf'class="edge petal-{j}"[^>]*stroke="{re.escape(PALETTE[j - 1])}"', svg)


def test_generator_ball_size():
    svg = render(fixtures.load("exp"), "svg", n=2)
    assert svg.count('class="vertex"') == 5
    assert svg.count('class="edge petal-1"') == 4


def test_dot_lists_every_edge():
    dot = render(fixtures.load("cycle3"), "dot")
    assert dot.startswith("digraph covering {")
    assert dot.count("->") == 3
    assert 'label="x1"' in dot


def test_svg_needs_geometry():
    q = fixtures.load("cycle3")
    g = q.graph
    bare = HalfEdgeGraph({v: None for v in g.vertices},
                         {e: Edge(x.tail, x.head, x.petal) for e, x in g.edges.items()},
                         dict(g.rotation), basepoint=g.basepoint)
    q2 = dataclasses.replace(q, graph=bare)
    with pytest.raises(GeometryError):
        render(q2, "svg")
    assert render(q2, "dot").count("->") == 3


def test_unknown_format():
    with pytest.raises(ValueError):
        render(fixtures.load("cycle3"), "png")
