import math

import pytest

from thurstonquad.errors import OnRealizationError, ValidationError
from thurstonquad.planar import (
    Edge,
    HalfEdgeGraph,
    cycle_graph,
    euler_characteristic,
    graph_from_geometry,
    locate_point,
    relabel_dense,
    rotation_from_geometry,
    subdivide_edge,
    trace_faces,
    twin,
    validate_embedding,
)


def triangle():
    verts = {0: 0j, 1: 1 + 0j, 2: 0.5 + 1j}
    edges = {0: Edge(0, 1, 1), 1: Edge(1, 2, 1), 2: Edge(2, 0, 1)}
    return graph_from_geometry(verts, edges)


def theta():
    verts = {0: -1 + 0j, 1: 1 + 0j}
    edges = {0: Edge(0, 1, None, (-1, 1j, 1)), 1: Edge(0, 1), 2: Edge(0, 1, None, (-1, -1j, 1))}
    return graph_from_geometry(verts, edges)


def loop():
    return graph_from_geometry({0: 0j}, {0: Edge(0, 0, 1, (0, 1 + 1j, -1 + 1j, 0))})


def test_twin_is_involution():
    h = (3, 1)
    assert twin(twin(h)) == h and twin(h) != h


@pytest.mark.parametrize("build,n_faces", [(triangle, 2), (loop, 2), (theta, 3)])
def test_face_counts(build, n_faces):
    g = build()
    fs = trace_faces(g)
    assert len(fs) == n_faces
    assert len(fs.unbounded) == 1
    assert sum(len(f.walk) for f in fs) == 2 * len(g.edges)


def test_every_half_edge_in_one_walk():
    g = cycle_graph(5)
    seen = [h for f in g.faces for h in f.walk]
    assert sorted(seen) == sorted(g.half_edges())


def test_euler_for_cycles():
    for n in range(1, 9):
        assert euler_characteristic(cycle_graph(n)) == 2


def test_faces_without_geometry_fall_back_to_longest_walk():
    g = cycle_graph(4)
    bare = HalfEdgeGraph({v: None for v in g.vertices}, {e: Edge(x.tail, x.head, x.petal) for e, x in g.edges.items()},
                         g.rotation)
    fs = trace_faces(bare)
    assert len(fs) == 2 and len(fs.unbounded) == 1


def test_subdivide_cycle():
    g = cycle_graph(3)
    g2 = subdivide_edge(g, 0)
    assert len(g2.vertices) == 4 and len(g2.edges) == 4
    assert len(trace_faces(g2)) == 2
    assert validate_embedding(g2) == []


def test_subdivide_loop_gives_two_cycle():
    g2 = subdivide_edge(loop(), 0)
    assert len(g2.vertices) == 2 and len(g2.edges) == 2
    heads = {(x.tail, x.head) for x in g2.edges.values()}
    assert len(heads) == 2 and all(a != b for a, b in heads)


def test_subdivide_inherits_direction_and_label():
    g2 = subdivide_edge(triangle(), 0)
    new = [e for e in g2.edges if e not in (1, 2)]
    pieces = [g2.edges[e] for e in new]
    assert all(p.petal == 1 for p in pieces)
    # tail -> mid -> head
    tails = {p.tail for p in pieces}
    heads = {p.head for p in pieces}
    assert 0 in tails and 1 in heads


def test_subdivide_unknown_edge():
    with pytest.raises(ValidationError):
        subdivide_edge(triangle(), 99)


def test_locate_point():
    g = triangle()
    fs = g.faces
    inside = locate_point(g, fs, (0 + 1 + 0.5 + 1j) / 3)
    outside = locate_point(g, fs, 50 + 50j)
    assert fs[inside].bounded and not fs[outside].bounded
    with pytest.raises(OnRealizationError):
        locate_point(g, fs, 0.5 + 0j)


def test_validate_embedding_clean_and_mismatch():
    assert validate_embedding(triangle()) == []
    g = theta()
    assert validate_embedding(g) == []
    rot = dict(g.rotation)
    rot[0] = tuple(reversed(rot[0]))
    bad = g.with_(rotation=rot)
    assert any("rotation/geometry mismatch" in s for s in validate_embedding(bad))


def test_validate_embedding_degenerate():
    verts = {0: 0j, 1: 0j, 2: 1 + 1j}
    edges = {0: Edge(0, 2), 1: Edge(1, 2, None, (0, 1, 1 + 1j))}
    g = HalfEdgeGraph(verts, edges, {0: ((0, 1),), 1: ((1, 1),), 2: ((0, -1), (1, -1))})
    assert any("degenerate geometry" in s for s in validate_embedding(g))


def test_validate_embedding_crossing():
    verts = {0: -1 + 0j, 1: 1 + 0j, 2: -1j, 3: 1j}
    edges = {0: Edge(0, 1), 1: Edge(2, 3)}
    g = graph_from_geometry(verts, edges)
    assert any("cross" in s for s in validate_embedding(g))


def test_structural_errors():
    g = triangle()
    rot = dict(g.rotation)
    rot[0] = rot[0][:1]
    assert HalfEdgeGraph(g.vertices, g.edges, rot).structural_errors()
    with pytest.raises(ValidationError):
        HalfEdgeGraph(g.vertices, g.edges, rot).check()


def test_rotation_from_geometry_is_counterclockwise():
    verts = {0: 0j, 1: 1 + 0j, 2: 1j, 3: -1 + 0j}
    edges = {0: Edge(0, 1), 1: Edge(0, 2), 2: Edge(0, 3)}
    rot = rotation_from_geometry(verts, edges)
    order = [h[0] for h in rot[0]]
    i = order.index(0)
    assert order[i:] + order[:i] == [0, 1, 2]


def test_relabel_dense_roundtrip_shape():
    g = subdivide_edge(cycle_graph(3), 1)
    d, vmap, emap = relabel_dense(g)
    assert sorted(d.vertices) == list(range(len(g.vertices)))
    assert sorted(d.edges) == list(range(len(g.edges)))
    assert len(trace_faces(d)) == len(trace_faces(g))


def test_cycle_graph_geometry():
    g = cycle_graph(6)
    assert validate_embedding(g) == []
    assert all(abs(abs(z) - 1) < 1e-12 for z in g.vertices.values())
    bounded = [f for f in g.faces if f.bounded]
    assert len(bounded) == 1 and len(bounded[0].walk) == 6
    assert math.isclose(abs(g.vertices[1] - g.vertices[0]), 2 * math.sin(math.pi / 6))
