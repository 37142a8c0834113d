"""Planar embedded graphs stored as rotation systems.

A half-edge is a pair ``(edge_id, side)``; side ``+1`` leaves the tail of the
edge and ``-1`` leaves its head. The twin of ``(e, s)`` is ``(e, -s)``. The
rotation at a vertex lists its half-edges in counterclockwise order.

Faces are traced with the face on the left: after arriving along ``h`` the
walk continues with the clockwise neighbour of ``twin(h)``. Bounded faces are
therefore walked counterclockwise.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

from . import geometry as geo
from .errors import GeometryError, OnRealizationError, ValidationError

VertexId = Hashable
EdgeId = Hashable
HalfEdge = tuple  # (edge_id, +1 | -1)


def twin(h: HalfEdge) -> HalfEdge:
    return (h[0], -h[1])


def id_key(x) -> tuple:
    """Total order on mixed int/str/tuple ids."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(id_key(y) for y in x))
    return (3, repr(x))


def half_key(h: HalfEdge) -> tuple:
    return (id_key(h[0]), -h[1])


@dataclass(frozen=True)
class Edge:
    tail: VertexId
    head: VertexId
    petal: int | None = None
    polyline: tuple[complex, ...] | None = None

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True, eq=False)
class HalfEdgeGraph:
    vertices: Mapping[VertexId, complex | None]
    edges: Mapping[EdgeId, Edge]
    rotation: Mapping[VertexId, tuple]
    outer: HalfEdge | None = None
    basepoint: VertexId | None = None

    # structure -----------------------------------------------------------

    def origin(self, h: HalfEdge) -> VertexId:
        e = self.edges[h[0]]
        return e.tail if h[1] > 0 else e.head

    def target(self, h: HalfEdge) -> VertexId:
        return self.origin(twin(h))

    @cached_property
    def _slot(self) -> dict:
        return {h: (v, i) for v, rot in self.rotation.items() for i, h in enumerate(rot)}

    def ccw_next(self, h: HalfEdge) -> HalfEdge:
        v, i = self._slot[h]
        rot = self.rotation[v]
        return rot[(i + 1) % len(rot)]

    def cw_next(self, h: HalfEdge) -> HalfEdge:
        v, i = self._slot[h]
        rot = self.rotation[v]
        return rot[(i - 1) % len(rot)]

    def face_successor(self, h: HalfEdge) -> HalfEdge:
        return self.cw_next(twin(h))

    def half_edges(self) -> list[HalfEdge]:
        return [(e, s) for e in self.edges for s in (1, -1)]

    def degree(self, v: VertexId) -> int:
        return len(self.rotation.get(v, ()))

    @property
    def has_geometry(self) -> bool:
        return all(z is not None for z in self.vertices.values())

    def edge_points(self, e: EdgeId) -> list[complex]:
        edge = self.edges[e]
        if edge.polyline is not None:
            return list(edge.polyline)
        a, b = self.vertices[edge.tail], self.vertices[edge.head]
        if a is None or b is None:
            raise GeometryError(f"edge {e!r} has no geometry")
        if edge.is_loop:
            raise GeometryError(f"loop edge {e!r} needs a polyline")
        return [a, b]

    def half_points(self, h: HalfEdge) -> list[complex]:
        pts = self.edge_points(h[0])
        return pts if h[1] > 0 else pts[::-1]

    def neighbors(self, v: VertexId) -> list[VertexId]:
        return [self.target(h) for h in self.rotation[v]]

    def structural_errors(self) -> list[str]:
        out = []
        seen = {}
        for v, rot in self.rotation.items():
            if v not in self.vertices:
                out.append(f"rotation for unknown vertex {v!r}")
            for h in rot:
                if h in seen:
                    out.append(f"half-edge {h!r} appears twice in rotations")
                seen[h] = v
        for e, edge in self.edges.items():
            for v in (edge.tail, edge.head):
                if v not in self.vertices:
                    out.append(f"edge {e!r} references unknown vertex {v!r}")
            for s, v in ((1, edge.tail), (-1, edge.head)):
                if (e, s) not in seen:
                    out.append(f"half-edge {(e, s)!r} missing from rotation")
                elif seen[(e, s)] != v:
                    out.append(f"half-edge {(e, s)!r} listed at {seen[(e, s)]!r}, expected {v!r}")
        for h in seen:
            if h[0] not in self.edges or h[1] not in (1, -1):
                out.append(f"rotation lists unknown half-edge {h!r}")
        for v in self.vertices:
            if v not in self.rotation:
                out.append(f"vertex {v!r} has no rotation")
        if self.outer is not None and self.outer not in seen:
            out.append(f"declared outer half-edge {self.outer!r} unknown")
        return out

    def check(self) -> None:
        errs = self.structural_errors()
        if errs:
            raise ValidationError(errs[0])

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        start = next(iter(self.vertices))
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def bfs_distances(self, root: VertexId) -> dict:
        dist = {root: 0}
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.neighbors(v):
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    @cached_property
    def faces(self) -> "FaceSet":
        return trace_faces(self)

    def with_(self, **kw) -> "HalfEdgeGraph":
        return replace(self, **kw)


@dataclass(frozen=True)
class Face:
    id: int
    walk: tuple
    bounded: bool

    def vertices(self, g: HalfEdgeGraph) -> set:
        return {g.origin(h) for h in self.walk}

    def edges(self) -> set:
        return {h[0] for h in self.walk}


@dataclass(frozen=True, eq=False)
class FaceSet:
    faces: tuple[Face, ...]
    face_of: Mapping[HalfEdge, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __getitem__(self, i: int) -> Face:
        return self.faces[i]

    def left(self, h: HalfEdge) -> Face:
        return self.faces[self.face_of[h]]

    @property
    def unbounded(self) -> list[Face]:
        return [f for f in self.faces if not f.bounded]


def face_ring(g: HalfEdgeGraph, walk: Sequence[HalfEdge]) -> list[complex]:
    ring = []
    for h in walk:
        ring.extend(g.half_points(h)[:-1])
    return ring


def _walks(g: HalfEdgeGraph) -> list[tuple]:
    walks, seen = [], set()
    for h in sorted(g.half_edges(), key=half_key):
        if h in seen:
            continue
        walk = []
        cur = h
        while cur not in seen:
            seen.add(cur)
            walk.append(cur)
            cur = g.face_successor(cur)
        if cur != h:
            raise ValidationError(f"face walk from {h!r} does not close; rotation is not a permutation")
        walks.append(tuple(walk))
    return walks


def trace_faces(g: HalfEdgeGraph) -> FaceSet:
    """Compute the faces of a finite graph.

    With geometry the walk of least signed area is the unbounded one. Without
    geometry the declared outer half-edge decides, falling back to the longest
    walk.
    """
    g.check()
    walks = _walks(g)
    if not walks:
        return FaceSet((Face(0, (), False),), {})
    outer_idx = None
    if g.outer is not None:
        outer_idx = next(i for i, w in enumerate(walks) if g.outer in w)
    elif g.has_geometry and len(walks) > 1:
        areas = [geo.signed_area(face_ring(g, w)) for w in walks]
        outer_idx = min(range(len(walks)), key=lambda i: areas[i])
    else:
        outer_idx = max(range(len(walks)), key=lambda i: len(walks[i]))
    faces = tuple(Face(i, w, i != outer_idx) for i, w in enumerate(walks))
    face_of = {h: f.id for f in faces for h in f.walk}
    return FaceSet(faces, face_of)


def euler_characteristic(g: HalfEdgeGraph) -> int:
    return len(g.vertices) - len(g.edges) + len(g.faces)


def _fresh(existing: Iterable, hint) -> Hashable:
    existing = set(existing)
    if all(isinstance(x, int) and not isinstance(x, bool) for x in existing):
        return max(existing, default=-1) + 1
    for k in itertools.count():
        cand = ("sub", hint, k)
        if cand not in existing:
            return cand


def subdivide_edge(g: HalfEdgeGraph, e: EdgeId) -> HalfEdgeGraph:
    """Insert a degree-2 vertex in the middle of edge ``e``.

    The first piece keeps the id ``e``; both pieces keep label and direction.
    """
    if e not in g.edges:
        raise ValidationError(f"unknown edge {e!r}")
    edge = g.edges[e]
    w = _fresh(g.vertices, e)
    e2 = _fresh(g.edges, e)
    first = second = None
    mid = None
    if g.has_geometry:
        first, mid, second = geo.midpoint_split(g.edge_points(e))
        first, second = tuple(first), tuple(second)
    vertices = dict(g.vertices)
    vertices[w] = mid
    edges = dict(g.edges)
    edges[e] = Edge(edge.tail, w, edge.petal, first)
    edges[e2] = Edge(w, edge.head, edge.petal, second)
    rotation = dict(g.rotation)
    rotation[edge.head] = tuple((e2, -1) if h == (e, -1) else h for h in rotation[edge.head])
    rotation[w] = ((e, -1), (e2, 1))
    outer = g.outer
    if outer == (e, -1):
        outer = (e2, -1)
    return HalfEdgeGraph(vertices, edges, rotation, outer, g.basepoint)


def locate_point(g: HalfEdgeGraph, fs: FaceSet, p: complex, tol: float = 1e-9) -> int:
    """Id of the face containing ``p``; raises if ``p`` lies on the drawing."""
    if not g.has_geometry:
        raise GeometryError("point location needs geometry")
    scale = max([1.0] + [abs(z) for z in g.vertices.values()])
    for v, z in g.vertices.items():
        if abs(z - p) <= tol * scale:
            raise OnRealizationError(f"point {p} is vertex {v!r}")
    for e in g.edges:
        if geo.distance_to_polyline(g.edge_points(e), p) <= tol * scale:
            raise OnRealizationError(f"point {p} lies on edge {e!r}")
    outer = None
    for f in fs:
        if not f.bounded:
            outer = f.id
            continue
        if geo.winding_number(face_ring(g, f.walk), p) != 0:
            return f.id
    if outer is None:
        raise GeometryError("no unbounded face")
    return outer


def angular_order(g: HalfEdgeGraph, v: VertexId) -> list[HalfEdge]:
    hs = list(g.rotation[v])
    return sorted(hs, key=lambda h: (geo.tangent_angle(g.half_points(h)) % (2 * math.pi), half_key(h)))


def same_cyclic_order(a: Sequence, b: Sequence) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = list(b).index(a[0])
    except ValueError:
        return False
    return list(a) == list(b[i:]) + list(b[:i])


def validate_embedding(g: HalfEdgeGraph, check_crossings: bool = True) -> list[str]:
    """List of violated structural or geometric conditions (empty when fine)."""
    out = g.structural_errors()
    if out or not g.has_geometry:
        return out
    pts = list(g.vertices.items())
    for (u, a), (w, b) in itertools.combinations(pts, 2):
        if abs(a - b) < 1e-12:
            out.append(f"degenerate geometry: vertices {u!r} and {w!r} coincide")
    for e, edge in g.edges.items():
        try:
            line = g.edge_points(e)
        except GeometryError as err:
            out.append(f"degenerate geometry: {err}")
            continue
        if abs(line[0] - g.vertices[edge.tail]) > 1e-9 or abs(line[-1] - g.vertices[edge.head]) > 1e-9:
            out.append(f"degenerate geometry: edge {e!r} polyline does not end at its vertices")
    if out:
        return out
    for v in g.vertices:
        try:
            ang = angular_order(g, v)
        except GeometryError as err:
            out.append(f"degenerate geometry at {v!r}: {err}")
            continue
        if not same_cyclic_order(list(g.rotation[v]), ang):
            out.append(f"rotation/geometry mismatch at vertex {v!r}")
    if check_crossings:
        ids = list(g.edges)
        lines = {e: g.edge_points(e) for e in ids}
        for e, f in itertools.combinations(ids, 2):
            ee, ff = g.edges[e], g.edges[f]
            shared = {ee.tail, ee.head} & {ff.tail, ff.head}
            if geo.polylines_meet(lines[e], lines[f], [g.vertices[v] for v in shared]):
                out.append(f"edges {e!r} and {f!r} cross")
        for e in ids:
            if geo.polyline_self_crosses(lines[e]):
                out.append(f"edge {e!r} crosses itself")
    return out


def rotation_from_geometry(vertices: Mapping, edges: Mapping) -> dict:
    """Counterclockwise rotation system read off the drawing."""
    g = HalfEdgeGraph(vertices, edges, {v: () for v in vertices})
    star = {v: [] for v in vertices}
    for e, edge in edges.items():
        star[edge.tail].append((e, 1))
        star[edge.head].append((e, -1))
    rot = {}
    for v, hs in star.items():
        rot[v] = tuple(sorted(hs, key=lambda h: (geo.tangent_angle(g.half_points(h)) % (2 * math.pi), half_key(h))))
    return rot


def graph_from_geometry(vertices: Mapping, edges: Mapping, **kw) -> HalfEdgeGraph:
    return HalfEdgeGraph(dict(vertices), dict(edges), rotation_from_geometry(vertices, edges), **kw)


def relabel_dense(g: HalfEdgeGraph) -> tuple[HalfEdgeGraph, dict, dict]:
    """Copy of ``g`` with vertex and edge ids replaced by 0..n-1 (sorted order)."""
    vmap = {v: i for i, v in enumerate(sorted(g.vertices, key=id_key))}
    emap = {e: i for i, e in enumerate(sorted(g.edges, key=id_key))}
    vertices = {vmap[v]: z for v, z in g.vertices.items()}
    edges = {emap[e]: Edge(vmap[x.tail], vmap[x.head], x.petal, x.polyline) for e, x in g.edges.items()}
    rotation = {vmap[v]: tuple((emap[h[0]], h[1]) for h in rot) for v, rot in g.rotation.items()}
    outer = (emap[g.outer[0]], g.outer[1]) if g.outer is not None else None
    base = vmap.get(g.basepoint) if g.basepoint is not None else None
    return HalfEdgeGraph(vertices, edges, rotation, outer, base), vmap, emap


def cycle_graph(n: int, radius: float = 1.0, petal: int | None = 1) -> HalfEdgeGraph:
    """Counterclockwise directed cycle through the n-th roots of unity."""
    if n < 1:
        raise ValueError("cycle needs at least one vertex")
    vertices = {k: radius * cmath.exp(2j * math.pi * k / n) for k in range(n)}
    edges = {}
    steps = max(8, 64 // n)
    for k in range(n):
        a0 = 2 * math.pi * k / n
        pts = tuple(radius * cmath.exp(1j * (a0 + 2 * math.pi / n * s / steps)) for s in range(steps + 1))
        pts = (vertices[k],) + pts[1:-1] + (vertices[(k + 1) % n],)
        edges[k] = Edge(k, (k + 1) % n, petal, pts)
    return graph_from_geometry(vertices, edges)
