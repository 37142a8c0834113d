"""Finite descriptions of eventually periodic infinite plane graphs.

A generator is a core graph plus a number of arms. Each arm is a cell that
repeats along a fixed displacement; repetition ``r`` sits at
``(r - 1) * shift`` from the cell's stored coordinates. Edges of an arm come
in three kinds:

* ``edges``: both ends inside one repetition;
* ``links``: join repetition ``r - 1`` (names written ``^x``) to ``r``,
  stored with the coordinates of the link between repetitions 1 and 2;
* ``attach``: join the core (``^x`` names a core vertex) to repetition 1.

Vertex ids in expansions are ``("c", name)`` for core vertices and
``(arm, r, name)`` for repetition ``r`` of an arm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .errors import ValidationError
from .planar import Edge, HalfEdgeGraph, graph_from_geometry


@dataclass(frozen=True)
class Arm:
    name: str
    shift: complex
    vertices: Mapping[str, complex]
    edges: Mapping[str, Edge] = field(default_factory=dict)
    links: Mapping[str, Edge] = field(default_factory=dict)
    attach: Mapping[str, Edge] = field(default_factory=dict)


@dataclass(frozen=True)
class Window:
    graph: HalfEdgeGraph
    complete: frozenset
    depth: int


def _shift(pts, d):
    return None if pts is None else tuple(p + d for p in pts)


@dataclass(frozen=True, eq=False)
class GraphGenerator:
    core_vertices: Mapping[str, complex]
    core_edges: Mapping[str, Edge]
    arms: tuple[Arm, ...]
    basepoint: str

    def __post_init__(self):
        errs = self.problems()
        if errs:
            raise ValidationError(errs[0])

    def problems(self) -> list[str]:
        out = []
        if self.basepoint not in self.core_vertices:
            out.append(f"basepoint {self.basepoint!r} is not a core vertex")
        for name, e in self.core_edges.items():
            for v in (e.tail, e.head):
                if v not in self.core_vertices:
                    out.append(f"core edge {name!r} references unknown vertex {v!r}")
        seen_arms = set()
        for arm in self.arms:
            if arm.name in seen_arms or arm.name == "c":
                out.append(f"bad or duplicate arm name {arm.name!r}")
            seen_arms.add(arm.name)
            names = list(arm.edges) + list(arm.links) + list(arm.attach)
            if len(names) != len(set(names)):
                out.append(f"arm {arm.name!r} reuses an edge name")
            for name, e in arm.edges.items():
                for v in (e.tail, e.head):
                    if v not in arm.vertices:
                        out.append(f"arm {arm.name!r} edge {name!r}: unknown vertex {v!r}")
            for name, e in arm.links.items():
                for v in (e.tail, e.head):
                    if v.lstrip("^") not in arm.vertices:
                        out.append(f"arm {arm.name!r} link {name!r}: unknown vertex {v!r}")
                if e.tail.startswith("^") == e.head.startswith("^"):
                    out.append(f"arm {arm.name!r} link {name!r} must join consecutive repetitions")
            for name, e in arm.attach.items():
                for v in (e.tail, e.head):
                    pool = self.core_vertices if v.startswith("^") else arm.vertices
                    if v.lstrip("^") not in pool:
                        out.append(f"arm {arm.name!r} attach {name!r}: unknown vertex {v!r}")
                if e.tail.startswith("^") == e.head.startswith("^"):
                    out.append(f"arm {arm.name!r} attach {name!r} must join core and first repetition")
            if not arm.links:
                out.append(f"arm {arm.name!r} has no links")
        return out

    @property
    def root(self):
        return ("c", self.basepoint)

    @lru_cache(maxsize=64)
    def expand(self, k: int) -> HalfEdgeGraph:
        """Core plus ``k`` repetitions of every arm."""
        if k < 0:
            raise ValueError("k must be non-negative")
        vertices: dict = {}
        edges: dict = {}
        for v, z in self.core_vertices.items():
            vertices[("c", v)] = z
        for name, e in self.core_edges.items():
            edges[("c", name)] = Edge(("c", e.tail), ("c", e.head), e.petal, e.polyline)
        for arm in self.arms:
            a = arm.name
            for r in range(1, k + 1):
                d = (r - 1) * arm.shift
                for v, z in arm.vertices.items():
                    vertices[(a, r, v)] = z + d
                for name, e in arm.edges.items():
                    edges[(a, r, name)] = Edge((a, r, e.tail), (a, r, e.head), e.petal, _shift(e.polyline, d))

                if r == 1:
                    for name, e in arm.attach.items():
                        ends = [("c", x[1:]) if x.startswith("^") else (a, 1, x) for x in (e.tail, e.head)]
                        edges[(a, 1, name)] = Edge(ends[0], ends[1], e.petal, e.polyline)
                else:
                    dl = (r - 2) * arm.shift
                    for name, e in arm.links.items():
                        ends = [(a, r - 1, x[1:]) if x.startswith("^") else (a, r, x) for x in (e.tail, e.head)]
                        edges[(a, r, name)] = Edge(ends[0], ends[1], e.petal, _shift(e.polyline, dl))
        return graph_from_geometry(vertices, edges, basepoint=self.root)

    @lru_cache(maxsize=64)
    def window(self, k: int) -> Window:
        g = self.expand(k)
        nxt = self.expand(k + 1)
        complete = frozenset(v for v in g.vertices if g.degree(v) == nxt.degree(v))
        return Window(g, complete, k)

    def rep_of(self, v) -> int:
        return 0 if v[0] == "c" else v[1]

    def depth_for(self, v, steps: int) -> int:
        """A window depth whose complete part contains every walk of ``steps`` edges from ``v``."""
        return self.rep_of(v) + steps + 1

    @property
    def petals(self) -> set:
        out = {e.petal for e in self.core_edges.values()}
        for arm in self.arms:
            for group in (arm.edges, arm.links, arm.attach):
                out |= {e.petal for e in group.values()}
        return out
