"""Polynomial approximants of a generator-backed quadruple.

The ball K_n around the basepoint is closed up face by face: every face with
a bounded label whose boundary leaves K_n gets one new edge joining the two
ends of its boundary chain. The result is a finite quadruple whose degree is
the number of vertices of K_n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from . import geometry as geo
from .errors import ValidationError
from .generator import GraphGenerator
from .lift import common_cycles, group_ball_compare, lift_class
from .planar import Edge, HalfEdgeGraph, id_key
from .quad import (CHECK_DEPTH, INFINITY_LABEL, Covering, Quadruple, face_infos, place_marked,
                   validate_dynamic, walk_label)
from .words import Word


def ball(source: GraphGenerator | HalfEdgeGraph, n: int, root=None) -> HalfEdgeGraph:
    """Vertices within distance n of the root and edges with an end within n - 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if isinstance(source, GraphGenerator):
        host = source.expand(n + 2)
        root = source.root
    else:
        host = source
        root = root if root is not None else (source.basepoint if source.basepoint is not None
                                              else min(source.vertices, key=id_key))
    dist = _distances(host, root, n)
    verts = {v for v, d in dist.items() if d <= n}
    edges = {e: x for e, x in host.edges.items()
             if min(dist.get(x.tail, n + 1), dist.get(x.head, n + 1)) <= n - 1}
    rotation = {v: tuple(h for h in host.rotation[v] if h[0] in edges) for v in verts}
    return HalfEdgeGraph({v: host.vertices[v] for v in verts}, edges, rotation, basepoint=root)


def _distances(g: HalfEdgeGraph, root, limit: int) -> dict:
    dist = {root: 0}
    frontier = [root]
    while frontier and dist[frontier[0]] < limit:
        nxt = []
        for v in frontier:
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    nxt.append(w)
        frontier = nxt
    return dist


@dataclass(frozen=True)
class PartialFaceChain:
    petal: int
    vertices: tuple  # u ... v along the direction of the edges
    edges: tuple
    e_u: Hashable  # incoming edge of Γ at u, outside K
    e_v: Hashable  # outgoing edge of Γ at v, outside K
    bounded: bool
    outside: tuple  # edges of ∂F from v back to u (bounded) or the forward tail
    tail_in: tuple = ()  # edges of ∂F running into u (unbounded case)

    @property
    def u(self):
        return self.vertices[0]

    @property
    def v(self):
        return self.vertices[-1]


def _petal_count(gen: GraphGenerator) -> int:
    return max(p for p in gen.petals if p is not None)


def partial_faces(gen: GraphGenerator, K: HalfEdgeGraph, n: int, m: int | None = None) -> list[PartialFaceChain]:
    m = m or _petal_count(gen)
    W = gen.window(n + 2)
    cov = Covering(W.graph)
    kv = set(K.vertices)
    ke = set(K.edges)
    chains = []
    for j in range(1, m + 1):
        kout = {}
        kin = {}
        for e, x in K.edges.items():
            if x.petal == j:
                kout[x.tail] = e
                kin[x.head] = e
        for u in sorted(kv, key=id_key):
            if u in kin:
                continue
            verts, edges = [u], []
            cur = u
            while cur in kout:
                e = kout[cur]
                edges.append(e)
                cur = K.edges[e].head
                verts.append(cur)
            v = cur
            e_v = cov.out[(v, j)]
            e_u = cov.inc[(u, j)]
            outside, bounded = _walk_out(cov, W.complete, kv, v, u, j, +1)
            tail_in = ()
            if not bounded:
                tail_in, back_closed = _walk_out(cov, W.complete, kv, u, v, j, -1)
                if back_closed:
                    raise ValidationError("face boundary closes backward but not forward")
            chains.append(PartialFaceChain(j, tuple(verts), tuple(edges), e_u, e_v, bounded,
                                           outside, tail_in))
    return chains


def _walk_out(cov: Covering, complete, kv, start, goal, j: int, sign: int):
    """Follow the j-orbit out of K from ``start``; returns (edges, reached goal)."""
    edges = []
    cur = start
    while True:
        st = cov.step(cur, j, sign)
        if st is None:
            return tuple(edges), False
        e, _, cur = st
        edges.append(e)
        if cur == goal:
            return tuple(edges), True
        if cur in kv:
            raise ValidationError(f"chain claim violated: face boundary re-enters the ball at {cur!r}")
        if cur not in complete:
            return tuple(edges), False


def _tail_points(g: HalfEdgeGraph, edges, sign: int) -> list[complex]:
    pts: list[complex] = []
    for e in edges:
        line = g.edge_points(e)
        if sign < 0:
            line = line[::-1]
        pts.extend(line if not pts else line[1:])
    return pts


def _left_step(a: complex, b: complex, frac: float = 0.1) -> complex:
    """Displacement of ``a`` by a fraction of segment ab along its left normal."""
    return 1j * (b - a) * frac


def _closing_geometry(g: HalfEdgeGraph, ch: PartialFaceChain, radius: float) -> tuple[complex, ...]:
    if ch.e_u == ch.e_v:
        return tuple(g.edge_points(ch.e_v))
    if ch.bounded:
        return tuple(geo.offset_polyline(_tail_points(g, ch.outside, +1), 0.1))
    fwd = _tail_points(g, ch.outside, +1)  # v -> far end
    back = _tail_points(g, ch.tail_in, -1)[::-1]  # far end -> u
    f_off = geo.offset_polyline(fwd, 0.1)
    f_off[-1] = fwd[-1] + _left_step(fwd[-1], fwd[-1] + (fwd[-1] - fwd[-2]))
    b_off = geo.offset_polyline(back, 0.1)
    b_off[0] = back[0] + _left_step(back[0], back[1])
    a0, a1 = cmath.phase(f_off[-1]), cmath.phase(b_off[0])
    while a1 <= a0:
        a1 += 2 * math.pi
    steps = max(8, int((a1 - a0) / (math.pi / 90)))
    arc = [radius * cmath.exp(1j * (a0 + (a1 - a0) * k / steps)) for k in range(steps + 1)]
    return tuple(f_off + arc + b_off)


def close(K: HalfEdgeGraph, chains: Sequence[PartialFaceChain], host: HalfEdgeGraph) -> HalfEdgeGraph:
    """Add one closing edge per chain, from v to u, in the slots of e_v and e_u."""
    edges = dict(K.edges)
    replace: dict = {}
    extent = max(abs(z) for z in host.vertices.values() if z is not None)
    rank = 0
    for ch in chains:
        fid = ("F", ch.petal, ch.u)
        radius = 0.0
        if not ch.bounded and ch.e_u != ch.e_v:
            rank += 1
            radius = extent * (1.5 + 0.1 * rank) + 1.0
        geom = _closing_geometry(host, ch, radius) if host.has_geometry else None
        edges[fid] = Edge(ch.v, ch.u, ch.petal, geom)
        for old, new in (((ch.e_v, 1), (fid, 1)), ((ch.e_u, -1), (fid, -1))):
            if old in replace:
                raise ValidationError(f"slot conflict at half-edge {old!r}")
            replace[old] = new
    rotation = {}
    for v in K.vertices:
        rot = []
        for h in host.rotation[v]:
            if h in replace:
                rot.append(replace[h])
            elif h[0] in K.edges:
                rot.append(h)
        rotation[v] = tuple(rot)
    return HalfEdgeGraph(dict(K.vertices), edges, rotation, basepoint=K.basepoint)


@dataclass(frozen=True)
class DegreeRow:
    face: int
    petal: int
    n_vertices: int
    limit_vertices: float  # math.inf for a tract
    marked: tuple

    @property
    def case(self) -> int:
        return 2 if math.isinf(self.limit_vertices) else 1


@dataclass
class ApproxReport:
    n: int
    quad: Quadruple
    dynamic: bool
    violations: list
    threshold: int | None
    table: list = field(default_factory=list)

    @property
    def below_threshold(self) -> bool:
        return self.threshold is None or self.n < self.threshold

    def status(self) -> str:
        if self.dynamic:
            return "dynamically admissible"
        return "not yet dynamically admissible"

    def lines(self) -> list[str]:
        g = self.quad.graph
        out = [f"n: {self.n}", f"vertices: {len(g.vertices)}", f"edges: {len(g.edges)}",
               f"threshold: {'none' if self.threshold is None else self.threshold}",
               f"status: {self.status()}"]
        out += [f"violation: {v}" for v in self.violations]
        for row in self.table:
            lim = "inf" if math.isinf(row.limit_vertices) else row.limit_vertices
            out.append(f"face {row.face}: petal {row.petal} degree {row.n_vertices} vs {lim} case ({row.case})")
        return out


def threshold(q: Quadruple) -> int | None:
    """Least n for which every bounded face of Γ holding a marked point lies inside K_n."""
    gen = q.generator
    depth = CHECK_DEPTH
    g = gen.expand(depth + 3)
    dist = _distances(g, gen.root, 10 ** 9)
    infos = {fi.face.id: fi for fi in face_infos(q, depth)}
    need = 0
    for pl in place_marked(q, depth):
        if pl.on_graph or not pl.bounded:
            return None
        walk = infos[pl.face].face.walk
        w = gen.expand(depth)
        for h in walk:
            x = w.edges[h[0]]
            need = max(need, 1 + min(dist[x.tail], dist[x.head]))
    return need


def approximate(q: Quadruple, n: int) -> ApproxReport:
    gen = q.generator
    if gen is None:
        raise ValidationError("approximation needs a generator-backed quadruple")
    K = ball(gen, n)
    chains = partial_faces(gen, K, n, q.m)
    g = close(K, chains, gen.expand(n + 2))
    qn = Quadruple(q.marked, q.rose, graph=g, parabolic=True, parabolic_note="finite",
                   basepoint=gen.root)
    rep = validate_dynamic(qn)
    out = ApproxReport(n, qn, rep.ok, rep.lines(), threshold(q))
    out.table = degree_report(q, qn)
    return out


def degree_report(limit: Quadruple, qn: Quadruple) -> list[DegreeRow]:
    gen = limit.generator
    g = qn.graph
    depth = max(gen.rep_of(v) for v in g.vertices) + 6
    host = gen.expand(depth)
    if any(v not in host.vertices for v in g.vertices):
        raise ValidationError("provenance mismatch: approximant vertices are not limit vertices")
    W = gen.window(depth)
    cov = limit.covering(depth)
    where = {}
    for pl in place_marked(qn):
        where.setdefault(pl.face, []).append(pl.marked)
    rows = []
    for f in g.faces:
        if not f.bounded:
            continue
        lab = walk_label(g, f.walk)
        if lab == INFINITY_LABEL:
            continue
        x = g.origin(f.walk[0])
        cur, size = x, 0
        while True:
            if cur not in W.complete:
                size = math.inf
                break
            cur = cov.step(cur, lab, 1)[2]
            size += 1
            if cur == x:
                break
        rows.append(DegreeRow(f.id, lab, len(f.vertices(g)), size, tuple(where.get(f.id, ()))))
    return rows


@dataclass(frozen=True)
class Embedding:
    found: bool
    vertex_map: dict
    edge_map: dict
    witness: str = ""


def rooted_embed(K: HalfEdgeGraph, host: Quadruple | HalfEdgeGraph, roots: tuple) -> Embedding:
    """Label-, direction- and rotation-preserving injective map of K into the host."""
    hg = host.graph if isinstance(host, Quadruple) else host
    cov = Covering(hg)
    rk, rh = roots
    if rk not in K.vertices or rh not in hg.vertices:
        return Embedding(False, {}, {}, "unknown root")
    vmap = {rk: rh}
    emap: dict = {}
    stack = [rk]
    while stack:
        v = stack.pop()
        w = vmap[v]
        images = []
        for h in K.rotation[v]:
            e = K.edges[h[0]]
            st = cov.step(w, e.petal, h[1])
            if st is None:
                return Embedding(False, vmap, emap, f"no x{e.petal} edge at {w!r}")
            he, _, y = st
            if h[0] in emap and emap[h[0]] != he:
                return Embedding(False, vmap, emap, f"edge {h[0]!r} maps inconsistently")
            emap[h[0]] = he
            images.append((he, h[1]))
            x = K.target(h)
            if x in vmap:
                if vmap[x] != y:
                    return Embedding(False, vmap, emap, f"edge {h[0]!r} closes up differently")
            else:
                vmap[x] = y
                stack.append(x)
        rot = list(hg.rotation[w])
        pos = [rot.index(im) for im in images]
        if pos and sorted(pos) != pos[pos.index(min(pos)):] + pos[:pos.index(min(pos))]:
            return Embedding(False, vmap, emap, f"rotation order differs at {v!r}")
    if len(set(vmap.values())) != len(vmap):
        return Embedding(False, vmap, emap, "two vertices share an image")
    if len(set(emap.values())) != len(emap):
        return Embedding(False, vmap, emap, "two edges share an image")
    return Embedding(True, vmap, emap)


@dataclass
class ConvergenceReport:
    radius: int
    ok: bool
    N: int | None
    witness: Word | None = None
    witness_index: int | None = None
    reason: str = ""
    checked_cycles: int = 0


def check_comb_convergence(limit: Quadruple, seq: Sequence[tuple], r: int) -> ConvergenceReport:
    """Closure verdicts and homotopy classes of closed lifts on the radius-r ball.

    ``seq`` is a list of ``(n, quadruple)`` pairs. Condition (2) is checked on
    the words generating every loop of length <= r that lifts to a loop in
    both coverings.
    """
    lb = limit.root
    cmp = group_ball_compare([(n, q, q.root) for n, q in seq], (limit, lb), r)
    if not cmp.ok:
        return ConvergenceReport(r, False, None, cmp.witness, cmp.witness_index,
                                 "closure verdicts differ")
    count = 0
    for n, q in seq:
        if n < cmp.N:
            continue
        for w in common_cycles(q, q.root, limit, lb, r):
            count += 1
            a, b = lift_class(q, q.root, w), lift_class(limit, lb, w)
            if a != b:
                return ConvergenceReport(r, False, None, w, n,
                                         f"lift classes differ: {a} vs {b}", count)
    return ConvergenceReport(r, True, cmp.N, checked_cycles=count)
