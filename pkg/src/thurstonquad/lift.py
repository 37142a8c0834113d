"""Lifting words through covering graphs, subgroups and homotopy classes rel A."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import DomainError, GeometryError, ValidationError
from .planar import id_key
from .quad import Covering, Quadruple, validate_dynamic
from .words import Word, alphabet, reduce


@dataclass(frozen=True)
class LiftResult:
    vertices: tuple
    edges: tuple  # (edge id, +1 forward | -1 backward)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def terminal(self):
        return self.vertices[-1]

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]


def _covering_for(q: Quadruple, v, steps: int) -> Covering:
    if q.is_finite:
        cov = q.covering()
    else:
        cov = q.covering(q.generator.depth_for(v, steps))
    if v not in cov.graph.vertices:
        raise ValidationError(f"unknown vertex {v!r}")
    return cov


def lift_word(q: Quadruple, v, w: Word) -> LiftResult:
    cov = _covering_for(q, v, len(w))
    verts, edges = [v], []
    cur = v
    for j, s in w:
        st = cov.step(cur, j, s)
        if st is None:
            raise ValidationError(f"no edge for letter x{j}^{s} at vertex {cur!r}")
        e, sign, cur = st
        edges.append((e, sign))
        verts.append(cur)
    return LiftResult(tuple(verts), tuple(edges))


def member(q: Quadruple, v, w: Word) -> bool:
    return lift_word(q, v, w).closed


def subgroup_basis(q: Quadruple, v) -> list[Word]:
    """Free basis of the image of pi_1(Γ, v): one word per edge outside a BFS tree."""
    if not q.is_finite:
        raise DomainError("subgroup bases are computed for finite covering graphs only")
    g = q.graph
    if v not in g.vertices:
        raise ValidationError(f"unknown vertex {v!r}")
    path = {v: ()}
    tree = set()
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for h in sorted(g.rotation[x], key=lambda h: (id_key(h[0]), -h[1])):
            e = g.edges[h[0]]
            y = g.target(h)
            if y not in path:
                path[y] = path[x] + ((e.petal, h[1]),)
                tree.add(h[0])
                queue.append(y)
    basis = []
    for eid in sorted(g.edges, key=id_key):
        if eid in tree:
            continue
        e = g.edges[eid]
        word = Word(path[e.tail]) * Word(((e.petal, 1),)) * Word(path[e.head]).inverse()
        basis.append(reduce(word))
    return basis


# homotopy classes rel A --------------------------------------------------------


def crossing_word(q: Quadruple, pts: Sequence[complex]) -> Word:
    """Reduced word of signed crossings with the downward rays from the marked points.

    The dual generator y_i belongs to the marked point surrounded by petal i.
    """
    z = np.asarray(pts, dtype=complex)
    if len(z) < 2:
        return Word((), "y")
    p, r = z[:-1], z[1:]
    events = []
    for mp in q.marked:
        ax, ay = mp.z.real, mp.z.imag
        j = q.marked_index(mp.id)
        fwd = (p.real < ax) & (ax <= r.real)
        back = (r.real < ax) & (ax <= p.real)
        hit = fwd | back
        vertical = (p.real == ax) & (r.real == ax)
        if np.any(vertical & (np.minimum(p.imag, r.imag) <= ay) & (ay <= np.maximum(p.imag, r.imag))):
            raise GeometryError(f"path runs through marked point {mp.name or mp.id}")
        idx = np.nonzero(hit)[0]
        if len(idx) == 0:
            continue
        dx = r.real[idx] - p.real[idx]
        s = (ax - p.real[idx]) / dx
        y = p.imag[idx] + s * (r.imag[idx] - p.imag[idx])
        close = np.abs(y - ay) <= 1e-12 * max(1.0, abs(ay))
        if np.any(close):
            raise GeometryError(f"path meets marked point {mp.name or mp.id}; perturb the drawing")
        below = y < ay
        for i, si, sign in zip(idx[below], s[below], np.where(fwd[idx[below]], 1, -1)):
            events.append((int(i), float(si), j, int(sign)))
    events.sort()
    return reduce(Word(tuple((j, s) for _, _, j, s in events), "y"))


def lift_path_points(q: Quadruple, res: LiftResult) -> list[complex]:
    g = q.covering(None if q.is_finite else q.generator.depth_for(res.start, len(res.edges))).graph
    pts: list[complex] = []
    for e, s in res.edges:
        line = g.half_points((e, s))
        pts.extend(line if not pts else line[1:])
    if not pts:
        pts = [g.vertices[res.start]]
    return pts


def _edge_word(q: Quadruple, g, e) -> Word:
    cache = q._coverings.setdefault("crossings", {})
    if e not in cache:
        cache[e] = crossing_word(q, g.edge_points(e))
    return cache[e]


def path_class(q: Quadruple, res: LiftResult) -> Word:
    """Crossing word of a lifted path, assembled edge by edge."""
    g = q.covering(None if q.is_finite else q.generator.depth_for(res.start, len(res.edges))).graph
    letters: list = []
    for e, s in res.edges:
        w = _edge_word(q, g, e)
        letters.extend(w.letters if s > 0 else w.inverse().letters)
    return reduce(Word(tuple(letters), "y"))


def lift_class(q: Quadruple, v, w: Word) -> Word:
    res = lift_word(q, v, w)
    if not res.closed:
        raise DomainError(f"lift of {w} from {v!r} does not close")
    return path_class(q, res)


def isotopic(q1: Quadruple, q2: Quadruple, b1, b2, p: Word | None = None) -> bool:
    """Decide whether two finite quadruples define the same map up to isotopy rel A."""
    if not (q1.is_finite and q2.is_finite):
        raise DomainError("isotopy is decided for finite quadruples only")
    for q in (q1, q2):
        rep = validate_dynamic(q)
        if not rep.ok:
            raise ValidationError("isotopy needs dynamically admissible inputs: " + "; ".join(rep.lines()))
    if q1.m != q2.m or len(q1.marked) != len(q2.marked):
        raise ValidationError("quadruples do not share marked set and rose")
    p = p or Word((), "y")
    basis1 = subgroup_basis(q1, b1)
    basis2 = subgroup_basis(q2, b2)
    if not all(member(q2, b2, w) for w in basis1) or not all(member(q1, b1, w) for w in basis2):
        return False
    for w in basis1:
        c1 = lift_class(q1, b1, w)
        c2 = lift_class(q2, b2, w)
        if c1 != reduce(p * c2 * p.inverse()):
            return False
    return True


# comparing subgroups on word balls --------------------------------------------


def _product_bfs(qa: Quadruple, ba, qb: Quadruple, bb, r: int):
    """BFS over pairs of vertices reached by the same word in both coverings."""
    ca = _covering_for(qa, ba, r)
    cb = _covering_for(qb, bb, r)
    m = qa.m
    start = (ba, bb)
    parent = {start: None}
    depth = {start: 0}
    order = [start]
    queue = deque([start])
    extra = []  # non-tree transitions (state, letter, state)
    while queue:
        st = queue.popleft()
        if depth[st] == r:
            continue
        x, y = st
        for a in alphabet(m):
            sa, sb = ca.step(x, *a), cb.step(y, *a)
            if sa is None or sb is None:
                raise ValidationError(f"covering graph incomplete at {(x, y)!r}")
            nxt = (sa[2], sb[2])
            if nxt not in parent:
                parent[nxt] = (st, a)
                depth[nxt] = depth[st] + 1
                order.append(nxt)
                queue.append(nxt)
            else:
                extra.append((st, a, nxt))
    return start, parent, depth, order, extra


def _path_word(parent, st) -> tuple:
    letters = []
    while parent[st] is not None:
        st, a = parent[st]
        letters.append(a)
    return tuple(reversed(letters))


def first_disagreement(qa: Quadruple, ba, qb: Quadruple, bb, r: int) -> Word | None:
    """Shortest reduced word of length <= r closing in exactly one of the two coverings."""
    start, parent, _, order, _ = _product_bfs(qa, ba, qb, bb, r)
    for st in order:
        if (st[0] == ba) != (st[1] == bb):
            return Word(_path_word(parent, st))
    return None


def common_cycles(qa: Quadruple, ba, qb: Quadruple, bb, r: int) -> list[Word]:
    """Words generating all words of length <= r that close in both coverings."""
    start, parent, _, _, extra = _product_bfs(qa, ba, qb, bb, r)
    out = []
    seen = set()
    for st, a, nxt in extra:
        if parent.get(nxt) == (st, a):
            continue
        w = reduce(Word(_path_word(parent, st)) * Word((a,)) * Word(_path_word(parent, nxt)).inverse())
        if w.letters and w not in seen and w.inverse() not in seen:
            seen.add(w)
            out.append(w)
    return out


@dataclass
class BallCompareReport:
    radius: int
    verdicts: list = field(default_factory=list)  # (n, agree, witness or None)
    N: int | None = None
    witness: Word | None = None
    witness_index: int | None = None

    @property
    def ok(self) -> bool:
        return self.N is not None


def group_ball_compare(seq: Sequence[tuple], limit: tuple, r: int) -> BallCompareReport:
    """Compare closure verdicts on the radius-r word ball.

    ``seq`` holds ``(n, quadruple, basepoint)`` triples in increasing n;
    ``limit`` is ``(quadruple, basepoint)``. N(r) is the least index after
    which every element agrees with the limit.
    """
    if r < 0:
        raise ValueError("radius must be non-negative")
    lq, lb = limit
    rep = BallCompareReport(r)
    last_bad = None
    for n, q, b in seq:
        w = first_disagreement(q, b, lq, lb, r)
        rep.verdicts.append((n, w is None, w))
        if w is not None:
            last_bad = n
            rep.witness, rep.witness_index = w, n
    if not seq:
        return rep
    if last_bad is None:
        rep.N = seq[0][0]
        rep.witness = None
    elif last_bad != seq[-1][0]:
        later = [n for n, _, _ in seq if n > last_bad]
        rep.N = later[0]
    if rep.N is not None:
        rep.witness = rep.witness_index = None
    return rep
