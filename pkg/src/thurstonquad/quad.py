"""Quadruples: marked set, rose, covering graph and its petal labels."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Mapping, Sequence

from . import geometry as geo
from .errors import DomainError, GeometryError, OnRealizationError, ValidationError
from .generator import GraphGenerator, Window
from .planar import (Face, FaceSet, HalfEdgeGraph, face_ring, half_key, id_key, locate_point,
                     twin)

INFINITY_LABEL = 0


@dataclass(frozen=True)
class MarkedPoint:
    id: Hashable
    z: complex
    name: str = ""


@dataclass(frozen=True)
class MarkedSet:
    points: tuple[MarkedPoint, ...]

    def __post_init__(self):
        if not self.points:
            raise ValidationError("marked set is empty")
        ids = [p.id for p in self.points]
        if len(set(ids)) != len(ids):
            raise ValidationError("duplicate marked ids")
        for i, p in enumerate(self.points):
            for q in self.points[i + 1:]:
                if abs(p.z - q.z) < 1e-12:
                    raise ValidationError(f"marked points {p.id!r} and {q.id!r} coincide")

    @classmethod
    def of(cls, coords: Sequence[complex], names: Sequence[str] | None = None) -> "MarkedSet":
        names = names or [f"a{i + 1}" for i in range(len(coords))]
        return cls(tuple(MarkedPoint(i, complex(z), n) for i, (z, n) in enumerate(zip(coords, names))))

    def __getitem__(self, mid) -> MarkedPoint:
        for p in self.points:
            if p.id == mid:
                return p
        raise KeyError(mid)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class Petal:
    index: int
    polyline: tuple[complex, ...]
    marked: Hashable


@dataclass(frozen=True)
class Rose:
    center: complex
    petals: tuple[Petal, ...]

    @property
    def m(self) -> int:
        return len(self.petals)

    def petal(self, j: int) -> Petal:
        return self.petals[j - 1]

    def marked_of(self, j: int):
        return self.petal(j).marked

    def index_of(self, marked_id) -> int:
        for p in self.petals:
            if p.marked == marked_id:
                return p.index
        raise KeyError(marked_id)


def build_rose(marked: MarkedSet, loops: Sequence[Sequence[complex]]) -> Rose:
    """Assemble a rose from closed loops based at a common center.

    Loops are reoriented counterclockwise, sorted counterclockwise by their
    initial direction at the center and matched with the marked point each
    one surrounds.
    """
    if not loops:
        raise ValidationError("rose needs at least one petal")
    center = complex(loops[0][0])
    fixed = []
    for loop in loops:
        pts = [complex(z) for z in loop]
        if abs(pts[0] - center) > 1e-9 or abs(pts[-1] - center) > 1e-9:
            raise ValidationError("petals must start and end at the common center")
        pts[0] = pts[-1] = center
        if geo.signed_area(pts) < 0:
            pts = pts[::-1]
        fixed.append(pts)
    for i in range(len(fixed)):
        if geo.polyline_self_crosses(fixed[i]):
            raise GeometryError(f"petal {i} is not simple")
        for k in range(i + 1, len(fixed)):
            if geo.polylines_meet(fixed[i], fixed[k], [center]):
                raise GeometryError("petals cross")
    fixed.sort(key=lambda pts: geo.tangent_angle(pts) % (2 * math.pi))
    petals = []
    used = set()
    for j, pts in enumerate(fixed, start=1):
        inside = [p for p in marked if geo.winding_number(pts, p.z) != 0]
        if len(inside) != 1:
            raise ValidationError(f"not surrounding: petal {j} encloses {len(inside)} marked points")
        if inside[0].id in used:
            raise ValidationError(f"not surrounding: marked point {inside[0].id!r} in two petals")
        used.add(inside[0].id)
        petals.append(Petal(j, tuple(pts), inside[0].id))
    missing = [p.id for p in marked if p.id not in used]
    if missing:
        raise ValidationError(f"not surrounding: marked points {missing} lie in no petal")
    return Rose(center, tuple(petals))


def default_rose(marked: MarkedSet, center: complex, frac: float = 1 / 3) -> Rose:
    """Teardrop petals of radius ``frac`` times the least distance among A and t."""
    pts = [p.z for p in marked] + [center]
    dmin = min(abs(a - b) for i, a in enumerate(pts) for b in pts[i + 1:])
    return build_rose(marked, [geo.teardrop(center, p.z, frac * dmin) for p in marked])


class Covering:
    """Unique outgoing/incoming edge per petal label at each vertex."""

    def __init__(self, g: HalfEdgeGraph, vertices=None):
        self.graph = g
        self.out: dict = {}
        self.inc: dict = {}
        self.clashes: list = []
        for e in sorted(g.edges, key=id_key):
            edge = g.edges[e]
            for table, v in ((self.out, edge.tail), (self.inc, edge.head)):
                key = (v, edge.petal)
                if key in table:
                    self.clashes.append((key, table[key], e))
                else:
                    table[key] = e

    def step(self, v, j: int, s: int):
        """Follow letter (j, s) from v; returns (edge, sign, next vertex) or None."""
        if s > 0:
            e = self.out.get((v, j))
            return None if e is None else (e, 1, self.graph.edges[e].head)
        e = self.inc.get((v, j))
        return None if e is None else (e, -1, self.graph.edges[e].tail)


@dataclass(frozen=True, eq=False)
class Quadruple:
    marked: MarkedSet
    rose: Rose
    graph: HalfEdgeGraph | None = None
    generator: GraphGenerator | None = None
    parabolic: bool | None = None
    parabolic_note: str = ""
    basepoint: Hashable | None = None

    def __post_init__(self):
        if (self.graph is None) == (self.generator is None):
            raise ValidationError("a quadruple needs exactly one of graph or generator")

    @property
    def m(self) -> int:
        return self.rose.m

    @property
    def is_finite(self) -> bool:
        return self.graph is not None

    @property
    def root(self):
        if self.basepoint is not None:
            return self.basepoint
        if self.generator is not None:
            return self.generator.root
        return min(self.graph.vertices, key=id_key)

    @property
    def declared_parabolic(self) -> bool:
        return True if self.is_finite else bool(self.parabolic)

    def window(self, k: int) -> Window:
        if self.generator is None:
            raise DomainError("windows exist only for generator-backed quadruples")
        return self.generator.window(k)

    @cached_property
    def _coverings(self) -> dict:
        return {}

    def covering(self, depth: int | None = None) -> Covering:
        if self.is_finite:
            depth = None
        key = depth
        if key not in self._coverings:
            g = self.graph if self.is_finite else self.generator.expand(depth)
            self._coverings[key] = Covering(g)
        return self._coverings[key]

    def marked_index(self, mid) -> int:
        return self.rose.index_of(mid)


# face views -------------------------------------------------------------------

CHECK_DEPTH = 4


@dataclass(frozen=True)
class FaceInfo:
    face: Face
    label: int
    bounded: bool
    closed: bool  # walk is a true face walk of the covering graph
    n_vertices: int


def walk_label(g: HalfEdgeGraph, walk: Sequence) -> int:
    """P_j when every edge has petal j and is walked forward, else P_inf (0)."""
    if not walk:
        return INFINITY_LABEL
    petals = {g.edges[h[0]].petal for h in walk}
    if len(petals) == 1 and all(h[1] > 0 for h in walk):
        return petals.pop()
    return INFINITY_LABEL


def working_graph(q: Quadruple, depth: int = CHECK_DEPTH) -> tuple[HalfEdgeGraph, frozenset | None]:
    if q.is_finite:
        return q.graph, None
    w = q.window(depth)
    return w.graph, w.complete


def face_infos(q: Quadruple, depth: int = CHECK_DEPTH) -> list[FaceInfo]:
    g, complete = working_graph(q, depth)
    out = []
    for f in g.faces:
        verts = f.vertices(g)
        if complete is None:
            out.append(FaceInfo(f, walk_label(g, f.walk), f.bounded, True, len(verts)))
            continue
        closed = f.bounded and verts <= complete
        if closed:
            lab = walk_label(g, f.walk)
        else:
            inner = [h for h in f.walk if g.origin(h) in complete and g.target(h) in complete]
            lab = walk_label(g, inner)
        out.append(FaceInfo(f, lab, closed, closed, len(verts)))
    return out


def label_faces(q: Quadruple, depth: int = CHECK_DEPTH) -> dict[int, int]:
    """Face id -> petal label (0 stands for P_inf).

    For generator-backed quadruples the faces are those of ``expand(depth)``.
    """
    return {fi.face.id: fi.label for fi in face_infos(q, depth)}


# validation -------------------------------------------------------------------


@dataclass
class Report:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind: str, witness: str) -> None:
        self.violations.append((kind, witness))

    def kinds(self) -> set[str]:
        return {k for k, _ in self.violations}

    def lines(self) -> list[str]:
        return [f"{k}: {w}" for k, w in self.violations]


COVERING = "covering determinism"
REGULARITY = "2m-regularity"
ROTATION = "rotation order"
FACE_PJ = "out/in share P_j face"
FACE_PINF = "in/out share P_inf face"
BOUNDED_PINF = "labeled by P_inf is unbounded"
CONNECTED = "connectivity"
LABELS = "label range"
NORMALIZATION = "petal normalization"
STRUCTURE = "structure"
ON_GRAPH = "Γ ∩ A ≠ ∅"
TWO_MARKED = "bounded face with two marked points"
UNBOUNDED_MARKED = "marked point in unbounded face"
PINF_MARKED = "marked point in P_inf face"
PARABOLIC = "parabolicity not declared"


def _slot_sequence(g: HalfEdgeGraph, v) -> list[tuple[int, int]]:
    return [(g.edges[h[0]].petal, h[1]) for h in g.rotation[v]]


def expected_slots(m: int) -> list[tuple[int, int]]:
    return [(j, s) for j in range(1, m + 1) for s in (1, -1)]


def _is_rotation_of(seq: list, target: list) -> bool:
    if len(seq) != len(target):
        return False
    n = len(seq)
    return any(seq[i:] + seq[:i] == target for i in range(n))


def validate_admissible(q: Quadruple, depth: int = CHECK_DEPTH) -> Report:
    rep = Report()
    m = q.m
    g, complete = working_graph(q, depth)
    errs = g.structural_errors()
    for e in errs:
        rep.add(STRUCTURE, e)
    if errs:
        return rep
    for e, edge in sorted(g.edges.items(), key=lambda kv: id_key(kv[0])):
        if edge.petal is None or not 1 <= edge.petal <= m:
            rep.add(LABELS, f"edge {e!r} has label {edge.petal!r}")
    if not g.is_connected():
        rep.add(CONNECTED, "covering graph is disconnected")
    checked = sorted(g.vertices if complete is None else complete, key=id_key)
    target = expected_slots(m)
    for v in checked:
        slots = _slot_sequence(g, v)
        outs = [j for j, s in slots if s > 0]
        ins = [j for j, s in slots if s < 0]
        for j in range(1, m + 1):
            if outs.count(j) != 1 or ins.count(j) != 1:
                rep.add(COVERING, f"vertex {v!r} has {outs.count(j)} outgoing and {ins.count(j)} incoming edges labeled {j}")
        if len(slots) != 2 * m:
            rep.add(REGULARITY, f"vertex {v!r} has degree {len(slots)}, expected {2 * m}")
        elif m > 1 and not _is_rotation_of(slots, target):
            rep.add(ROTATION, f"vertex {v!r} has slots {slots}")
    infos = face_infos(q, depth)
    by_id = {fi.face.id: fi for fi in infos}
    fs = g.faces
    if m > 1:
        for v in checked:
            for h in g.rotation[v]:
                edge = g.edges[h[0]]
                fi = by_id[fs.face_of[h]]
                lab = fi.label if fi.closed else _local_label(g, h, complete)
                if lab is None:
                    continue
                if h[1] > 0 and lab != edge.petal:
                    rep.add(FACE_PJ, f"at {v!r} the sector after out_{edge.petal} has label {lab}")
                if h[1] < 0 and lab != INFINITY_LABEL:
                    rep.add(FACE_PINF, f"at {v!r} the sector after in_{edge.petal} has label {lab}")
    for fi in infos:
        if fi.label == INFINITY_LABEL and fi.bounded and fi.closed:
            rep.add(BOUNDED_PINF, f"face {fi.face.id} ({fi.n_vertices} vertices) is bounded")
    _check_normalization(q, rep)
    return rep


def _local_label(g: HalfEdgeGraph, h, complete) -> int | None:
    """Label read off the part of h's face walk that stays among complete vertices."""
    if complete is None:
        return walk_label(g, g.faces.left(h).walk)
    if g.target(h) not in complete:
        return None
    run = [h]
    cur = g.face_successor(h)
    while cur != h and g.origin(cur) in complete and g.target(cur) in complete and len(run) < 64:
        run.append(cur)
        cur = g.face_successor(cur)
    return walk_label(g, run)


def _check_normalization(q: Quadruple, rep: Report) -> None:
    from .lift import crossing_word

    for p in q.rose.petals:
        try:
            w = crossing_word(q, p.polyline)
        except GeometryError as err:
            rep.add(NORMALIZATION, f"petal {p.index}: {err}")
            continue
        if not _is_conjugate_of(w.letters, (q.marked_index(p.marked), 1)):
            rep.add(NORMALIZATION, f"petal {p.index} crossing word is {w}")


def _is_conjugate_of(letters: tuple, gen: tuple) -> bool:
    """True for reduced words u g u^-1; stems passing under other marked points pick up such a u."""
    n = len(letters)
    if n % 2 == 0 or letters[n // 2] != gen:
        return False
    return all(letters[i] == (letters[n - 1 - i][0], -letters[n - 1 - i][1]) for i in range(n // 2))


@dataclass(frozen=True)
class Placement:
    marked: Hashable
    face: int | None
    label: int
    bounded: bool
    n_vertices: int
    on_graph: bool = False


def place_marked(q: Quadruple, depth: int = CHECK_DEPTH) -> list[Placement]:
    """Locate every marked point in the faces of the (windowed) covering graph."""
    g, _ = working_graph(q, depth)
    infos = {fi.face.id: fi for fi in face_infos(q, depth)}
    out = []
    for p in q.marked:
        try:
            fid = locate_point(g, g.faces, p.z)
        except OnRealizationError:
            out.append(Placement(p.id, None, INFINITY_LABEL, False, 0, True))
            continue
        fi = infos[fid]
        out.append(Placement(p.id, fid, fi.label, fi.bounded, fi.n_vertices))
    return out


def _facing_half_edge(g: HalfEdgeGraph, z: complex):
    """Half-edge whose left side faces z across the nearest point of the realization."""
    best = None
    for e in g.edges:
        pts = g.edge_points(e)
        for a, b in zip(pts[:-1], pts[1:]):
            d = b - a
            t = 0.0 if d == 0 else min(1.0, max(0.0, ((z - a) * d.conjugate()).real / abs(d) ** 2))
            dist = abs(z - (a + t * d))
            if best is None or dist < best[0]:
                side = (d.conjugate() * (z - a)).imag
                best = (dist, (e, 1 if side > 0 else -1))
    return best[1]


def locate_face(q: Quadruple, z: complex, depth: int = CHECK_DEPTH) -> FaceInfo:
    """Face of the covering graph containing an arbitrary point (GeometryError if on Γ).

    Faces of a generator window that are not closed get the label seen from
    the side of the nearest edge facing z.
    """
    g, complete = working_graph(q, depth)
    fid = locate_point(g, g.faces, complex(z))
    fi = {fi.face.id: fi for fi in face_infos(q, depth)}[fid]
    if fi.closed:
        return fi
    lab = _local_label(g, _facing_half_edge(g, complex(z)), complete)
    return FaceInfo(fi.face, INFINITY_LABEL if lab is None else lab, False, False, fi.n_vertices)


def validate_dynamic(q: Quadruple, depth: int = CHECK_DEPTH) -> Report:
    rep = validate_admissible(q, depth)
    if not rep.ok:
        return rep
    if not q.declared_parabolic:
        rep.add(PARABOLIC, "infinite covering graph without a parabolicity declaration")
    places = place_marked(q, depth)
    per_face: dict = {}
    for pl in places:
        if pl.on_graph:
            rep.add(ON_GRAPH, f"marked point {pl.marked!r} lies on the covering graph")
            continue
        if not pl.bounded:
            rep.add(UNBOUNDED_MARKED, f"marked point {pl.marked!r} lies in an unbounded face")
            continue
        per_face.setdefault(pl.face, []).append(pl.marked)
        if pl.label == INFINITY_LABEL:
            rep.add(PINF_MARKED, f"marked point {pl.marked!r} has no image in A")
    for fid, ids in per_face.items():
        if len(ids) > 1:
            rep.add(TWO_MARKED, f"face {fid} holds {ids}")
    return rep


# portraits --------------------------------------------------------------------


@dataclass(frozen=True)
class Portrait:
    arrows: Mapping[Hashable, tuple[Hashable, int]]
    singular: frozenset

    def named(self, marked: MarkedSet) -> dict:
        return {marked[a].name: (marked[b].name, w) for a, (b, w) in self.arrows.items()}

    def lines(self, marked: MarkedSet) -> list[str]:
        out = []
        for a in sorted(self.arrows, key=id_key):
            b, w = self.arrows[a]
            flag = " singular" if a in self.singular else ""
            out.append(f"{marked[a].name} -> {marked[b].name} weight {w}{flag}")
        return out


def petal_face_kinds(q: Quadruple, depth: int = 6) -> dict[int, set]:
    """For each petal j, the set of |V(∂F)| over faces labeled P_j (inf for tracts)."""
    kinds: dict = {j: set() for j in range(1, q.m + 1)}
    if q.is_finite:
        for fi in face_infos(q):
            if fi.label != INFINITY_LABEL:
                kinds[fi.label].add(fi.n_vertices if fi.bounded else math.inf)
        return kinds
    gen = q.generator
    w = gen.window(depth)
    cov = q.covering(depth)
    starts = [v for v in w.graph.vertices if gen.rep_of(v) <= 2]
    for j in range(1, q.m + 1):
        for v in starts:
            kinds[j].add(_orbit_length(cov, w.complete, v, j))
    return kinds


def _orbit_length(cov: Covering, complete, v, j) -> float:
    cur, n = v, 0
    while True:
        if cur not in complete:
            return math.inf
        st = cov.step(cur, j, 1)
        if st is None:
            return math.inf
        cur = st[2]
        n += 1
        if cur == v:
            return n


def portrait(q: Quadruple, depth: int = CHECK_DEPTH) -> Portrait:
    rep = validate_dynamic(q, depth)
    if not rep.ok:
        raise ValidationError("portrait needs a dynamically admissible quadruple: " + "; ".join(rep.lines()))
    arrows = {}
    for pl in place_marked(q, depth):
        arrows[pl.marked] = (q.rose.marked_of(pl.label), pl.n_vertices)
    singular = set()
    for j, sizes in petal_face_kinds(q).items():
        if any(s > 1 for s in sizes):
            singular.add(q.rose.marked_of(j))
    return Portrait(arrows, frozenset(singular))


# degree and classification ----------------------------------------------------

TRANSCENDENTAL = "transcendental"


def degree(q: Quadruple) -> int | str:
    return len(q.graph.vertices) if q.is_finite else TRANSCENDENTAL


@dataclass(frozen=True)
class PowerMap:
    d: int

    def __str__(self):
        return f"PowerMap({self.d})"


@dataclass(frozen=True)
class Exponential:
    def __str__(self):
        return "Exponential"


def classify_single_petal(q: Quadruple) -> PowerMap | Exponential:
    if q.m != 1:
        raise DomainError(f"single-petal classification needs m = 1, got m = {q.m}")
    if not q.is_finite:
        return Exponential()
    g = q.graph
    cov = q.covering()
    start = q.root
    cur, n = start, 0
    while True:
        st = cov.step(cur, 1, 1)
        if st is None:
            raise ValidationError(f"vertex {cur!r} has no outgoing edge")
        cur, n = st[2], n + 1
        if cur == start:
            break
    if n != len(g.vertices):
        raise ValidationError("single-petal covering graph is not one directed cycle")
    return PowerMap(n)


# equivalence ------------------------------------------------------------------


def roses_compatible(r1: Rose, r2: Rose) -> bool:
    if r1.m != r2.m:
        return False
    a = [p.marked for p in r1.petals]
    b = [p.marked for p in r2.petals]
    return any(a == b[i:] + b[:i] for i in range(len(b)))


def same_marked(m1: MarkedSet, m2: MarkedSet) -> bool:
    if len(m1) != len(m2):
        return False
    return all(p.id == q.id and abs(p.z - q.z) < 1e-9 for p, q in zip(m1, m2))


def rooted_isomorphism(g1: HalfEdgeGraph, r1, g2: HalfEdgeGraph, r2) -> dict | None:
    """Label- and rotation-preserving isomorphism sending r1 to r2, as a half-edge map."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None

    def anchored(g, v):
        rot = list(g.rotation[v])
        labs = [(g.edges[h[0]].petal, h[1]) for h in rot]
        k = labs.index(min(labs)) if labs else 0
        return rot[k:] + rot[:k]

    vmap = {r1: r2}
    hmap: dict = {}
    stack = [r1]
    while stack:
        v = stack.pop()
        w = vmap[v]
        a, b = anchored(g1, v), anchored(g2, w)
        if len(a) != len(b):
            return None
        for h, k in zip(a, b):
            if (g1.edges[h[0]].petal, h[1]) != (g2.edges[k[0]].petal, k[1]):
                return None
            if h in hmap and hmap[h] != k:
                return None
            hmap[h] = k
            hmap[twin(h)] = twin(k)
            x, y = g1.target(h), g2.target(k)
            if x in vmap:
                if vmap[x] != y:
                    return None
            else:
                vmap[x] = y
                stack.append(x)
    if len(set(vmap.values())) != len(vmap) or len(vmap) != len(g1.vertices):
        return None
    return hmap


def dyn_equivalent(q1: Quadruple, q2: Quadruple) -> bool:
    if not (q1.is_finite and q2.is_finite):
        raise DomainError("equivalence is decided for finite quadruples only")
    for q in (q1, q2):
        rep = validate_dynamic(q)
        if not rep.ok:
            raise ValidationError("equivalence needs dynamically admissible inputs: " + "; ".join(rep.lines()))
    if not same_marked(q1.marked, q2.marked) or not roses_compatible(q1.rose, q2.rose):
        raise ValidationError("quadruples do not share marked set and rose")
    g1, g2 = q1.graph, q2.graph
    f1 = {pl.marked: pl.face for pl in place_marked(q1)}
    f2 = {pl.marked: pl.face for pl in place_marked(q2)}
    r1 = min(g1.vertices, key=id_key)
    for r2 in sorted(g2.vertices, key=id_key):
        hmap = rooted_isomorphism(g1, r1, g2, r2)
        if hmap is None:
            continue
        face_map = {}
        for f in g1.faces:
            face_map[f.id] = g2.faces.face_of[hmap[f.walk[0]]]
        if all(face_map[f1[a]] == f2[a] for a in f1):
            return True
    return False
