"""Line-oriented ``.quad`` text format.

Sections start with a bare keyword line: META, MARKED, ROSE, GRAPH or
GENERATOR. Blank lines and ``#`` comments are ignored. Coordinates are
written as ``x y`` pairs; polylines are flat lists of such pairs. In ROT
lines half-edge ``2e`` leaves the tail of edge ``e`` and ``2e + 1`` its head.
Inside GENERATOR, ``CORE`` and ``CELL name dx dy`` open sub-blocks. A
``GLUE`` edge in a cell joins consecutive repetitions when one end carries a
``^`` prefix (previous repetition) and joins the core to the first
repetition when one end carries an ``@`` prefix (core vertex).
"""

from __future__ import annotations

import shlex
from pathlib import Path

from .errors import ParseError, ValidationError
from .generator import Arm, GraphGenerator
from .planar import Edge, HalfEdgeGraph, relabel_dense
from .quad import MarkedPoint, MarkedSet, Petal, Quadruple, Rose

SECTIONS = ("META", "MARKED", "ROSE", "GRAPH", "GENERATOR")


def _num(tok: str, line: int) -> float:
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"expected a number, got {tok!r}", line) from None


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", line) from None


def _points(toks: list[str], line: int) -> tuple[complex, ...]:
    if len(toks) % 2:
        raise ParseError("odd number of coordinates", line)
    return tuple(complex(_num(toks[i], line), _num(toks[i + 1], line)) for i in range(0, len(toks), 2))


class _Reader:
    def __init__(self, text: str):
        self.rows = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            try:
                toks = shlex.split(body)
            except ValueError as err:
                raise ParseError(str(err), no) from None
            self.rows.append((no, toks))


def parse_quad_text(text: str) -> Quadruple:
    section = None
    parabolic, note, base_tok, base_line = None, "", None, None
    marked: list[MarkedPoint] = []
    center = None
    petals: list[tuple[int, int, tuple, int]] = []
    g_vertices: dict = {}
    g_edges: dict = {}
    g_lines: dict = {}
    rot: dict = {}
    outer = None
    gen_core_v: dict = {}
    gen_core_e: dict = {}
    arms: list[dict] = []
    gen_base = None
    block = None
    seen_sections = set()

    for no, toks in _Reader(text).rows:
        key = toks[0]
        if len(toks) == 1 and key in SECTIONS:
            if key in seen_sections:
                raise ParseError(f"section {key} repeated", no)
            seen_sections.add(key)
            section, block = key, None
            continue
        if len(toks) == 1 and key.isupper() and key not in ("CORE",):
            raise ParseError(f"unknown section {key!r}", no)
        if section is None:
            raise ParseError("entry outside any section", no)
        args = toks[1:]
        if section == "META":
            if key == "PARABOLIC":
                if not args or args[0] not in ("yes", "no"):
                    raise ParseError("PARABOLIC takes yes|no and an optional note", no)
                parabolic = args[0] == "yes"
                note = " ".join(args[1:])
            elif key == "BASEPOINT" and len(args) == 1:
                base_tok, base_line = args[0], no
            else:
                raise ParseError(f"bad META entry {key!r}", no)
        elif section == "MARKED":
            if key != "POINT" or len(args) != 4:
                raise ParseError("expected POINT id x y name", no)
            marked.append(MarkedPoint(_int(args[0], no), complex(_num(args[1], no), _num(args[2], no)), args[3]))
        elif section == "ROSE":
            if key == "CENTER" and len(args) == 2:
                center = complex(_num(args[0], no), _num(args[1], no))
            elif key == "PETAL" and len(args) >= 4:
                petals.append((_int(args[0], no), _int(args[1], no), _points(args[2:], no), no))
            else:
                raise ParseError(f"bad ROSE entry {key!r}", no)
        elif section == "GRAPH":
            if key == "VERTEX" and len(args) in (1, 3):
                v = _int(args[0], no)
                if v in g_vertices:
                    raise ParseError(f"duplicate vertex {v}", no)
                g_vertices[v] = complex(_num(args[1], no), _num(args[2], no)) if len(args) == 3 else None
            elif key == "EDGE" and len(args) >= 4:
                e = _int(args[0], no)
                if e in g_edges:
                    raise ParseError(f"duplicate edge {e}", no)
                a, b, j = _int(args[1], no), _int(args[2], no), _int(args[3], no)
                for v in (a, b):
                    if v not in g_vertices:
                        raise ParseError(f"edge {e} references unknown vertex {v}", no)
                pts = _points(args[4:], no) if len(args) > 4 else None
                g_edges[e] = Edge(a, b, j, pts)
                g_lines[e] = no
            elif key == "ROT" and len(args) >= 1:
                v = _int(args[0], no)
                if v not in g_vertices:
                    raise ParseError(f"rotation for unknown vertex {v}", no)
                hs = []
                for tok in args[1:]:
                    h = _int(tok, no)
                    if h // 2 not in g_edges:
                        raise ParseError(f"half-edge {h} references unknown edge {h // 2}", no)
                    hs.append((h // 2, 1 if h % 2 == 0 else -1))
                rot[v] = tuple(hs)
            elif key == "OUTER" and len(args) == 1:
                h = _int(args[0], no)
                outer = (h // 2, 1 if h % 2 == 0 else -1)
            else:
                raise ParseError(f"bad GRAPH entry {key!r}", no)
        elif section == "GENERATOR":
            if key == "CORE" and not args:
                block = {"kind": "core"}
            elif key == "CELL" and len(args) == 3:
                block = {"kind": "arm", "name": args[0], "shift": complex(_num(args[1], no), _num(args[2], no)),
                         "vertices": {}, "edges": {}, "links": {}, "attach": {}}
                arms.append(block)
            elif key == "BASEPOINT" and len(args) == 1:
                gen_base = (args[0], no)
            elif block is None:
                raise ParseError("generator entry before CORE or CELL", no)
            elif key == "VERTEX" and len(args) == 3:
                pool = gen_core_v if block["kind"] == "core" else block["vertices"]
                if args[0] in pool:
                    raise ParseError(f"duplicate vertex {args[0]!r}", no)
                pool[args[0]] = complex(_num(args[1], no), _num(args[2], no))
            elif key in ("EDGE", "GLUE") and len(args) >= 4:
                if block["kind"] == "core" and key != "EDGE":
                    raise ParseError("GLUE only allowed inside CELL", no)
                pts = _points(args[4:], no) if len(args) > 4 else None
                tail, head = args[1], args[2]
                if key == "EDGE":
                    pool = gen_core_e if block["kind"] == "core" else block["edges"]
                elif tail.startswith("@") or head.startswith("@"):
                    pool = block["attach"]
                    tail, head = ("^" + x[1:] if x.startswith("@") else x for x in (tail, head))
                elif tail.startswith("^") or head.startswith("^"):
                    pool = block["links"]
                else:
                    raise ParseError("GLUE needs a ^ or @ end", no)
                if args[0] in block.get("names", set()):
                    raise ParseError(f"duplicate edge {args[0]!r}", no)
                block.setdefault("names", set()).add(args[0])
                pool[args[0]] = Edge(tail, head, _int(args[3], no), pts)
            else:
                raise ParseError(f"bad GENERATOR entry {key!r}", no)

    if not marked:
        raise ParseError("missing MARKED section")
    if center is None or not petals:
        raise ParseError("missing ROSE section")
    try:
        ms = MarkedSet(tuple(marked))
    except ValidationError as err:
        raise ParseError(str(err)) from None
    ids = {p.id for p in marked}
    rose_petals = []
    for k, (j, mid, pts, no) in enumerate(sorted(petals)):
        if j != k + 1:
            raise ParseError("petal indices must be 1..m", no)
        if mid not in ids:
            raise ParseError(f"petal {j} references unknown marked point {mid}", no)
        rose_petals.append(Petal(j, pts, mid))
    rose = Rose(center, tuple(rose_petals))

    if ("GRAPH" in seen_sections) == ("GENERATOR" in seen_sections):
        raise ParseError("exactly one of GRAPH or GENERATOR is required")
    if "GRAPH" in seen_sections:
        g = HalfEdgeGraph(g_vertices, g_edges, rot, outer)
        errs = g.structural_errors()
        if errs:
            raise ParseError(errs[0])
        base = None
        if base_tok is not None:
            base = _int(base_tok, base_line)
            if base not in g_vertices:
                raise ParseError(f"unknown basepoint {base}", base_line)
        g = g.with_(basepoint=base)
        return Quadruple(ms, rose, graph=g, parabolic=True if parabolic is None else parabolic,
                         parabolic_note=note or "finite", basepoint=base)
    if gen_base is None:
        raise ParseError("generator needs a BASEPOINT")
    try:
        gen = GraphGenerator(gen_core_v, gen_core_e,
                             tuple(Arm(a["name"], a["shift"], a["vertices"], a["edges"], a["links"], a["attach"])
                                   for a in arms), gen_base[0])
    except ValidationError as err:
        raise ParseError(str(err), gen_base[1]) from None
    return Quadruple(ms, rose, generator=gen, parabolic=parabolic, parabolic_note=note)


def parse_quad(path: str | Path) -> Quadruple:
    return parse_quad_text(Path(path).read_text())


def _fmt(x: float) -> str:
    return repr(float(x))


def _pts(pts) -> str:
    return " ".join(f"{_fmt(z.real)} {_fmt(z.imag)}" for z in pts)


def _edge_line(kind: str, name, e: Edge) -> str:
    s = f"{kind} {name} {e.tail} {e.head} {e.petal}"
    if e.polyline is not None:
        s += " " + _pts(e.polyline)
    return s


def serialize_quad(q: Quadruple) -> str:
    out = ["META"]
    flag = "yes" if q.declared_parabolic else "no"
    note = q.parabolic_note or ("finite" if q.is_finite else "")
    out.append(f"PARABOLIC {flag}" + (f" {shlex.quote(note)}" if note else ""))
    mids = {p.id: i for i, p in enumerate(q.marked)}
    g = None
    if q.is_finite:
        g, vmap, emap = relabel_dense(q.graph)
        out.append(f"BASEPOINT {vmap[q.root]}")
    out.append("MARKED")
    for p in q.marked:
        out.append(f"POINT {mids[p.id]} {_fmt(p.z.real)} {_fmt(p.z.imag)} {shlex.quote(p.name or f'a{mids[p.id] + 1}')}")
    out.append("ROSE")
    out.append(f"CENTER {_fmt(q.rose.center.real)} {_fmt(q.rose.center.imag)}")
    for p in q.rose.petals:
        out.append(f"PETAL {p.index} {mids[p.marked]} {_pts(p.polyline)}")
    if g is not None:
        out.append("GRAPH")
        for v in sorted(g.vertices):
            z = g.vertices[v]
            out.append(f"VERTEX {v}" + ("" if z is None else f" {_fmt(z.real)} {_fmt(z.imag)}"))
        for e in sorted(g.edges):
            out.append(_edge_line("EDGE", e, g.edges[e]))
        for v in sorted(g.rotation):
            hs = " ".join(str(2 * h[0] + (0 if h[1] > 0 else 1)) for h in g.rotation[v])
            out.append(f"ROT {v} {hs}".rstrip())
        if g.outer is not None:
            out.append(f"OUTER {2 * g.outer[0] + (0 if g.outer[1] > 0 else 1)}")
    else:
        gen = q.generator
        out.append("GENERATOR")
        out.append("CORE")
        for v, z in gen.core_vertices.items():
            out.append(f"VERTEX {v} {_fmt(z.real)} {_fmt(z.imag)}")
        for name, e in gen.core_edges.items():
            out.append(_edge_line("EDGE", name, e))
        for arm in gen.arms:
            out.append(f"CELL {arm.name} {_fmt(arm.shift.real)} {_fmt(arm.shift.imag)}")
            for v, z in arm.vertices.items():
                out.append(f"VERTEX {v} {_fmt(z.real)} {_fmt(z.imag)}")
            for name, e in arm.edges.items():
                out.append(_edge_line("EDGE", name, e))
            for name, e in arm.links.items():
                out.append(_edge_line("GLUE", name, e))
            for name, e in arm.attach.items():
                core_end = Edge(*("@" + x[1:] if x.startswith("^") else x for x in (e.tail, e.head)),
                                e.petal, e.polyline)
                out.append(_edge_line("GLUE", name, core_end))
        out.append(f"BASEPOINT {gen.basepoint}")
    return "\n".join(out) + "\n"


def write_quad(q: Quadruple, path: str | Path) -> None:
    Path(path).write_text(serialize_quad(q))
