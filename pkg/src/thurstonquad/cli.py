"""Command-line front end.

Exit codes: 0 on success or PASS, 1 on a validation failure or FAIL verdict,
2 on usage errors. Reports go to stdout as ``key: value`` lines;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from . import fixtures
from .errors import QuadError
from .quad import Quadruple

OK, FAIL, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def load_quad(spec: str) -> Quadruple:
    """A ``.quad`` path, or ``fixture:<name>`` for a packaged fixture."""
    if spec.startswith("fixture:"):
        return fixtures.load(spec[len("fixture:"):])
    from .quadfile import parse_quad

    return parse_quad(spec)


def parse_root(q: Quadruple, text: str | None):
    """Vertex id from text: an integer for finite graphs, ``name`` or ``arm:r:name`` for generators."""
    if text is None:
        return q.root
    if q.is_finite:
        try:
            v = int(text)
        except ValueError:
            raise QuadError(f"bad vertex id {text!r}") from None
        if v not in q.graph.vertices:
            raise QuadError(f"unknown vertex {v}")
        return v
    parts = text.split(":")
    if len(parts) == 1:
        v = ("c", parts[0])
    elif len(parts) == 3:
        v = (parts[0], int(parts[1]), parts[2])
    else:
        raise QuadError(f"bad vertex id {text!r}")
    if v not in q.generator.expand(q.generator.rep_of(v)).vertices:
        raise QuadError(f"unknown vertex {text!r}")
    return v


def _complex(text: str) -> complex:
    text = text.strip()
    if "," in text:
        x, y = text.split(",")
        return complex(float(x), float(y))
    return complex(text.replace(" ", "").replace("i", "j"))


def _points(text: str) -> list[complex]:
    return [_complex(t) for t in text.split(";") if t.strip()]


def _emit(lines) -> None:
    for line in lines:
        print(line)


# commands ---------------------------------------------------------------------


def cmd_validate(args) -> int:
    from .quad import validate_admissible, validate_dynamic

    q = load_quad(args.file)
    adm = validate_admissible(q)
    lines = [f"admissible: {'yes' if adm.ok else 'no'}"]
    if adm.ok:
        dyn = validate_dynamic(q)
        lines.append(f"dynamic: {'yes' if dyn.ok else 'no'}")
        lines += [f"violation: {x}" for x in dyn.lines()]
    else:
        lines += [f"violation: {x}" for x in adm.lines()]
    _emit(lines)
    if not adm.ok:
        return FAIL
    if args.dynamic and not validate_dynamic(q).ok:
        return FAIL
    return OK


def cmd_faces(args) -> int:
    from .quad import face_infos

    q = load_quad(args.file)
    print("face\tlabel\tbounded\tclosed\tvertices")
    for fi in face_infos(q):
        label = "inf" if fi.label == 0 else f"P{fi.label}"
        print(f"{fi.face.id}\t{label}\t{'yes' if fi.bounded else 'no'}\t{'yes' if fi.closed else 'no'}\t{fi.n_vertices}")
    return OK


def cmd_portrait(args) -> int:
    from .quad import portrait

    q = load_quad(args.file)
    _emit(portrait(q).lines(q.marked))
    return OK


def cmd_degree(args) -> int:
    from .quad import classify_single_petal, degree

    q = load_quad(args.file)
    print(f"degree: {degree(q)}")
    if q.m == 1:
        print(f"class: {classify_single_petal(q)}")
    return OK


def cmd_approx(args) -> int:
    from .approx import approximate
    from .quadfile import write_quad

    q = load_quad(args.file)
    rep = approximate(q, args.n)
    _emit(rep.lines())
    if args.out:
        out = Path(args.out)
    else:
        stem = Path(args.file).stem if not args.file.startswith("fixture:") else args.file.split(":", 1)[1]
        base = Path(args.file).parent if not args.file.startswith("fixture:") else Path(".")
        out = base / f"{stem}.n{args.n}.quad"
    write_quad(rep.quad, out)
    print(f"wrote: {out}")
    return OK


def cmd_embed(args) -> int:
    from .approx import ball, rooted_embed

    limit = load_quad(args.limit)
    host = load_quad(args.host)
    if limit.generator is None:
        raise QuadError("embed needs a generator-backed limit")
    K = ball(limit.generator, args.n)
    root = parse_root(limit, args.root)
    host_root = parse_root(host, args.host_root)
    emb = rooted_embed(K, host, (root, host_root))
    print(f"embedding: {'found' if emb.found else 'absent'}")
    if not emb.found:
        print(f"witness: {emb.witness}")
        return FAIL
    print(f"vertices: {len(emb.vertex_map)}")
    return OK


def cmd_converge(args) -> int:
    from .approx import approximate, check_comb_convergence

    limit = load_quad(args.limit)
    if args.approximants:
        seq = [(i + 1, load_quad(p)) for i, p in enumerate(args.approximants)]
    else:
        seq = [(n, approximate(limit, n).quad) for n in range(1, args.n_max + 1)]
    rep = check_comb_convergence(limit, seq, args.radius)
    print(f"verdict: {'PASS' if rep.ok else 'FAIL'}")
    print(f"radius: {args.radius}")
    if rep.ok:
        print(f"N: {rep.N}")
    else:
        print(f"witness: {rep.witness}")
        if rep.witness_index is not None:
            print(f"witness_index: {rep.witness_index}")
        if rep.reason:
            print(f"reason: {rep.reason}")
    return OK if rep.ok else FAIL


def _word(text: str):
    from .words import Word

    try:
        return Word.parse(text)
    except ValueError as err:
        raise QuadError(str(err)) from None


def cmd_member(args) -> int:
    from .lift import member

    q = load_quad(args.file)
    ok = member(q, parse_root(q, args.root), _word(args.word))
    print(f"member: {'yes' if ok else 'no'}")
    return OK


def cmd_lift(args) -> int:
    from .lift import lift_word

    q = load_quad(args.file)
    res = lift_word(q, parse_root(q, args.root), _word(args.word))
    print("path: " + " ".join(str(v) for v in res.vertices))
    print(f"terminal: {res.terminal}")
    print(f"closed: {'yes' if res.closed else 'no'}")
    return OK


def cmd_class(args) -> int:
    from .lift import lift_class

    q = load_quad(args.file)
    print(f"class: {lift_class(q, parse_root(q, args.root), _word(args.word))}")
    return OK


def cmd_isotopic(args) -> int:
    from .lift import isotopic
    from .words import Word

    q1, q2 = load_quad(args.first), load_quad(args.second)
    conj = Word.parse(args.conj, "y") if args.conj else None
    ok = isotopic(q1, q2, parse_root(q1, args.root1), parse_root(q2, args.root2), conj)
    print(f"isotopic: {'yes' if ok else 'no'}")
    return OK if ok else FAIL


def cmd_numlift(args) -> int:
    from .numlift import Exceeds, NumericMap, circle_path, closure_degree, lift_path_numeric

    f = NumericMap(args.map)
    center = _complex(args.center)
    base = _complex(args.base)
    gamma = circle_path(center, abs(base - center), math.atan2((base - center).imag, (base - center).real))
    z0 = _complex(args.z0)
    path = lift_path_numeric(f, gamma, z0, args.tol)
    print(f"start: {path.start:.12g}")
    print(f"end: {path.end:.12g}")
    print(f"closed: {'yes' if path.closed else 'no'}")
    print(f"substeps: {path.substeps}")
    if args.closure:
        k = closure_degree(f, gamma, z0, max_k=args.max_k)
        print(f"closure_degree: {k if not isinstance(k, Exceeds) else str(k)}")
    return OK


def cmd_reconstruct(args) -> int:
    from .numlift import NumericMap, build_quadruple_numeric
    from .quad import MarkedSet, default_rose, degree, validate_admissible
    from .quadfile import write_quad

    f = NumericMap(args.map)
    marked = MarkedSet.of(_points(args.marked))
    rose = default_rose(marked, _complex(args.center))
    q = build_quadruple_numeric(f, rose, marked)
    rep = validate_admissible(q)
    print(f"degree: {degree(q)}")
    print(f"admissible: {'yes' if rep.ok else 'no'}")
    _emit(f"violation: {x}" for x in rep.lines())
    if args.out:
        write_quad(q, args.out)
        print(f"wrote: {args.out}")
    return OK if rep.ok else FAIL


def cmd_verify_num(args) -> int:
    from .numlift import NumericMap, verify_numeric_convergence

    ns = [int(x) for x in args.ns.split(",")]
    seq = [(n, NumericMap(args.family.replace("{n}", str(n)))) for n in ns]
    rep = verify_numeric_convergence(seq, NumericMap(args.target), _complex(args.z0), _complex(args.w0),
                                     args.radius, args.tol)
    _emit(rep.lines())
    return OK if rep.ok else FAIL


def cmd_teich_bound(args) -> int:
    from .numlift import teich_bound

    print(f"bound: {teich_bound(args.r, args.R)!r}")
    return OK


def cmd_render(args) -> int:
    from .render import render

    q = load_quad(args.file)
    text = render(q, args.format, args.n)
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote: {args.out}")
    else:
        sys.stdout.write(text)
    return OK


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thurstonquad", description="combinatorial models of entire Thurston maps")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "check admissibility and dynamic admissibility")
    sp.add_argument("file")
    sp.add_argument("--dynamic", action="store_true", help="also fail when not dynamically admissible")

    sp = add("faces", cmd_faces, "list faces with labels and vertex counts")
    sp.add_argument("file")

    sp = add("portrait", cmd_portrait, "marked portrait")
    sp.add_argument("file")

    sp = add("degree", cmd_degree, "degree (or 'transcendental') and single-petal class")
    sp.add_argument("file")

    sp = add("approx", cmd_approx, "polynomial approximant from the ball of radius n")
    sp.add_argument("file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out")

    sp = add("embed", cmd_embed, "rooted embedding of the limit's ball into a host quadruple")
    sp.add_argument("limit")
    sp.add_argument("host")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--root")
    sp.add_argument("--host-root")

    sp = add("converge", cmd_converge, "combinatorial convergence on a word ball")
    sp.add_argument("limit")
    sp.add_argument("approximants", nargs="*", help="approximant files in order (default: generate)")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=20)

    for name, fn, help_ in (("member", cmd_member, "is the word in the covering subgroup"),
                            ("lift", cmd_lift, "lift a word to an edge path"),
                            ("class", cmd_class, "homotopy class rel A of a closed lift")):
        sp = add(name, fn, help_)
        sp.add_argument("file")
        sp.add_argument("--word", required=True)
        sp.add_argument("--root")

    sp = add("isotopic", cmd_isotopic, "decide isotopy of two finite quadruples")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--root1")
    sp.add_argument("--root2")
    sp.add_argument("--conj", help="connecting word in y-letters")

    sp = add("numlift", cmd_numlift, "lift a circle under a holomorphic map by continuation")
    sp.add_argument("--map", required=True)
    sp.add_argument("--center", default="0")
    sp.add_argument("--base", default="1", help="base point of the circle")
    sp.add_argument("--z0", required=True)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--closure", action="store_true", help="also report the closure degree")
    sp.add_argument("--max-k", type=int, default=64)

    sp = add("reconstruct", cmd_reconstruct, "quadruple from a polynomial by lifting a rose")
    sp.add_argument("--map", required=True)
    sp.add_argument("--marked", required=True, help="semicolon separated points, e.g. '-2,0;2,0'")
    sp.add_argument("--center", required=True)
    sp.add_argument("--out")

    sp = add("verify-num", cmd_verify_num, "numerical convergence criteria for a map family")
    sp.add_argument("--family", required=True, help="expression with {n}, e.g. '(1+z/{n})**{n}'")
    sp.add_argument("--ns", required=True, help="comma separated n values")
    sp.add_argument("--target", required=True)
    sp.add_argument("--z0", default="0")
    sp.add_argument("--w0", default="1")
    sp.add_argument("--radius", type=int, default=3)
    sp.add_argument("--tol", type=float, default=1e-6)

    sp = add("teich-bound", cmd_teich_bound, "log((1+r/R)/(1-r/R))")
    sp.add_argument("r", type=float)
    sp.add_argument("R", type=float)

    sp = add("render", cmd_render, "SVG or DOT drawing")
    sp.add_argument("file")
    sp.add_argument("--format", choices=("svg", "dot"), default="svg")
    sp.add_argument("--n", type=int, help="ball radius for generator-backed inputs")
    sp.add_argument("--out")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (QuadError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
