"""Acceptance criteria 1-9, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

from __future__ import annotations

import math
import subprocess
import sys
import time
from pathlib import Path

import pytest
import sympy as sp

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))
sys.path.insert(0, str(HERE.parent / "scripts"))

from thurstonquad import fixtures  # noqa: E402
from thurstonquad.approx import approximate, check_comb_convergence, threshold  # noqa: E402
from thurstonquad.errors import DomainError  # noqa: E402
from thurstonquad.lift import member  # noqa: E402
from thurstonquad.numlift import (  # noqa: E402
    Exceeds,
    NumericMap,
    build_quadruple_numeric,
    circle_path,
    closure_degree,
    lift_path_numeric,
    teich_bound,
)
from thurstonquad.quad import (  # noqa: E402
    MarkedSet,
    PowerMap,
    classify_single_petal,
    default_rose,
    degree,
    locate_face,
    portrait,
    rooted_isomorphism,
    validate_admissible,
    validate_dynamic,
)
from thurstonquad.words import Word, ball  # noqa: E402


def _key(z: complex) -> complex:
    return complex(round(z.real, 9), round(z.imag, 9)) + 0j


def _named_portrait(q) -> tuple[dict, set]:
    """Portrait keyed by rounded marked coordinates."""
    p = portrait(q)
    zs = {pt.id: pt.z for pt in q.marked}
    arrows = {_key(zs[a]): (_key(zs[b]), w) for a, (b, w) in p.arrows.items()}
    return arrows, {_key(zs[a]) for a in p.singular}


# criteria ---------------------------------------------------------------------


def criterion_1():
    from mutants import all_mutants

    fixtures.load.cache_clear()
    t0 = time.perf_counter()
    good = ["cycle2", "cycle3", "cycle4", "cycle5", "g1", "g2"]
    bad_fixtures = [n for n in good
                    if not (validate_admissible(fixtures.load(n)).ok and validate_dynamic(fixtures.load(n)).ok)]
    mutants = all_mutants()
    wrong = []
    for name, q, kind in mutants:
        rep = validate_admissible(q)
        if rep.ok:
            rep = validate_dynamic(q)
        if kind not in rep.kinds():
            wrong.append(name)
    dt = time.perf_counter() - t0
    ok = not bad_fixtures and not wrong and len(mutants) == 12 and dt < 1.0
    return ok, f"{len(good)} fixtures ok, {len(mutants) - len(wrong)}/{len(mutants)} mutants caught, {dt:.2f}s"


def criterion_2():
    from portrait_oracle import models, numeric, oracle_portrait

    hp = math.pi / 2
    c = math.sqrt(math.log(2))
    want = {
        "g1": ({_key(-hp): (_key(0), 1), _key(0): (_key(hp), 2), _key(hp): (_key(0), 1)}, {_key(-hp), _key(hp)}),
        "g2": ({_key(0): (_key(0), 2), _key(c): (_key(-c), 1), _key(-c): (_key(-c), 1)}, {_key(0), _key(c)}),
    }
    problems = []
    for name, expected in want.items():
        got = _named_portrait(fixtures.load(name))
        arrows, singular = numeric(*oracle_portrait(*models()[name]))
        oracle = ({_key(a): (_key(b), w) for a, (b, w) in arrows.items()}, {_key(a) for a in singular})
        if got != expected:
            problems.append(f"{name} differs from the stated portrait")
        if oracle != expected:
            problems.append(f"{name} oracle differs from the stated portrait")
    return not problems, "; ".join(problems) or "g1 and g2 portraits match the stated values and the calculus oracle"


def criterion_3():
    problems = []
    q = fixtures.load("exp")
    for n in range(0, 51):
        rep = approximate(q, n)
        qn = rep.quad
        rows = rep.table
        if len(qn.graph.vertices) != 2 * n + 1 or classify_single_petal(qn) != PowerMap(2 * n + 1):
            problems.append(f"exp n={n}: not a {2 * n + 1}-cycle")
        if not rep.dynamic:
            problems.append(f"exp n={n}: not dynamic")
        if len(rows) != 1 or rows[0].case != 2:
            problems.append(f"exp n={n}: degree table {rows}")
    for name in ("g1", "g2"):
        lq = fixtures.load(name)
        N = threshold(lq)
        want = portrait(lq).named(lq.marked)
        for n in range(N, 31):
            rep = approximate(lq, n)
            if not rep.dynamic:
                problems.append(f"{name} n={n}: not dynamic")
            elif portrait(rep.quad).named(lq.marked) != want:
                problems.append(f"{name} n={n}: portrait differs")
    return not problems, "; ".join(problems[:3]) or "exp n=0..50 odd cycles, g1/g2 portraits stable from N=2 to 30"


def criterion_4():
    problems = []
    Ns = {}
    for name in ("exp", "g1", "g2"):
        lq = fixtures.load(name)
        seq = [(n, approximate(lq, n).quad) for n in range(1, 13)]
        for r in range(1, 11):
            rep = check_comb_convergence(lq, seq, r)
            if not rep.ok:
                problems.append(f"{name} r={r}: {rep.reason} {rep.witness}")
                continue
            Ns[name, r] = rep.N
            if name == "exp":
                want = next(n for n in range(1, 13) if 2 * n + 1 > r)
                if rep.N != want:
                    problems.append(f"exp r={r}: N={rep.N}, expected {want}")
    exp_n = [Ns.get(("exp", r)) for r in range(1, 11)]
    return not problems, "; ".join(problems[:3]) or f"all pass; exp N(r) for r=1..10: {exp_n}"


def criterion_5():
    problems = []
    for d in range(1, 21):
        qd = fixtures.cycle_quadruple(d)
        for k in range(-100, 101):
            if member(qd, qd.root, Word.power(1, k)) != (k % d == 0):
                problems.append(f"d={d} k={k}")
    lq = fixtures.load("exp")
    tail = [approximate(lq, n).quad for n in range(6, 16)]
    for r in range(0, 11):
        limit_ball = [w for w in ball(1, r) if all(member(q, q.root, w) for q in tail)]
        if limit_ball != [Word(())]:
            problems.append(f"r={r}: limit ball {[str(w) for w in limit_ball]}")
        if any(member(lq, lq.root, w) for w in ball(1, r) if len(w)):
            problems.append(f"r={r}: a nontrivial word closes in the chain")
    return not problems, "; ".join(problems[:3]) or "cycle membership d<=20, |k|<=100 exact; limit ball trivial for r<=10"


def criterion_6():
    t0 = time.perf_counter()
    problems = []
    gamma = circle_path()
    for n in (16, 32, 64, 128, 256):
        end = lift_path_numeric(NumericMap(f"(1+z/{n})**{n}"), gamma, 0j).end
        bound = 1.05 * (2 * math.pi) ** 2 / (2 * n)
        if abs(end - 2j * math.pi) > bound:
            problems.append(f"n={n}: |end - 2 pi i| = {abs(end - 2j * math.pi):.4g} > {bound:.4g}")
    for n in range(1, 65):
        k = closure_degree(NumericMap(f"(1+z/{n})**{n}"), gamma, 0j)
        if k != n:
            problems.append(f"closure degree of n={n}: {k}")
    f = NumericMap("exp(z)")
    if closure_degree(f, gamma, 0j, max_k=50) != Exceeds(50):
        problems.append("exp lift closed")
    z = 0j
    for k in range(1, 51):
        z2 = lift_path_numeric(f, gamma, z).end
        if abs(z2 - z - 2j * math.pi) > 1e-6:
            problems.append(f"exp traversal {k}: step {z2 - z}")
            break
        z = z2
    dt = time.perf_counter() - t0
    if dt >= 10:
        problems.append(f"runtime {dt:.1f}s")
    return not problems, "; ".join(problems[:3]) or f"bounds, closure degrees 1..64 and exp translation hold, {dt:.2f}s"


def _oracle_critical_degrees(expr: str) -> dict:
    """Critical point -> local degree, from sympy."""
    zs = sp.symbols("z")
    f = sp.sympify(expr, locals={"z": zs})
    roots = sp.roots(sp.Poly(sp.diff(f, zs), zs))
    return {complex(sp.N(c)): m + 1 for c, m in roots.items()}


def criterion_7():
    cases = [("z**2", [0j], 1 + 0j), ("z**3-3*z", [-2 + 0j, 2 + 0j], 0j), ("(1+z/8)**8", [0j], 1 + 0j)]
    problems = []
    built = {}
    for expr, A, t in cases:
        f = NumericMap(expr)
        marked = MarkedSet.of(A)
        q = build_quadruple_numeric(f, default_rose(marked, t), marked)
        built[expr] = q
        if not validate_admissible(q).ok:
            problems.append(f"{expr}: not admissible")
        if len(q.graph.vertices) != f.degree or degree(q) != f.degree:
            problems.append(f"{expr}: {len(q.graph.vertices)} vertices")
        for c, d in _oracle_critical_degrees(expr).items():
            fi = locate_face(q, c)
            size = len(fi.face.vertices(q.graph))
            if size != d:
                problems.append(f"{expr}: face at critical point {c} has {size} vertices, oracle {d}")
    q8 = built["(1+z/8)**8"]
    predicted = classify_single_petal(q8)
    cyc = fixtures.cycle_quadruple(8)
    if predicted != PowerMap(8) or rooted_isomorphism(q8.graph, 0, cyc.graph, cyc.root) is None:
        problems.append("(1+z/8)^8 is not the 8-cycle")
    return not problems, "; ".join(problems) or "z^2, z^3-3z, (1+z/8)^8 reconstructed; critical faces match; 8-cycle"


def criterion_8():
    ok = abs(teich_bound(1, 2) - math.log(3)) < 1e-12
    errors = 0
    for r, R in ((2, 2), (3, 2), (5, 1)):
        try:
            teich_bound(r, R)
        except DomainError:
            errors += 1
    return ok and errors == 3, f"teich_bound(1,2) = {teich_bound(1, 2)!r}, {errors}/3 domain errors"


def criterion_9():
    res = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                          str(HERE / "test_properties.py")], capture_output=True, text=True, cwd=HERE.parent)
    last = res.stdout.strip().splitlines()[-1] if res.stdout.strip() else res.stderr.strip()[-200:]
    return res.returncode == 0, last


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def line(k: int, ok: bool, detail: str) -> str:
    return f"criterion {k}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.fixture
def say(request):
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(text):
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(text)
        else:
            print(text)
    return emit


@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, say):
    ok, detail = CRITERIA[k - 1]()
    say(line(k, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        failed += not ok
        print(line(k, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
