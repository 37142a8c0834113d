"""Build the packaged g1/g2 generator fixtures.

g1 models (pi/2) cos z: its preimage graph is 2pi-periodic, so core and arm
cells are taken straight from numerically lifted petals.

g2 models sqrt(log 2) (1 - exp(z^2)): vertices sit at +-sqrt(log(1 - i/c) +
2 pi i k), which is not periodic, so the file carries a synthetic drawing
with the same labels, directions and rotation system. Before writing, the
combinatorics of that drawing are checked against numerical lifts.

Usage: python3 scripts/make_fixtures.py [--out DIR]
"""

from __future__ import annotations

import argparse
import cmath
import math
from pathlib import Path

from thurstonquad import geometry as geo
from thurstonquad.generator import Arm, GraphGenerator
from thurstonquad.numlift import NumericMap, lift_petals
from thurstonquad.planar import Edge, validate_embedding
from thurstonquad.quad import MarkedSet, Quadruple, default_rose, validate_dynamic
from thurstonquad.quadfile import serialize_quad

TWO_PI = 2 * math.pi
C = math.sqrt(math.log(2))


def _thin(pts, every: int = 4) -> tuple[complex, ...]:
    pts = [complex(p) for p in pts]
    out = pts[::every]
    if out[-1] != pts[-1]:
        out.append(pts[-1])
    return tuple(out)


def _shift(pts, d: complex) -> tuple[complex, ...]:
    return tuple(p + d for p in pts)


# g1 ---------------------------------------------------------------------------


def g1_quadruple() -> Quadruple:
    marked = MarkedSet.of([-math.pi / 2, 0j, math.pi / 2], ["-pi/2", "0", "pi/2"])
    rose = default_rose(marked, 1j)
    f = NumericMap("pi/2*cos(z)")
    y = math.asinh(2 / math.pi)
    alpha, beta = math.pi / 2 - 1j * y, -math.pi / 2 + 1j * y
    lifts = {k: _thin(v) for k, v in lift_petals(f, rose, [alpha, beta]).items()}
    a1, a2, a3 = lifts[(0, 1)], lifts[(0, 2)], lifts[(0, 3)]  # from alpha_0
    b1, b2, b3 = lifts[(1, 1)], lifts[(1, 2)], lifts[(1, 3)]  # from beta_0

    core_v = {"b": beta, "a": alpha}
    core_e = {
        "a3": Edge("a", "b", 3, a3),
        "b3": Edge("b", "a", 3, b3),
        "a2": Edge("a", "a", 2, a2),
        "b2": Edge("b", "b", 2, b2),
    }

    def cell(d: complex) -> dict:
        return {
            "a3": Edge("a", "b", 3, _shift(a3, d)),
            "b3": Edge("b", "a", 3, _shift(b3, d)),
            "a2": Edge("a", "a", 2, _shift(a2, d)),
            "b2": Edge("b", "b", 2, _shift(b2, d)),
        }

    right = Arm("R", TWO_PI, {"b": beta + TWO_PI, "a": alpha + TWO_PI}, cell(TWO_PI),
                links={"la": Edge("^a", "b", 1, _shift(a1, TWO_PI)),
                       "lb": Edge("b", "^a", 1, _shift(b1, 2 * TWO_PI))},
                attach={"ta": Edge("^a", "b", 1, a1),
                        "tb": Edge("b", "^a", 1, _shift(b1, TWO_PI))})
    left = Arm("L", -TWO_PI, {"b": beta - TWO_PI, "a": alpha - TWO_PI}, cell(-TWO_PI),
               links={"la": Edge("a", "^b", 1, _shift(a1, -2 * TWO_PI)),
                      "lb": Edge("^b", "a", 1, _shift(b1, -TWO_PI))},
               attach={"ta": Edge("a", "^b", 1, _shift(a1, -TWO_PI)),
                       "tb": Edge("^b", "a", 1, b1)})
    gen = GraphGenerator(core_v, core_e, (left, right), "b")
    return Quadruple(marked, rose, generator=gen, parabolic=True,
                     parabolic_note="declared: cosine type, finite order, finitely many singular values")


# g2 ---------------------------------------------------------------------------

S0 = 1.1 - 0.5j
CHAIN_STEP = 1.5


def _loops(v: complex, p1_dir: float, p2_dir: float) -> dict:
    """Teardrop p1/p2 loops at v pointing in the given directions (degrees)."""
    out = {}
    for name, j, ang in (("l1", 1, p1_dir), ("l2", 2, p2_dir)):
        target = v + 0.55 * cmath.exp(1j * math.radians(ang))
        out[name] = Edge("v", "v", j, tuple(geo.teardrop(v, target, 0.22, n_arc=32, n_seg=6)))
    return out


def _arm(name: str, base: complex, direction: complex, inward: bool, p1_dir: float, p2_dir: float,
         core: str) -> Arm:
    shift = CHAIN_STEP * direction
    v1 = base + shift
    link = Edge("v", "^v", 3, (v1 + shift, v1)) if inward else Edge("^v", "v", 3, (v1, v1 + shift))
    attach = Edge("v", "^" + core, 3, (v1, base)) if inward else Edge("^" + core, "v", 3, (base, v1))
    return Arm(name, shift, {"v": v1}, _loops(v1, p1_dir, p2_dir), links={"k": link}, attach={"t": attach})


def g2_quadruple() -> Quadruple:
    marked = MarkedSet.of([-C, 0j, C], ["-sqrt(ln2)", "0", "sqrt(ln2)"])
    rose = default_rose(marked, 1j)
    t0 = -S0
    core_v = {"s": S0, "t": t0}
    core_e = {
        "n": Edge("s", "t", 2, (S0, 0.15j, t0)),
        "m": Edge("t", "s", 2, (t0, -0.15j, S0)),
        "ls": Edge("s", "s", 1, tuple(geo.teardrop(S0, C + 0.05j, 0.2, n_arc=48, n_seg=8))),
        "lt": Edge("t", "t", 1, tuple(geo.teardrop(t0, -C - 0.05j, 0.2, n_arc=48, n_seg=8))),
    }
    ne, nw = cmath.exp(1j * math.pi / 4), cmath.exp(3j * math.pi / 4)
    arms = (
        _arm("NE", t0, ne, False, 280, 340, "t"),
        _arm("NW", t0, nw, True, 195, 250, "t"),
        _arm("SW", S0, -ne, False, 100, 160, "s"),
        _arm("SE", S0, -nw, True, 15, 70, "s"),
    )
    gen = GraphGenerator(core_v, core_e, arms, "s")
    return Quadruple(marked, rose, generator=gen, parabolic=True,
                     parabolic_note="declared: order 1/2 entire function of finite type")


def g2_numeric_edges(k_max: int = 3) -> dict:
    """(vertex name, petal) -> endpoint name, from lifts under the actual map."""
    rose = default_rose(MarkedSet.of([-C, 0j, C]), 1j)
    f = NumericMap("sqrt(log(2))*(1-exp(z**2))")
    w = cmath.log(1 - 1j / C)
    names = {}
    for k in range(-k_max - 1, k_max + 2):
        s = cmath.sqrt(w + 2j * math.pi * k)
        names[f"s{k}"], names[f"-s{k}"] = s, -s
    keys = [n for n in names if abs(int(n.lstrip("-s"))) <= k_max]
    lifts = lift_petals(f, rose, [names[n] for n in keys])
    out = {}
    for (i, j), pts in lifts.items():
        end = pts[-1]
        hit = min(names, key=lambda n: abs(names[n] - end))
        if abs(names[hit] - end) > 1e-6:
            raise RuntimeError(f"lift from {keys[i]} along petal {j} ended off the vertex set")
        out[(keys[i], j)] = hit
    return out


def g2_model_edges(q: Quadruple, k_max: int = 3) -> dict:
    """The same table read off the covering of the synthetic generator."""
    def name(v) -> str:
        if v[0] == "c":
            return "s0" if v[1] == "s" else "-s0"
        arm, r = v[0], v[1]
        return {"NE": f"s{r}", "NW": f"-s{-r}", "SW": f"-s{r}", "SE": f"s{-r}"}[arm]

    cov = q.covering(k_max + 2)
    out = {}
    for v in cov.graph.vertices:
        if q.generator.rep_of(v) > k_max:
            continue
        for j in (1, 2, 3):
            _, _, head = cov.step(v, j, 1)
            out[(name(v), j)] = name(head)
    return out


def check(q: Quadruple, name: str) -> None:
    rep = validate_dynamic(q)
    if not rep.ok:
        raise SystemExit(f"{name}: " + "; ".join(rep.lines()))
    problems = validate_embedding(q.window(4).graph)
    if problems:
        raise SystemExit(f"{name}: " + problems[0])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "src" / "thurstonquad" / "data")
    args = ap.parse_args(argv)
    numeric, model = g2_numeric_edges(), g2_model_edges(g2_quadruple())
    if numeric != model:
        diff = sorted(k for k in set(model) | set(numeric) if numeric.get(k) != model.get(k))
        raise SystemExit(f"g2 drawing disagrees with numerical lifts at {diff[:5]}")
    args.out.mkdir(parents=True, exist_ok=True)
    for name, build in (("g1", g1_quadruple), ("g2", g2_quadruple)):
        q = build()
        check(q, name)
        path = args.out / f"{name}.quad"
        path.write_text(f"# generated by scripts/make_fixtures.py\n" + serialize_quad(q))
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
