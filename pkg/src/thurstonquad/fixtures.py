"""Ready-made quadruples: power maps, the exponential chain and packaged data files."""

from __future__ import annotations

import cmath
import math
from functools import lru_cache
from importlib import resources

from .generator import Arm, GraphGenerator
from .planar import Edge, cycle_graph
from .quad import MarkedSet, Quadruple, build_rose

TWO_PI_I = 2j * math.pi


def circle_loop(center: complex, around: complex, n: int = 128) -> list[complex]:
    """Counterclockwise circle through ``center`` with midpoint ``around``."""
    r = abs(center - around)
    a0 = cmath.phase(center - around)
    pts = [around + r * cmath.exp(1j * (a0 + 2 * math.pi * k / n)) for k in range(n)]
    return [center] + pts[1:] + [center]


def power_rose(marked: MarkedSet | None = None):
    marked = marked or MarkedSet.of([0j], ["a1"])
    return marked, build_rose(marked, [circle_loop(1 + 0j, 0j)])


def cycle_quadruple(d: int) -> Quadruple:
    """The quadruple of z -> z^d: a counterclockwise d-cycle around the marked point 0."""
    marked, rose = power_rose()
    g = cycle_graph(d)
    return Quadruple(marked, rose, graph=g, parabolic=True, parabolic_note="finite", basepoint=0)


EXP_MARKED = -1 + 0j
EXP_CENTER = -0.7 + 1.2j


def exp_generator() -> GraphGenerator:
    """Preimage of a circle around the asymptotic value under exp: an upward chain on Re z = 0."""
    up = Arm("up", TWO_PI_I, {"v": TWO_PI_I},
             links={"e": Edge("^v", "v", 1)}, attach={"a": Edge("^v0", "v", 1)})
    down = Arm("down", -TWO_PI_I, {"v": -TWO_PI_I},
               links={"e": Edge("v", "^v", 1)}, attach={"a": Edge("v", "^v0", 1)})
    return GraphGenerator({"v0": 0j}, {}, (up, down), "v0")


def exp_quadruple() -> Quadruple:
    marked = MarkedSet.of([EXP_MARKED], ["a1"])
    from .geometry import teardrop

    rose = build_rose(marked, [teardrop(EXP_CENTER, EXP_MARKED, 0.4)])
    return Quadruple(marked, rose, generator=exp_generator(), parabolic=True,
                     parabolic_note="declared: exponential type, finitely many singular values")


DATA_FILES = ("g1", "g2")


@lru_cache(maxsize=None)
def load(name: str) -> Quadruple:
    """Packaged fixtures by name: cycle<d>, exp, g1, g2."""
    if name.startswith("cycle"):
        return cycle_quadruple(int(name[5:]))
    if name == "exp":
        return exp_quadruple()
    from .quadfile import parse_quad_text

    text = resources.files("thurstonquad").joinpath("data", f"{name}.quad").read_text()
    return parse_quad_text(text)
