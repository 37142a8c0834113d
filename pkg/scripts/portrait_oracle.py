"""Marked portraits from calculus, independent of any covering graph.

For a map f and a marked set A this computes, symbolically:
  image      f(a) for each a, matched against A;
  weight     local degree at a, the order of the first nonvanishing derivative;
  singular   a in A is singular when it is a critical value f(c), f'(c) = 0,
             or a finite limit of f along a ray to infinity.

Critical points of periodic maps come back from sympy as image sets; they
are sampled over a window of periods, which suffices since f is periodic.

Usage: python3 scripts/portrait_oracle.py [g1|g2|cycle<d>|all]
"""

from __future__ import annotations

import argparse
import sys

import sympy as sp

z = sp.symbols("z")
t = sp.symbols("t", positive=True)
n_sym = sp.symbols("n", integer=True)


def models() -> dict:
    c = sp.sqrt(sp.log(2))
    out = {
        "g1": (sp.pi / 2 * sp.cos(z), [-sp.pi / 2, sp.Integer(0), sp.pi / 2]),
        "g2": (c * (1 - sp.exp(z**2)), [-c, sp.Integer(0), c]),
    }
    for d in range(2, 6):
        out[f"cycle{d}"] = (z**d, [sp.Integer(0)])
    return out


def _equal(a, b) -> bool:
    return sp.simplify(a - b) == 0


def _local_degree(f, a, max_order: int = 12) -> int:
    d = f
    for k in range(1, max_order + 1):
        d = sp.diff(d, z)
        if not _equal(d.subs(z, a), 0):
            return k
    raise ValueError("local degree exceeds search bound")


def critical_values(f, periods: int = 3) -> set:
    sols = sp.solveset(sp.diff(f, z), z, domain=sp.S.Complexes)
    points = []
    for part in (sols.args if isinstance(sols, sp.Union) else (sols,)):
        if isinstance(part, sp.ImageSet):
            lam = part.lamda
            points += [lam(k) for k in range(-periods, periods + 1)]
        elif isinstance(part, sp.FiniteSet):
            points += list(part)
        else:
            raise ValueError(f"cannot enumerate critical points {part}")
    return {sp.nsimplify(sp.simplify(f.subs(z, p))) for p in points}


def ray_limits(f, n_rays: int = 8) -> set:
    out = set()
    for k in range(n_rays):
        direction = sp.exp(sp.I * sp.pi * k * 2 / n_rays)
        try:
            lim = sp.limit(f.subs(z, direction * t), t, sp.oo)
        except (NotImplementedError, ValueError):
            continue
        if lim.is_finite:
            out.add(sp.simplify(lim))
    return out


def oracle_portrait(f, marked: list) -> tuple[dict, set]:
    """({a: (f(a), weight)}, singular marked points)."""
    arrows = {}
    for a in marked:
        img = sp.simplify(f.subs(z, a))
        match = [b for b in marked if _equal(img, b)]
        if not match:
            raise ValueError(f"marked set is not forward invariant at {a}")
        arrows[a] = (match[0], _local_degree(f, a))
    sv = critical_values(f) | ray_limits(f)
    singular = {a for a in marked if any(_equal(a, v) for v in sv)}
    return arrows, singular


def numeric(arrows: dict, singular: set) -> tuple[dict, set]:
    """Same data with marked points as Python floats, for comparison with the package."""
    arr = {complex(sp.N(a)): (complex(sp.N(b)), w) for a, (b, w) in arrows.items()}
    return arr, {complex(sp.N(a)) for a in singular}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="calculus oracle for marked portraits")
    ap.add_argument("which", nargs="?", default="all")
    args = ap.parse_args(argv)
    table = models()
    names = list(table) if args.which == "all" else [args.which]
    for name in names:
        if name not in table:
            print(f"unknown model {name}", file=sys.stderr)
            return 2
        f, marked = table[name]
        arrows, singular = oracle_portrait(f, marked)
        print(f"{name}: f(z) = {f}")
        for a, (b, w) in arrows.items():
            print(f"  {a} -> {b} weight {w}" + (" singular" if a in singular else ""))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
