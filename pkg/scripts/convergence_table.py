"""Tabulate N(r) for the generator fixtures and the numeric sup-distances of (1+z/n)^n -> exp.

Usage: python3 scripts/convergence_table.py [--radius 10] [--n-max 12] [--ns 16,32,64,128,256]
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from thurstonquad import fixtures
from thurstonquad.approx import approximate, check_comb_convergence, threshold
from thurstonquad.numlift import NumericMap, verify_numeric_convergence


@dataclass
class Config:
    names: tuple = ("exp", "g1", "g2")
    radius: int = 10
    n_max: int = 12
    ns: list = field(default_factory=lambda: [16, 32, 64, 128, 256])
    word_radius: int = 4


def combinatorial(cfg: Config) -> None:
    print("fixture  threshold  " + "  ".join(f"r={r:<2d}" for r in range(1, cfg.radius + 1)))
    for name in cfg.names:
        q = fixtures.load(name)
        seq = [(n, approximate(q, n).quad) for n in range(1, cfg.n_max + 1)]
        cells = []
        for r in range(1, cfg.radius + 1):
            rep = check_comb_convergence(q, seq, r)
            cells.append(f"{rep.N:<4d}" if rep.ok else "FAIL")
        N = threshold(q)
        print(f"{name:<8s} {'-' if N is None else N:<10} " + "  ".join(cells))


def numeric(cfg: Config) -> None:
    seq = [(n, NumericMap(f"(1+z/{n})**{n}")) for n in cfg.ns]
    rep = verify_numeric_convergence(seq, NumericMap("exp(z)"), 0j, 1 + 0j, cfg.word_radius)
    print(f"\nnumeric: verdict {'PASS' if rep.ok else 'FAIL'}, words up to length {cfg.word_radius}")
    print("n      sup|lift_n - lift|   n * sup")
    for n, d in rep.sup_distance:
        print(f"{n:<6d} {d:<20.6g} {n * d:.4f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=Config.radius)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    ap.add_argument("--ns", default=None, help="comma separated exponents")
    args = ap.parse_args(argv)
    cfg = Config(radius=args.radius, n_max=args.n_max)
    if args.ns:
        cfg.ns = [int(x) for x in args.ns.split(",")]
    combinatorial(cfg)
    numeric(cfg)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
