"""Concrete entire maps, path lifting by continuation, numeric reconstruction."""

from __future__ import annotations

import ast
import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import polynomial as P

from . import geometry as geo
from .errors import ContinuationError, DomainError, GeometryError, ValidationError
from .planar import Edge, graph_from_geometry
from .quad import MarkedSet, Quadruple, Rose, default_rose, validate_admissible
from .words import Word, alphabet

# expressions ------------------------------------------------------------------

_UNARY = {"exp", "cos", "sin", "neg"}
_NARY = {"add", "mul"}
_BINARY = {"sub", "div"}
_CONST = {"pi": math.pi, "e": math.e, "i": 1j}
_CONST_FUNCS = {"sqrt": cmath.sqrt, "log": cmath.log}


@dataclass(frozen=True)
class Expr:
    op: str  # "z", "const", "add", "sub", "mul", "div", "pow", "exp", "cos", "sin", "neg", "scale"
    args: tuple = ()
    value: complex | int | None = None

    def __str__(self) -> str:
        if self.op == "z":
            return "z"
        if self.op == "const":
            v = complex(self.value)
            return repr(v.real) if v.imag == 0 else repr(v)
        if self.op == "pow":
            return f"pow({self.args[0]}, {self.value})"
        if self.op == "scale":
            return f"scale({complex(self.value).real!r}, {self.args[0]})" if complex(self.value).imag == 0 \
                else f"scale({complex(self.value)!r}, {self.args[0]})"
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


def parse_expr(text: str) -> Expr:
    """Parse prefix (``pow(add(1, div(z, 8)), 8)``) or infix (``(1+z/8)**8``) syntax."""
    try:
        tree = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as err:
        raise ValueError(f"cannot parse map {text!r}: {err.msg}") from None
    return _from_ast(tree)


def _const_of(node) -> complex | None:
    try:
        e = _from_ast(node)
    except ValueError:
        return None
    return e.value if e.op == "const" else None


def _from_ast(node) -> Expr:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
        return Expr("const", value=complex(node.value))
    if isinstance(node, ast.Name):
        if node.id == "z":
            return Expr("z")
        if node.id in _CONST:
            return Expr("const", value=complex(_CONST[node.id]))
        raise ValueError(f"unknown name {node.id!r}")
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        inner = _from_ast(node.operand)
        return inner if isinstance(node.op, ast.UAdd) else _fold(Expr("neg", (inner,)))
    if isinstance(node, ast.BinOp):
        a, b = _from_ast(node.left), _from_ast(node.right)
        if isinstance(node.op, ast.Pow):
            return _make_pow(a, b)
        op = {ast.Add: "add", ast.Sub: "sub", ast.Mult: "mul", ast.Div: "div"}.get(type(node.op))
        if op is None:
            raise ValueError("unsupported operator")
        return _fold(Expr(op, (a, b)))
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        name = node.func.id
        args = [_from_ast(a) for a in node.args]
        if name in _UNARY and len(args) == 1:
            return _fold(Expr(name, tuple(args)))
        if name in _NARY and len(args) >= 2:
            out = args[0]
            for a in args[1:]:
                out = _fold(Expr(name, (out, a)))
            return out
        if name in _BINARY and len(args) == 2:
            return _fold(Expr(name, tuple(args)))
        if name == "pow" and len(args) == 2:
            return _make_pow(*args)
        if name in _CONST_FUNCS and len(args) == 1:
            if args[0].op != "const":
                raise ValueError(f"{name} is only supported on constants")
            return Expr("const", value=complex(_CONST_FUNCS[name](complex(args[0].value))))
        if name == "scale" and len(args) == 2 and args[0].op == "const":
            return Expr("scale", (args[1],), args[0].value)
        raise ValueError(f"bad call {name}/{len(args)}")
    raise ValueError(f"unsupported syntax: {ast.dump(node)[:60]}")


def _make_pow(a: Expr, b: Expr) -> Expr:
    if b.op != "const" or complex(b.value).imag != 0 or complex(b.value).real != int(complex(b.value).real):
        raise ValueError("only integer powers are supported")
    return _fold(Expr("pow", (a,), int(complex(b.value).real)))


def _fold(e: Expr) -> Expr:
    """Evaluate constant subtrees."""
    if e.args and all(a.op == "const" for a in e.args):
        f = compile_expr(e, vector=False)
        return Expr("const", value=complex(f(0j)[0]))
    return e


def compile_expr(e: Expr, vector: bool = False) -> Callable:
    """Straight-line code computing (value, derivative)."""
    lines: list[str] = []
    counter = [0]
    lib = "np" if vector else "cmath"

    def emit(node: Expr) -> tuple[str, str]:
        k = counter[0]
        counter[0] += 1
        v, d = f"v{k}", f"d{k}"
        if node.op == "z":
            lines.append(f"{v} = z; {d} = one")
        elif node.op == "const":
            lines.append(f"{v} = {complex(node.value)!r}; {d} = 0j")
        elif node.op == "scale":
            a, da = emit(node.args[0])
            c = complex(node.value)
            lines.append(f"{v} = {c!r} * {a}; {d} = {c!r} * {da}")
        elif node.op == "neg":
            a, da = emit(node.args[0])
            lines.append(f"{v} = -{a}; {d} = -{da}")
        elif node.op in ("add", "sub"):
            (a, da), (b, db) = emit(node.args[0]), emit(node.args[1])
            s = "+" if node.op == "add" else "-"
            lines.append(f"{v} = {a} {s} {b}; {d} = {da} {s} {db}")
        elif node.op == "mul":
            (a, da), (b, db) = emit(node.args[0]), emit(node.args[1])
            lines.append(f"{v} = {a} * {b}; {d} = {da} * {b} + {a} * {db}")
        elif node.op == "div":
            (a, da), (b, db) = emit(node.args[0]), emit(node.args[1])
            lines.append(f"{v} = {a} / {b}; {d} = ({da} * {b} - {a} * {db}) / ({b} * {b})")
        elif node.op == "pow":
            a, da = emit(node.args[0])
            n = int(node.value)
            if n == 0:
                lines.append(f"{v} = one; {d} = 0j * {a}")
            else:
                lines.append(f"p{k} = {a} ** {n - 1}; {v} = p{k} * {a}; {d} = {n} * p{k} * {da}")
        elif node.op == "exp":
            a, da = emit(node.args[0])
            lines.append(f"{v} = {lib}.exp({a}); {d} = {v} * {da}")
        elif node.op == "cos":
            a, da = emit(node.args[0])
            lines.append(f"{v} = {lib}.cos({a}); {d} = -{lib}.sin({a}) * {da}")
        elif node.op == "sin":
            a, da = emit(node.args[0])
            lines.append(f"{v} = {lib}.sin({a}); {d} = {lib}.cos({a}) * {da}")
        else:
            raise ValueError(f"unknown op {node.op}")
        return v, d

    out_v, out_d = emit(e)
    one = "np.ones_like(z)" if vector else "1 + 0j"
    src = "def _f(z):\n    one = " + one + "\n" + "".join(f"    {ln}\n" for ln in lines)
    src += f"    return {out_v}, {out_d}\n"
    ns = {"cmath": cmath, "np": np}
    exec(compile(src, "<map>", "exec"), ns)
    return ns["_f"]


def _poly_of(e: Expr):
    if e.op == "z":
        return np.array([0, 1], dtype=complex)
    if e.op == "const":
        return np.array([e.value], dtype=complex)
    sub = [_poly_of(a) for a in e.args]
    if any(s is None for s in sub):
        return None
    if e.op == "add":
        return P.polyadd(*sub)
    if e.op == "sub":
        return P.polysub(*sub)
    if e.op == "mul":
        return P.polymul(*sub)
    if e.op == "neg":
        return -sub[0]
    if e.op == "scale":
        return complex(e.value) * sub[0]
    if e.op == "div" and len(P.polytrim(sub[1])) == 1:
        return sub[0] / sub[1][0]
    if e.op == "pow" and int(e.value) >= 0:
        return P.polypow(sub[0], int(e.value))
    return None


class NumericMap:
    """An entire map given by an expression tree, with exact derivative."""

    def __init__(self, expr: Expr | str, singular_values: Sequence[complex] = ()):
        self.expr = parse_expr(expr) if isinstance(expr, str) else expr
        self._scalar = compile_expr(self.expr, vector=False)
        self._vector = compile_expr(self.expr, vector=True)
        self.singular_values = tuple(complex(s) for s in singular_values)

    def __str__(self) -> str:
        return str(self.expr)

    def __repr__(self) -> str:
        return f"NumericMap({str(self)!r})"

    def eval2(self, z):
        """(f(z), f'(z)); non-finite results come back as nan."""
        try:
            if isinstance(z, np.ndarray):
                with np.errstate(all="ignore"):
                    return self._vector(z.astype(complex))
            return self._scalar(complex(z))
        except (OverflowError, ZeroDivisionError):
            return complex("nan"), complex("nan")

    def __call__(self, z):
        return self.eval2(z)[0]

    def derivative(self, z):
        return self.eval2(z)[1]

    def coefficients(self) -> np.ndarray | None:
        """Coefficients lowest degree first, or None if not a polynomial."""
        c = _poly_of(self.expr)
        return None if c is None else P.polytrim(c, 0)

    @property
    def is_polynomial(self) -> bool:
        return self.coefficients() is not None

    @property
    def degree(self) -> int:
        c = self.coefficients()
        if c is None:
            raise DomainError("not a polynomial")
        return len(c) - 1

    def critical_values(self) -> list[complex]:
        c = self.coefficients()
        if c is None:
            return list(self.singular_values)
        dc = P.polyder(c)
        if len(P.polytrim(dc, 0)) <= 1:
            return []
        crit = P.polyroots(dc)
        return [complex(P.polyval(z, c)) for z in crit]


def evaluate(f: NumericMap | str, z: complex) -> complex:
    f = NumericMap(f) if isinstance(f, str) else f
    return f(z)


# paths ------------------------------------------------------------------------


@dataclass
class NumericPath:
    params: np.ndarray
    points: np.ndarray
    func: Callable | None = field(default=None, repr=False)
    substeps: int = 0
    tol_close: float = 1e-6

    def at(self, t):
        if self.func is not None:
            return self.func(t)
        return np.interp(t, self.params, self.points.real) + 1j * np.interp(t, self.params, self.points.imag)

    @property
    def start(self) -> complex:
        return complex(self.points[0])

    @property
    def end(self) -> complex:
        return complex(self.points[-1])

    @property
    def diameter(self) -> float:
        z = self.points
        return float(max(np.ptp(z.real), np.ptp(z.imag), 0.0)) * math.sqrt(2)

    @property
    def closed(self) -> bool:
        return abs(self.end - self.start) < self.tol_close

    def reversed(self) -> "NumericPath":
        func = None if self.func is None else (lambda t, f=self.func: f(1 - t))
        return NumericPath(1 - self.params[::-1], self.points[::-1].copy(), func)


def path_from_polyline(pts: Sequence[complex]) -> NumericPath:
    z = np.asarray(pts, dtype=complex)
    seg = np.abs(np.diff(z))
    t = np.concatenate([[0.0], np.cumsum(seg)])
    t = t / t[-1] if t[-1] > 0 else np.linspace(0.0, 1.0, len(z))
    return NumericPath(t, z)


def circle_path(center: complex = 0j, radius: float = 1.0, base_angle: float = 0.0, n: int = 256) -> NumericPath:
    """Counterclockwise circle starting at center + radius * e^{i base_angle}."""
    def func(t):
        return center + radius * np.exp(1j * (base_angle + 2 * np.pi * np.asarray(t)))
    t = np.linspace(0, 1, n + 1)
    return NumericPath(t, func(t), func)


@dataclass
class Continuation:
    step: float = 1 / 256
    newton_tol: float = 1e-10
    min_step: float = 2.0 ** -24
    max_newton: int = 8
    deriv_floor: float = 1e-12


def _advance(f: NumericMap, gamma: NumericPath, z, t0: float, t1: float, cfg: Continuation, stats):
    w0, w1 = gamma.at(t0), gamma.at(t1)
    fz, dz = f.eval2(z)
    if np.any(~np.isfinite(dz)) or np.any(np.abs(dz) < cfg.deriv_floor):
        raise ContinuationError("derivative vanishes or overflows along the lift (singular value too close)")
    pred = z + (w1 - w0) / dz
    zc = pred
    ok = False
    for _ in range(cfg.max_newton):
        fv, dv = f.eval2(zc)
        if np.any(~np.isfinite(dv)) or np.any(np.abs(dv) < cfg.deriv_floor):
            break
        corr = (fv - w1) / dv
        zc = zc - corr
        if np.all(np.abs(corr) <= cfg.newton_tol * np.maximum(1.0, np.abs(zc))):
            ok = True
            break
    if ok:
        jump = np.abs(zc - pred)
        ok = bool(np.all(jump <= 0.25 * np.abs(pred - z) + 1e3 * cfg.newton_tol * np.maximum(1.0, np.abs(zc))))
    if ok:
        return zc
    h = (t1 - t0) / 2
    if h < cfg.min_step:
        raise ContinuationError(f"step underflow near t = {t0:.6f}")
    stats[0] += 1
    zm = _advance(f, gamma, z, t0, t0 + h, cfg, stats)
    return _advance(f, gamma, zm, t0 + h, t1, cfg, stats)


def _advance_scalar(f: NumericMap, gamma: NumericPath, z: complex, t0: float, t1: float, cfg: Continuation, stats):
    w0, w1 = complex(gamma.at(t0)), complex(gamma.at(t1))
    fz, dz = f._scalar(z)
    if not cmath.isfinite(dz) or abs(dz) < cfg.deriv_floor:
        raise ContinuationError("derivative vanishes or overflows along the lift (singular value too close)")
    pred = z + (w1 - w0) / dz
    zc = pred
    ok = False
    for _ in range(cfg.max_newton):
        try:
            fv, dv = f._scalar(zc)
        except (OverflowError, ZeroDivisionError):
            break
        if not cmath.isfinite(dv) or abs(dv) < cfg.deriv_floor:
            break
        corr = (fv - w1) / dv
        zc -= corr
        if abs(corr) <= cfg.newton_tol * max(1.0, abs(zc)):
            ok = True
            break
    if ok and abs(zc - pred) <= 0.25 * abs(pred - z) + 1e3 * cfg.newton_tol * max(1.0, abs(zc)):
        return zc
    h = (t1 - t0) / 2
    if h < cfg.min_step:
        raise ContinuationError(f"step underflow near t = {t0:.6f}")
    stats[0] += 1
    zm = _advance_scalar(f, gamma, z, t0, t0 + h, cfg, stats)
    return _advance_scalar(f, gamma, zm, t0 + h, t1, cfg, stats)


def _polish(f: NumericMap, z, w, cfg: Continuation):
    for _ in range(20):
        fv, dv = f.eval2(z)
        corr = (fv - w) / dv
        z = z - corr
        if np.all(np.abs(corr) <= cfg.newton_tol * np.maximum(1.0, np.abs(z))):
            break
    return z


def lift_many(f: NumericMap, gamma: NumericPath, starts, cfg: Continuation | None = None) -> tuple[np.ndarray, int]:
    """Lift ``gamma`` from several starting points at once; returns (samples x starts, substeps)."""
    cfg = cfg or Continuation()
    z = np.asarray(starts, dtype=complex).copy()
    w0 = gamma.at(0.0)
    d0 = f.eval2(z)[1]
    if np.any(~np.isfinite(d0)) or np.any(np.abs(d0) < cfg.deriv_floor):
        raise ContinuationError("lift starts at a critical point")
    polished = _polish(f, z, w0, cfg)
    resid = np.abs(f.eval2(polished)[0] - w0)
    moved = np.abs(polished - z)
    if np.any(~(resid <= 1e-8 * max(1.0, abs(w0)))) or np.any(moved > 1e-3 * np.maximum(1.0, np.abs(z))):
        raise ValidationError(f"start point does not map to the base of the path (residual {resid.max():.2e})")
    z = polished
    n = int(round(1 / cfg.step))
    ts = np.linspace(0.0, 1.0, n + 1)
    out = np.empty((n + 1, len(z)), dtype=complex)
    out[0] = z
    stats = [0]
    if len(z) == 1:
        z = complex(z[0])
        adv = _advance_scalar
    else:
        adv = _advance
    for k in range(n):
        z = adv(f, gamma, z, float(ts[k]), float(ts[k + 1]), cfg, stats)
        out[k + 1] = z
    return out, stats[0]


def lift_path_numeric(f: NumericMap, gamma: NumericPath, z0: complex, tol: float = 1e-10,
                      cfg: Continuation | None = None) -> NumericPath:
    cfg = cfg or Continuation(newton_tol=tol)
    pts, sub = lift_many(f, gamma, [z0], cfg)
    ts = np.linspace(0.0, 1.0, len(pts))
    return NumericPath(ts, pts[:, 0], substeps=sub, tol_close=1e-6 * max(gamma.diameter, 1e-300))


@dataclass(frozen=True)
class Exceeds:
    max_k: int

    def __str__(self):
        return f"exceeds({self.max_k})"


def _aberth(f: NumericMap, c: np.ndarray, w: complex, iters: int = 1000) -> np.ndarray:
    """Simultaneous root iteration evaluated through the expression, not the coefficients.

    Expanded coefficients of maps like (1 + z/n)^n are too ill-conditioned
    for companion-matrix root finding once n is a few dozen.
    """
    n = len(c) - 1
    if n == 1:
        return np.array([(w - c[0]) / c[1]])
    center = -c[n - 1] / (n * c[n])
    radius = abs(complex(f(complex(center))) - w) ** (1.0 / n) / abs(c[n]) ** (1.0 / n)
    if not np.isfinite(radius) or radius == 0:
        radius = 1.0
    z = center + radius * np.exp(2j * np.pi * (np.arange(n) + 0.25) / n)
    for _ in range(iters):
        fv, dv = f.eval2(z)
        ratio = (fv - w) / dv
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        corr = ratio / (1.0 - ratio * inv.sum(axis=1))
        z = z - corr
        if np.all(np.abs(corr) <= 1e-14 * np.maximum(1.0, np.abs(z))):
            break
    return z


def preimages(f: NumericMap, w: complex, cfg: Continuation | None = None) -> np.ndarray:
    """All solutions of f(z) = w for a polynomial f, Newton-polished and checked distinct."""
    c = f.coefficients()
    if c is None or len(c) < 2:
        raise DomainError("preimages are computed for non-constant polynomials only")
    roots = _polish(f, _aberth(f, c, w), w, cfg or Continuation())
    scale = max(1.0, float(np.max(np.abs(roots))))
    for i in range(len(roots)):
        for k in range(i + 1, len(roots)):
            if abs(roots[i] - roots[k]) < 1e-8 * scale:
                raise ValidationError("root clustering: preimages are not separated")
    return roots


def closure_degree(f: NumericMap, gamma: NumericPath, z0: complex, max_k: int = 64,
                   cfg: Continuation | None = None) -> int | Exceeds:
    """Least k such that the lift of gamma^k from z0 closes."""
    tol = 1e-6 * max(gamma.diameter, 1e-300)
    c = f.coefficients()
    if c is not None and len(c) > 2:
        roots = preimages(f, gamma.at(0.0), cfg)
        i0 = int(np.argmin(np.abs(roots - z0)))
        if abs(roots[i0] - z0) > 1e-6 * max(1.0, abs(z0)):
            raise ValidationError("z0 is not a preimage of the base point")
        pts, _ = lift_many(f, gamma, roots, cfg)
        ends = pts[-1]
        perm = [int(np.argmin(np.abs(roots - e))) for e in ends]
        cur = i0
        for k in range(1, max_k + 1):
            cur = perm[cur]
            if cur == i0:
                return k
        return Exceeds(max_k)
    z = complex(z0)
    for k in range(1, max_k + 1):
        pts, _ = lift_many(f, gamma, [z], cfg)
        z = complex(pts[-1, 0])
        if abs(z - z0) < tol:
            return k
    return Exceeds(max_k)


# reconstruction -------------------------------------------------------------------


def _petal_paths(rose: Rose) -> list[NumericPath]:
    return [path_from_polyline(p.polyline) for p in rose.petals]


def build_quadruple_numeric(f: NumericMap, rose: Rose, marked: MarkedSet,
                            window: tuple[float, float, float, float] | None = None,
                            margin: float = 1e-3, cfg: Continuation | None = None) -> Quadruple:
    """Numerical preimage of the rose under a polynomial, as a finite quadruple."""
    c = f.coefficients()
    if c is None or len(c) < 2:
        raise DomainError("numeric reconstruction needs a non-constant polynomial")
    for cv in f.critical_values():
        for p in rose.petals:
            if geo.distance_to_polyline(p.polyline, cv) < margin:
                raise GeometryError(f"petal {p.index} passes within {margin} of critical value {cv:.6g}")
        if abs(cv - rose.center) < margin:
            raise GeometryError("rose center is a critical value")
    roots = preimages(f, rose.center, cfg)
    scale = max(1.0, float(np.max(np.abs(roots))))
    if window is not None:
        x0, y0, x1, y1 = window
        if any(not (x0 <= r.real <= x1 and y0 <= r.imag <= y1) for r in roots):
            raise ValidationError("window does not contain every preimage of the center")
    vertices = {i: complex(z) for i, z in enumerate(roots)}
    edges = {}
    eid = 0
    for p, path in zip(rose.petals, _petal_paths(rose)):
        pts, _ = lift_many(f, path, roots, cfg)
        for i in range(len(roots)):
            end = pts[-1, i]
            k = int(np.argmin(np.abs(roots - end)))
            if abs(roots[k] - end) > 1e-6 * scale:
                raise ContinuationError(f"lift of petal {p.index} from vertex {i} ends off the vertex set")
            line = [complex(z) for z in pts[:, i]]
            line[0], line[-1] = vertices[i], vertices[k]
            edges[eid] = Edge(i, k, p.index, tuple(line))
            eid += 1
    g = graph_from_geometry(vertices, edges, basepoint=0)
    q = Quadruple(marked, rose, graph=g, parabolic=True, parabolic_note="finite", basepoint=0)
    return q


def lift_petals(f: NumericMap, rose: Rose, seeds: Sequence[complex], cfg: Continuation | None = None) -> dict:
    """(seed index, petal index) -> lifted polyline, for maps that are not polynomials."""
    out = {}
    for p, path in zip(rose.petals, _petal_paths(rose)):
        pts, _ = lift_many(f, path, seeds, cfg)
        for i in range(len(seeds)):
            out[(i, p.index)] = pts[:, i]
    return out


# convergence of maps -----------------------------------------------------------


@dataclass
class NumericConvergenceReport:
    ok: bool
    derivative_errors: list
    derivative_ok: bool
    word_N: dict
    N: int | None
    witness: Word | None
    sup_distance: list
    radius: int

    def lines(self) -> list[str]:
        out = [f"verdict: {'PASS' if self.ok else 'FAIL'}", f"radius: {self.radius}",
               f"derivative_ok: {self.derivative_ok}"]
        for n, err in self.derivative_errors:
            out.append(f"derivative_error[{n}]: {err:.3e}")
        for n, d in self.sup_distance:
            out.append(f"sup_distance[{n}]: {d:.6g}")
        out.append(f"N: {self.N if self.N is not None else '-'}")
        if self.witness is not None:
            out.append(f"witness: {self.witness}")
        return out


class _Lifter:
    def __init__(self, f: NumericMap, paths: list[NumericPath], cfg: Continuation):
        self.f = f
        self.paths = paths
        self.rev = [p.reversed() for p in paths]
        self.cfg = cfg
        self.cache: dict = {}

    def step(self, z: complex, j: int, s: int) -> complex:
        key = (round(z.real, 7), round(z.imag, 7), j, s)
        if key not in self.cache:
            path = self.paths[j - 1] if s > 0 else self.rev[j - 1]
            pts, _ = lift_many(self.f, path, [z], self.cfg)
            self.cache[key] = complex(pts[-1, 0])
        return self.cache[key]


def _closure_verdicts(lifter: _Lifter, z0: complex, m: int, r: int, tol: float) -> dict:
    out = {(): True}
    stack = [((), z0)]
    while stack:
        w, z = stack.pop()
        if len(w) == r:
            continue
        for a in alphabet(m):
            if w and w[-1] == (a[0], -a[1]):
                continue
            z2 = lifter.step(z, *a)
            w2 = w + (a,)
            out[w2] = abs(z2 - z0) < tol
            stack.append((w2, z2))
    return out


def verify_numeric_convergence(seq: Sequence[tuple[int, NumericMap]], target: NumericMap, z0: complex,
                               w0: complex, r: int, tol: float = 1e-6, rose: Rose | None = None,
                               marked: MarkedSet | None = None,
                               cfg: Continuation | None = None) -> NumericConvergenceReport:
    """Derivative matching at z0 and agreement of loop-closure verdicts on the radius-r word ball."""
    cfg = cfg or Continuation()
    if rose is None:
        marked = marked or MarkedSet.of([0j])
        rose = default_rose(marked, w0)
    if abs(rose.center - w0) > 1e-9:
        raise ValidationError("rose must be based at w0")
    maps = [(n, g) for n, g in seq]
    for n, g in maps + [("target", target)]:
        if abs(g(z0) - w0) > tol * max(1.0, abs(w0)):
            raise ValidationError(f"map {n} does not send z0 to w0")
    d_target = target.derivative(z0)
    errs = [(n, abs(g.derivative(z0) - d_target)) for n, g in maps]
    vals = [e for _, e in errs]
    deriv_ok = bool(vals) and all(b <= a + 1e-9 for a, b in zip(vals, vals[1:])) and vals[-1] <= max(tol, 1e-6)
    paths = _petal_paths(rose)
    diam = max(p.diameter for p in paths)
    close_tol = 1e-6 * max(diam, 1.0)
    m = rose.m
    tv = _closure_verdicts(_Lifter(target, paths, cfg), z0, m, r, close_tol)
    verdicts = [(n, _closure_verdicts(_Lifter(g, paths, cfg), z0, m, r, close_tol)) for n, g in maps]
    word_N, witness, N = {}, None, None
    overall = maps[0][0] if maps else None
    for w in sorted(tv, key=lambda w: (len(w), [(-s, j) for j, s in w])):
        bad = [i for i, (n, v) in enumerate(verdicts) if v[w] != tv[w]]
        if not bad:
            word_N[w] = maps[0][0]
            continue
        if bad[-1] == len(verdicts) - 1:
            witness = Word(w) if witness is None else witness
            word_N[w] = None
            continue
        word_N[w] = maps[bad[-1] + 1][0]
    if witness is None and maps:
        idx = max([0] + [[n for n, _ in maps].index(v) for v in word_N.values() if v is not None])
        N = maps[idx][0]
    sup = []
    for n, g in maps:
        d = 0.0
        for j in range(1, m + 1):
            a = lift_path_numeric(g, paths[j - 1], z0, cfg=cfg).points
            b = lift_path_numeric(target, paths[j - 1], z0, cfg=cfg).points
            d = max(d, float(np.max(np.abs(a - b))))
        sup.append((n, d))
    ok = deriv_ok and witness is None
    return NumericConvergenceReport(ok, errs, deriv_ok, word_N, N, witness, sup, r)


def teich_bound(r: float, R: float) -> float:
    """Upper bound log((1 + r/R) / (1 - r/R)) for 0 < r < R."""
    if not (0 < r < R):
        raise DomainError("teich_bound needs 0 < r < R")
    x = r / R
    return math.log1p(x) - math.log1p(-x)
