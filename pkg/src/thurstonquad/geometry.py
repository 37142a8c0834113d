"""Plane geometry helpers. Points are Python complex numbers."""

from __future__ import annotations

import cmath
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import GeometryError

Point = complex


def as_array(pts: Iterable[complex]) -> np.ndarray:
    return np.asarray(list(pts), dtype=complex)


def signed_area(ring: Sequence[complex]) -> float:
    """Shoelace area of a closed ring (last point joins the first)."""
    z = as_array(ring)
    if len(z) < 3:
        return 0.0
    w = np.roll(z, -1)
    return 0.5 * float(np.sum(z.real * w.imag - w.real * z.imag))


def winding_number(ring: Sequence[complex], p: complex) -> int:
    z = as_array(ring) - p
    if len(z) == 0:
        return 0
    if np.any(np.abs(z) == 0):
        raise GeometryError("ring passes through the query point")
    w = np.roll(z, -1)
    total = float(np.sum(np.angle(w / z)))
    return int(round(total / (2 * math.pi)))


def polyline_length(pts: Sequence[complex]) -> float:
    z = as_array(pts)
    return float(np.sum(np.abs(np.diff(z))))


def distance_to_polyline(pts: Sequence[complex], p: complex) -> float:
    z = as_array(pts)
    if len(z) == 1:
        return abs(z[0] - p)
    a, b = z[:-1], z[1:]
    d = b - a
    denom = np.where(np.abs(d) == 0, 1.0, np.abs(d) ** 2)
    s = np.clip(((p - a) * d.conjugate()).real / denom, 0.0, 1.0)
    return float(np.min(np.abs(a + s * d - p)))


def midpoint_split(pts: Sequence[complex]) -> tuple[list[complex], complex, list[complex]]:
    """Split a polyline at half its arc length; returns (first, midpoint, second)."""
    z = list(pts)
    seg = [abs(z[i + 1] - z[i]) for i in range(len(z) - 1)]
    half = sum(seg) / 2
    acc = 0.0
    for i, s in enumerate(seg):
        if acc + s >= half and s > 0:
            mid = z[i] + (z[i + 1] - z[i]) * ((half - acc) / s)
            return z[: i + 1] + [mid], mid, [mid] + z[i + 1:]
        acc += s
    raise GeometryError("degenerate polyline")


def segments_cross(a: complex, b: complex, c: complex, d: complex, eps: float = 1e-12) -> bool:
    """True if closed segments ab and cd share a point."""

    def orient(p, q, r):
        v = ((q - p).conjugate() * (r - p)).imag
        return 0 if abs(v) <= eps else (1 if v > 0 else -1)

    def on_seg(p, q, r):
        return (min(p.real, q.real) - eps <= r.real <= max(p.real, q.real) + eps
                and min(p.imag, q.imag) - eps <= r.imag <= max(p.imag, q.imag) + eps)

    o1, o2, o3, o4 = orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    return ((o1 == 0 and on_seg(a, b, c)) or (o2 == 0 and on_seg(a, b, d))
            or (o3 == 0 and on_seg(c, d, a)) or (o4 == 0 and on_seg(c, d, b)))


def polylines_meet(p: Sequence[complex], q: Sequence[complex], allowed: Iterable[complex] = ()) -> bool:
    """Do two polylines meet anywhere other than at the allowed shared points?

    Segments touching an allowed endpoint are shortened by a tiny fraction so
    that a common endpoint does not count as a crossing.
    """
    allowed = list(allowed)

    def trimmed(pts):
        z = list(pts)
        segs = []
        for i in range(len(z) - 1):
            a, b = z[i], z[i + 1]
            if any(abs(a - w) < 1e-12 for w in allowed):
                a = a + (b - a) * 1e-6
            if any(abs(b - w) < 1e-12 for w in allowed):
                b = b + (a - b) * 1e-6
            segs.append((a, b))
        return segs

    sp, sq = trimmed(p), trimmed(q)
    if not sp or not sq:
        return False
    ap, aq = as_array(p), as_array(q)
    if (ap.real.max() < aq.real.min() or aq.real.max() < ap.real.min()
            or ap.imag.max() < aq.imag.min() or aq.imag.max() < ap.imag.min()):
        return False
    for a, b in sp:
        lo_x, hi_x = min(a.real, b.real), max(a.real, b.real)
        lo_y, hi_y = min(a.imag, b.imag), max(a.imag, b.imag)
        for c, d in sq:
            if max(c.real, d.real) < lo_x or min(c.real, d.real) > hi_x:
                continue
            if max(c.imag, d.imag) < lo_y or min(c.imag, d.imag) > hi_y:
                continue
            if segments_cross(a, b, c, d):
                return True
    return False


def polyline_self_crosses(pts: Sequence[complex]) -> bool:
    z = list(pts)
    closed = len(z) > 2 and abs(z[0] - z[-1]) < 1e-12
    n = len(z) - 1
    for i in range(n):
        for k in range(i + 2, n):
            if closed and i == 0 and k == n - 1:
                continue
            if segments_cross(z[i], z[i + 1], z[k], z[k + 1], eps=0.0):
                return True
    return False


def offset_polyline(pts: Sequence[complex], frac: float = 0.1) -> list[complex]:
    """Shift the interior nodes of a polyline to its left side.

    Each interior node moves along the left normal of the bisector of its two
    segments, by ``frac`` times the shorter adjacent segment. Endpoints stay.
    """
    z = list(pts)
    out = [z[0]]
    for i in range(1, len(z) - 1):
        a, b = z[i] - z[i - 1], z[i + 1] - z[i]
        if abs(a) == 0 or abs(b) == 0:
            out.append(z[i])
            continue
        t = a / abs(a) + b / abs(b)
        if abs(t) < 1e-12:
            t = a / abs(a)
        n = 1j * t / abs(t)
        out.append(z[i] + n * frac * min(abs(a), abs(b)))
    out.append(z[-1])
    return out


def tangent_angle(pts: Sequence[complex]) -> float:
    """Angle of the initial direction of a polyline."""
    for q in pts[1:]:
        if abs(q - pts[0]) > 0:
            return cmath.phase(q - pts[0])
    raise GeometryError("polyline has no extent")


def ray_crossings(pts: Sequence[complex], a: complex, tol: float = 1e-12) -> list[int]:
    """Signed crossings of a polyline with the downward vertical ray from ``a``.

    +1 when the path crosses from left to right (as a counterclockwise loop
    around ``a`` does), -1 for right to left. The half-open test
    ``x0 < a.x <= x1`` is the limit of shifting the ray slightly to the left,
    so nodes sitting exactly above or below ``a`` are counted consistently.
    """
    out = []
    ax, ay = a.real, a.imag
    for i in range(len(pts) - 1):
        p, q = pts[i], pts[i + 1]
        if p.real < ax <= q.real:
            sign = 1
        elif q.real < ax <= p.real:
            sign = -1
        else:
            if p.real == ax == q.real and min(p.imag, q.imag) <= ay <= max(p.imag, q.imag):
                raise GeometryError(f"path runs through marked point {a}")
            continue
        y = p.imag + (ax - p.real) * (q.imag - p.imag) / (q.real - p.real)
        if abs(y - ay) <= tol * max(1.0, abs(ay)):
            raise GeometryError(f"path meets marked point {a}; perturb the drawing")
        if y < ay:
            out.append(sign)
    return out


def teardrop(center: complex, target: complex, radius: float, n_arc: int = 96, n_seg: int = 24) -> list[complex]:
    """Counterclockwise loop from ``center`` around ``target``.

    Straight tangent segment out, arc of the given radius around the target,
    straight segment back.
    """
    d = abs(target - center)
    if radius >= d:
        raise GeometryError("petal radius must be smaller than the distance to the center")
    th = cmath.phase(target - center)
    h = math.asin(radius / d)
    reach = math.sqrt(d * d - radius * radius)
    p_out = center + reach * cmath.exp(1j * (th - h))
    p_in = center + reach * cmath.exp(1j * (th + h))
    s = cmath.phase(p_out - target)
    e = cmath.phase(p_in - target)
    while e <= s:
        e += 2 * math.pi
    seg1 = [center + (p_out - center) * k / n_seg for k in range(n_seg)]
    arc = [target + radius * cmath.exp(1j * (s + (e - s) * k / n_arc)) for k in range(n_arc + 1)]
    seg2 = [p_in + (center - p_in) * k / n_seg for k in range(1, n_seg + 1)]
    return seg1 + arc + seg2


def bbox(points: Iterable[complex]) -> tuple[float, float, float, float]:
    z = as_array(points)
    return float(z.real.min()), float(z.imag.min()), float(z.real.max()), float(z.imag.max())
