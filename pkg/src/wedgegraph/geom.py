"""Planar primitives: robust orientation, angles, rays, closed wedges.

Angles are plain floats in radians.  Wedge membership is decided with
cross-product signs against the two boundary rays, with a small angular
slack so that points placed on a boundary by construction test inside.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DegenerateWedge

TWO_PI = 2.0 * math.pi

# Shewchuk's first-stage error bound for orient2d, epsilon = 2**-53.
_EPS = 2.0 ** -53
_CCW_ERRBOUND_A = (3.0 + 16.0 * _EPS) * _EPS


class Point(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class Tolerance:
    """eps_len is relative to the instance diameter; eps_ang is in radians."""

    eps_len: float = 1e-9
    eps_ang: float = 1e-9

    def __post_init__(self):
        if not (self.eps_len > 0 and self.eps_ang > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


def normalize_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)."""
    t = math.fmod(theta, TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if t >= TWO_PI:  # -tiny + 2pi can round up to 2pi
        t = 0.0
    return t


def direction(a, b) -> float:
    """Angle of the vector a -> b, in [0, 2*pi)."""
    return normalize_angle(math.atan2(b[1] - a[1], b[0] - a[0]))


def dist(a, b) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def orientation(p, q, r) -> int:
    """Sign of the turn p -> q -> r: +1 left, -1 right, 0 collinear.

    A floating-point filter settles almost every call; the rest are
    decided exactly with rationals, so the sign is always correct for
    the given (finite, representable) coordinates.
    """
    detleft = (p[0] - r[0]) * (q[1] - r[1])
    detright = (p[1] - r[1]) * (q[0] - r[0])
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return 1 if det > 0 else (-1 if det < 0 else 0)
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return 1 if det > 0 else (-1 if det < 0 else 0)
        detsum = -detleft - detright
    else:
        return 1 if det > 0 else (-1 if det < 0 else 0)
    errbound = _CCW_ERRBOUND_A * detsum
    if det >= errbound and det != 0.0:
        return 1
    if -det >= errbound and det != 0.0:
        return -1
    return _orientation_exact(p, q, r)


def _orientation_exact(p, q, r) -> int:
    px, py = Fraction(p[0]), Fraction(p[1])
    d = (Fraction(q[0]) - px) * (Fraction(r[1]) - py) - (Fraction(q[1]) - py) * (
        Fraction(r[0]) - px
    )
    return (d > 0) - (d < 0)


def orientation_many(p, q, pts: np.ndarray) -> np.ndarray:
    """Vectorised ``orientation(p, q, r)`` for every row r of ``pts``."""
    pts = np.asarray(pts, dtype=float)
    detleft = (p[0] - pts[:, 0]) * (q[1] - pts[:, 1])
    detright = (p[1] - pts[:, 1]) * (q[0] - pts[:, 0])
    det = detleft - detright
    errbound = _CCW_ERRBOUND_A * (np.abs(detleft) + np.abs(detright))
    out = np.zeros(len(pts), dtype=np.int8)
    out[det > errbound] = 1
    out[-det > errbound] = -1
    for i in np.flatnonzero(out == 0):
        out[i] = _orientation_exact(p, q, pts[i])
    return out


@dataclass(frozen=True)
class Ray:
    apex: Point
    direction: float

    def __post_init__(self):
        object.__setattr__(self, "direction", normalize_angle(self.direction))

    def unit(self) -> tuple[float, float]:
        return math.cos(self.direction), math.sin(self.direction)


@dataclass(frozen=True)
class Wedge:
    """Closed angular sector: directions within ``half_angle`` of ``bisector``."""

    apex: Point
    bisector: float
    half_angle: float

    def __post_init__(self):
        if not (0.0 < self.half_angle < math.pi / 2):
            raise DegenerateWedge(f"half_angle {self.half_angle!r} outside (0, pi/2)")
        object.__setattr__(self, "apex", Point(float(self.apex[0]), float(self.apex[1])))
        object.__setattr__(self, "bisector", normalize_angle(self.bisector))

    @property
    def angle(self) -> float:
        return 2.0 * self.half_angle

    def boundary(self) -> tuple[float, float, float, float]:
        """Unit vectors of the clockwise and counter-clockwise boundary rays."""
        return boundary_vectors(self.bisector, self.half_angle)

    def contains(self, p, tol: Tolerance = DEFAULT_TOL) -> bool:
        return wedge_contains(self, p, tol)


def boundary_vectors(bisector: float, half_angle: float) -> tuple[float, float, float, float]:
    lo = bisector - half_angle
    hi = bisector + half_angle
    return math.cos(lo), math.sin(lo), math.cos(hi), math.sin(hi)


def _slack(tol: Tolerance) -> float:
    return math.sin(tol.eps_ang)


def contains_raw(ax, ay, r1x, r1y, r2x, r2y, s, px, py) -> bool:
    """Membership test on unpacked values.

    Every other containment routine in the package (numpy and compiled)
    performs exactly these floating-point operations, so they agree bit
    for bit.
    """
    dx = px - ax
    dy = py - ay
    c1 = r1x * dy - r1y * dx
    c2 = dx * r2y - dy * r2x
    slack = s * math.sqrt(dx * dx + dy * dy)
    return c1 >= -slack and c2 >= -slack


def wedge_contains(w: Wedge, p, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff p lies in the closed wedge, allowing ``tol.eps_ang`` of slack.

    The apex itself is always contained.
    """
    r1x, r1y, r2x, r2y = w.boundary()
    return contains_raw(w.apex[0], w.apex[1], r1x, r1y, r2x, r2y, _slack(tol), p[0], p[1])


def wedge_contains_many(w: Wedge, pts: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Vectorised :func:`wedge_contains` over the rows of ``pts``."""
    pts = np.asarray(pts, dtype=float)
    r1x, r1y, r2x, r2y = w.boundary()
    s = _slack(tol)
    dx = pts[:, 0] - w.apex[0]
    dy = pts[:, 1] - w.apex[1]
    c1 = r1x * dy - r1y * dx
    c2 = dx * r2y - dy * r2x
    slack = s * np.sqrt(dx * dx + dy * dy)
    return (c1 >= -slack) & (c2 >= -slack)


def wedge_from_points(a, b, c) -> Wedge:
    """The wedge angle(a, b, c): apex b, spanned by rays b->a and b->c."""
    if (a[0] == b[0] and a[1] == b[1]) or (c[0] == b[0] and c[1] == b[1]):
        raise DegenerateWedge("wedge arm has zero length")
    da = math.atan2(a[1] - b[1], a[0] - b[0])
    dc = math.atan2(c[1] - b[1], c[0] - b[0])
    sweep = normalize_angle(dc - da)
    if sweep > math.pi:  # take the convex side
        da, sweep = dc, TWO_PI - sweep
    half = sweep / 2.0
    if not (0.0 < half < math.pi / 2):
        raise DegenerateWedge("points are collinear with the apex")
    return Wedge(Point(b[0], b[1]), da + half, half)


def wedge_between(apex, d1: float, d2: float) -> Wedge:
    """Wedge swept counter-clockwise from direction d1 to direction d2."""
    sweep = normalize_angle(d2 - d1)
    return Wedge(Point(apex[0], apex[1]), d1 + sweep / 2.0, sweep / 2.0)


def apex_candidates(x, y, alpha: float) -> tuple[Point, Point]:
    """The two apexes O with |Ox| = |Oy| and angle xOy equal to alpha.

    The first candidate lies to the right of the directed segment x -> y,
    the second to its left.
    """
    if x[0] == y[0] and x[1] == y[1]:
        raise DegenerateWedge("x and y coincide")
    if not (0.0 < alpha < math.pi):
        raise ValueError("alpha must lie in (0, pi)")
    mx = 0.5 * (x[0] + y[0])
    my = 0.5 * (x[1] + y[1])
    ex = y[0] - x[0]
    ey = y[1] - x[1]
    # height over half the base: cot(alpha/2)
    k = 0.5 / math.tan(0.5 * alpha)
    right = Point(mx + k * ey, my - k * ex)
    left = Point(mx - k * ey, my + k * ex)
    return right, left


def angle_at(a, b, c) -> float:
    """Unsigned angle a-b-c in [0, pi]."""
    ux, uy = a[0] - b[0], a[1] - b[1]
    vx, vy = c[0] - b[0], c[1] - b[1]
    return math.atan2(abs(ux * vy - uy * vx), ux * vx + uy * vy)
