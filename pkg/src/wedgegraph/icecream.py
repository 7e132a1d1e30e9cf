"""Equal-tangent wedges circumscribing a convex set.

For a convex set S and an angle alpha in (0, pi) there is an apex O whose
two tangent rays, at angle alpha, touch S at single points X and Y with
|OX| = |OY|.  This module finds such apexes:

* :func:`find_good_pair` - hull-edge scan over a convex polygon, used by the
  connector pipeline.
* :func:`ice_cream_point` - general solver for polygons, ellipses and disks:
  pick the wedge orientation that maximises the area of conv({O} + S).
* :func:`count_equal_distance_orientations` and
  :func:`perimeter_identity_residual` - numerical checks on the tangent
  length profiles f and g.

Orientation convention: ``theta`` is the direction of the clockwise ray q,
the counter-clockwise ray r points along ``theta + alpha``; S lies to the
left of q and to the right of r.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np
from scipy import integrate, special

from .errors import ConvergenceFailure, InternalError
from .geom import (
    DEFAULT_TOL,
    TWO_PI,
    Point,
    Ray,
    Tolerance,
    apex_candidates,
    direction,
    dist,
    normalize_angle,
    orientation,
)
from .hull import ConvexPolygon, convex_hull, polygon_stats, supporting_vertex

SCAN_ORIENTATIONS = 4096
REFINE_TOL = 1e-10
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")


@dataclass(frozen=True)
class Ellipse:
    center: Point
    a: float
    b: float
    rotation: float = 0.0

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("semi-axes must be positive")


SupportableShape = Union[ConvexPolygon, Ellipse, Disk]


@dataclass(frozen=True)
class GoodPair:
    apex_O: Point
    contact_X: Point
    contact_Y: Point
    ray_q: Ray
    ray_r: Ray
    alpha: float
    hull_index_X: Optional[int] = None
    hull_index_Y: Optional[int] = None
    theta: Optional[float] = None

    @property
    def dist_X(self) -> float:
        return dist(self.apex_O, self.contact_X)

    @property
    def dist_Y(self) -> float:
        return dist(self.apex_O, self.contact_Y)

    @property
    def bisector(self) -> float:
        return normalize_angle(self.ray_q.direction + 0.5 * self.alpha)


@dataclass(frozen=True)
class TangencyProfile:
    theta: float
    apex: Point
    near_X: Point
    far_X: Point
    near_Y: Point
    far_Y: Point
    f: float
    g: float


@dataclass(frozen=True)
class IdentityReport:
    integral_f: float
    rhs: float
    residual: float
    grid_size: int


# ---------------------------------------------------------------------------
# support functions


def _as_ellipse(shape) -> Ellipse:
    if isinstance(shape, Disk):
        return Ellipse(shape.center, shape.radius, shape.radius, 0.0)
    return shape


def shape_diameter(shape: SupportableShape) -> float:
    if isinstance(shape, ConvexPolygon):
        return polygon_stats(shape).diameter
    e = _as_ellipse(shape)
    return 2.0 * max(e.a, e.b)


def shape_perimeter(shape: SupportableShape) -> float:
    """Perimeter; for ellipses via the complete elliptic integral of the second kind."""
    if isinstance(shape, Disk):
        return TWO_PI * shape.radius
    if isinstance(shape, Ellipse):
        a, b = max(shape.a, shape.b), min(shape.a, shape.b)
        return 4.0 * a * float(special.ellipe(1.0 - (b / a) ** 2))
    return polygon_stats(shape).perimeter


def _ellipse_support(e: Ellipse, phi: np.ndarray):
    """Support value and unique contact point for outward normals ``phi``."""
    nx, ny = np.cos(phi), np.sin(phi)
    c, s = math.cos(e.rotation), math.sin(e.rotation)
    lx = c * nx + s * ny  # normal in the ellipse frame
    ly = -s * nx + c * ny
    w = np.sqrt((e.a * lx) ** 2 + (e.b * ly) ** 2)
    px = e.a * e.a * lx / w
    py = e.b * e.b * ly / w
    cx = e.center[0] + c * px - s * py
    cy = e.center[1] + s * px + c * py
    hval = w + e.center[0] * nx + e.center[1] * ny
    return hval, cx, cy


def _polygon_support_idx(poly: ConvexPolygon, phi: np.ndarray) -> np.ndarray:
    """Vectorised supporting_vertex (first CCW endpoint on ties)."""
    normals = np.asarray(poly._normals)
    h = len(normals)
    phi = np.mod(phi, TWO_PI)
    j = np.searchsorted(normals, phi, side="left")
    j[j == h] = 0
    k = (j + poly._normal_start) % h
    V = poly.array
    ux, uy = np.cos(phi), np.sin(phi)
    # one local correction step each way absorbs atan2 rounding
    for _ in range(2):
        nxt = (k + 1) % h
        better = V[nxt, 0] * ux + V[nxt, 1] * uy > V[k, 0] * ux + V[k, 1] * uy
        k = np.where(better, nxt, k)
        prv = (k - 1) % h
        better = V[prv, 0] * ux + V[prv, 1] * uy >= V[k, 0] * ux + V[k, 1] * uy
        k = np.where(better, prv, k)
    return k


def _intersect_support_lines(nq, hq, nr, hr):
    """Intersection of {p . u(nq) = hq} and {p . u(nr) = hr}."""
    ax, ay = np.cos(nq), np.sin(nq)
    bx, by = np.cos(nr), np.sin(nr)
    det = ax * by - ay * bx
    ox = (hq * by - hr * ay) / det
    oy = (ax * hr - bx * hq) / det
    return ox, oy


def _profiles(shape: SupportableShape, theta: np.ndarray, alpha: float):
    """Apex, contact indices/points, f, g and added area for many orientations."""
    theta = np.asarray(theta, dtype=float)
    nq = theta - 0.5 * math.pi
    nr = theta + alpha + 0.5 * math.pi
    if isinstance(shape, ConvexPolygon):
        V = shape.array
        iq = _polygon_support_idx(shape, nq)
        # on a flush edge of r this is the far endpoint; the area below is
        # unaffected since the extra piece is a degenerate triangle
        ir = _polygon_support_idx(shape, nr)
        hq = V[iq, 0] * np.cos(nq) + V[iq, 1] * np.sin(nq)
        hr = V[ir, 0] * np.cos(nr) + V[ir, 1] * np.sin(nr)
        ox, oy = _intersect_support_lines(nq, hq, nr, hr)
        xq, yq = V[iq, 0], V[iq, 1]
        xr, yr = V[ir, 0], V[ir, 1]
        g = np.hypot(xq - ox, yq - oy)
        f = np.hypot(xr - ox, yr - oy)
        # added area = |polygon O, X, (chain facing O), Y|; the chain runs
        # CCW from the r-contact to the q-contact
        cross = V[:, 0] * np.roll(V[:, 1], -1) - np.roll(V[:, 0], -1) * V[:, 1]
        prefix = np.concatenate([[0.0], np.cumsum(cross)])
        total = prefix[-1]
        chain = prefix[iq] - prefix[ir]
        chain = np.where(iq >= ir, chain, chain + total)
        twice = chain + (ox * yr - oy * xr) - (ox * yq - oy * xq)
        added = -0.5 * twice
        return dict(ox=ox, oy=oy, iq=iq, ir=ir, xq=xq, yq=yq, xr=xr, yr=yr, f=f, g=g, added=added)
    e = _as_ellipse(shape)
    hq, xq, yq = _ellipse_support(e, nq)
    hr, xr, yr = _ellipse_support(e, nr)
    ox, oy = _intersect_support_lines(nq, hq, nr, hr)
    g = np.hypot(xq - ox, yq - oy)
    f = np.hypot(xr - ox, yr - oy)
    # triangle O X Y minus the elliptic cap cut off by chord XY
    tri = 0.5 * np.abs((xq - ox) * (yr - oy) - (yq - oy) * (xr - ox))
    c, s = math.cos(e.rotation), math.sin(e.rotation)

    def unit_circle(px, py):
        dx, dy = px - e.center[0], py - e.center[1]
        return (c * dx + s * dy) / e.a, (-s * dx + c * dy) / e.b

    ux, uy = unit_circle(xq, yq)
    vx, vy = unit_circle(xr, yr)
    gap = np.arctan2(np.abs(ux * vy - uy * vx), ux * vx + uy * vy)
    cap = 0.5 * e.a * e.b * (gap - np.sin(gap))
    return dict(ox=ox, oy=oy, iq=None, ir=None, xq=xq, yq=yq, xr=xr, yr=yr, f=f, g=g, added=tri - cap)


def added_area(shape: SupportableShape, theta, alpha: float) -> np.ndarray:
    """Area of conv({O} + S) minus area of S, for wedge orientations ``theta``."""
    return _profiles(shape, np.atleast_1d(theta), alpha)["added"]


def tangency_profile(
    shape: SupportableShape, theta: float, alpha: float, tol: Tolerance = DEFAULT_TOL
) -> TangencyProfile:
    """Apex and contact segments of the alpha-wedge with clockwise ray at ``theta``."""
    if not (0.0 < alpha < math.pi):
        raise ValueError("alpha must lie in (0, pi)")
    theta = normalize_angle(theta)
    pr = _profiles(shape, np.array([theta]), alpha)
    O = Point(float(pr["ox"][0]), float(pr["oy"][0]))
    X = Point(float(pr["xq"][0]), float(pr["yq"][0]))
    Y = Point(float(pr["xr"][0]), float(pr["yr"][0]))
    if isinstance(shape, ConvexPolygon):
        near_X, far_X = _contact_segment(shape, int(pr["iq"][0]), theta - 0.5 * math.pi, O, tol)
        near_Y, far_Y = _contact_segment(shape, int(pr["ir"][0]), theta + alpha + 0.5 * math.pi, O, tol)
    else:
        near_X = far_X = X
        near_Y = far_Y = Y
    return TangencyProfile(
        theta=theta,
        apex=O,
        near_X=near_X,
        far_X=far_X,
        near_Y=near_Y,
        far_Y=far_Y,
        f=dist(O, near_Y),
        g=dist(O, near_X),
    )


def _contact_segment(poly: ConvexPolygon, k: int, normal: float, O, tol: Tolerance):
    """Endpoints (near, far) of the contact of the supporting line at vertex k."""
    V = poly.vertices
    h = len(V)
    ux, uy = math.cos(normal), math.sin(normal)
    scale = polygon_stats(poly).diameter
    top = V[k][0] * ux + V[k][1] * uy
    ends = [V[k]]
    for j in ((k + 1) % h, (k - 1) % h):
        if abs(V[j][0] * ux + V[j][1] * uy - top) <= tol.eps_len * scale:
            ends.append(V[j])
    ends.sort(key=lambda p: dist(O, p))
    return ends[0], ends[-1]


# ---------------------------------------------------------------------------
# good pairs on a convex polygon


def _clear_of_line(O, X, m, side: int, tol: Tolerance) -> bool:
    """m lies strictly on ``side`` of line O->X, by more than eps_ang seen from X."""
    if orientation(O, X, m) != side:
        return False
    ux, uy = X[0] - O[0], X[1] - O[1]
    vx, vy = m[0] - X[0], m[1] - X[1]
    cross = abs(ux * vy - uy * vx)
    return cross > math.sin(tol.eps_ang) * math.hypot(ux, uy) * math.hypot(vx, vy)


def good_pair_check(
    poly: ConvexPolygon, i: int, j: int, alpha: float, tol: Tolerance = DEFAULT_TOL
) -> Optional[GoodPair]:
    """Constant-time test whether hull vertices i, j form a good pair.

    Tries both equal-distance apexes.  Only the hull neighbours of the two
    contacts are inspected: a line through a vertex with both neighbours
    strictly on one side supports the polygon there and nowhere else.
    Neighbours within eps_ang of a tangent line are rejected, so contacts
    are single points with margin.
    """
    if i == j:
        return None
    V = poly.vertices
    for O in apex_candidates(V[i], V[j], alpha):
        s = orientation(O, V[i], V[j])
        if s == 0:
            continue
        xi, yi = (i, j) if s > 0 else (j, i)
        X, Y = V[xi], V[yi]
        if all(_clear_of_line(O, X, V[m], 1, tol) for m in poly.neighbors(xi)) and all(
            _clear_of_line(O, Y, V[m], -1, tol) for m in poly.neighbors(yi)
        ):
            return GoodPair(
                apex_O=O,
                contact_X=X,
                contact_Y=Y,
                ray_q=Ray(O, direction(O, X)),
                ray_r=Ray(O, direction(O, Y)),
                alpha=alpha,
                hull_index_X=xi,
                hull_index_Y=yi,
            )
    return None


def find_good_pair(
    poly: ConvexPolygon, alpha: float = math.pi / 3, tol: Tolerance = DEFAULT_TOL
) -> GoodPair:
    """Scan hull edges for a good pair in O(h log h).

    A good pair can be rotated, keeping the angle, until one tangent line
    is flush with a hull edge adjacent to its contact while the other
    still touches the other contact.  So for every edge, on either ray,
    the candidate partners are the vertices supporting the line at angle
    alpha to the edge, found by bisection.
    """
    if not (0.0 < alpha < math.pi):
        raise ValueError("alpha must lie in (0, pi)")
    h = len(poly)
    for e in range(h):
        a, b = e, (e + 1) % h
        normal = poly.edge_normal(e)
        for other in (normal + math.pi + alpha, normal - math.pi - alpha):
            y = supporting_vertex(poly, other)
            for yy in (y, (y + 1) % h, (y - 1) % h):
                for xx in (a, b):
                    pair = good_pair_check(poly, xx, yy, alpha, tol)
                    if pair is not None:
                        return pair
    raise InternalError("no good pair found on the hull")


# ---------------------------------------------------------------------------
# general solver: maximise the area of conv({O} + S)


def _golden_max(fn, lo: float, hi: float, tol: float) -> float:
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    fc, fd = fn(c), fn(d)
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - _INVPHI * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INVPHI * (hi - lo)
            fd = fn(d)
    return 0.5 * (lo + hi)


def ice_cream_point(
    shape: SupportableShape,
    alpha: float,
    tol: Tolerance = DEFAULT_TOL,
    scan: int = SCAN_ORIENTATIONS,
) -> GoodPair:
    """Apex of an alpha-wedge touching ``shape`` at single, equidistant points.

    Coarse scan of the added area over ``scan`` orientations, then
    golden-section refinement to 1e-10 rad around the best one.  Any local
    maximum of the area has single contacts with equal tangent lengths.
    For polygons the refined contacts are snapped to the exact isosceles
    apex of the contact vertices.
    """
    if not (0.0 < alpha < math.pi):
        raise ValueError("alpha must lie in (0, pi)")
    diam = shape_diameter(shape)
    thetas = np.arange(scan) * (TWO_PI / scan)
    area = added_area(shape, thetas, alpha)
    k = int(np.argmax(area))
    if float(area.max() - area.min()) <= 1e-13 * diam * diam:
        theta = 0.0  # rotationally symmetric: every orientation is a solution
    else:
        step = TWO_PI / scan
        theta = _golden_max(
            lambda t: float(added_area(shape, t, alpha)[0]),
            thetas[k] - step,
            thetas[k] + step,
            REFINE_TOL,
        )
    theta = normalize_angle(theta)
    if isinstance(shape, ConvexPolygon):
        result = _snap_polygon(shape, theta, alpha, tol)
    else:
        prof = tangency_profile(shape, theta, alpha, tol)
        O = prof.apex
        result = GoodPair(
            apex_O=O,
            contact_X=prof.near_X,
            contact_Y=prof.near_Y,
            ray_q=Ray(O, theta),
            ray_r=Ray(O, theta + alpha),
            alpha=alpha,
            theta=theta,
        )
    if abs(result.dist_X - result.dist_Y) > 1e-6 * diam:
        raise ConvergenceFailure(
            f"tangent lengths differ by {abs(result.dist_X - result.dist_Y):.3g} at theta={theta:.12f}"
        )
    return result


def _snap_polygon(poly: ConvexPolygon, theta: float, alpha: float, tol: Tolerance) -> GoodPair:
    pr = _profiles(poly, np.array([theta]), alpha)
    iq, ir = int(pr["iq"][0]), int(pr["ir"][0])
    h = len(poly)
    best = None
    # the refined contacts, then their neighbours in case theta sits on a knot
    for dx in (0, 1, -1):
        for dy in (0, 1, -1):
            pair = good_pair_check(poly, (iq + dx) % h, (ir + dy) % h, alpha, tol)
            if pair is None:
                continue
            gap = abs(normalize_angle(pair.ray_q.direction - theta + math.pi) - math.pi)
            if best is None or gap < best[0]:
                best = (gap, pair)
        if best is not None and best[0] < 1e-3:
            break
    if best is None:
        raise ConvergenceFailure(f"no single-contact equal-distance apex near theta={theta:.12f}")
    pair = best[1]
    return replace(pair, theta=pair.ray_q.direction)


# ---------------------------------------------------------------------------
# tangent-length profiles


def tangent_lengths(shape: SupportableShape, thetas, alpha: float):
    """Arrays (f, g): distances from the apex to the r- and q-contacts."""
    pr = _profiles(shape, np.asarray(thetas, dtype=float), alpha)
    return pr["f"], pr["g"]


def count_equal_distance_orientations(shape: SupportableShape, alpha: float, grid: int = 4096) -> int:
    """Number of sign changes of f - g around the circle of orientations.

    When f - g vanishes identically (a disk) the whole grid is returned.
    """
    if grid < 360:
        raise ValueError("grid must be at least 360")
    thetas = np.arange(grid) * (TWO_PI / grid)
    f, g = tangent_lengths(shape, thetas, alpha)
    d = f - g
    if np.max(np.abs(d)) <= 1e-12 * max(1.0, float(np.max(f))):
        return grid
    sgn = np.sign(d)
    nz = sgn[sgn != 0]
    return int(np.count_nonzero(nz != np.roll(nz, 1)))


def perimeter_identity_residual(shape: SupportableShape, alpha: float, grid: int = 4096) -> IdentityReport:
    """Compare the integral of f over a full turn with P(S)(1 + cos a)/sin a."""
    if isinstance(shape, ConvexPolygon):
        raise ValueError("the identity check needs a strictly convex shape (disk or ellipse)")
    if grid < 64 or grid % 2:
        raise ValueError("grid must be even and at least 64")
    thetas = np.arange(grid + 1) * (TWO_PI / grid)
    f, _ = tangent_lengths(shape, thetas, alpha)
    integral = float(integrate.simpson(f, x=thetas))
    rhs = shape_perimeter(shape) * (1.0 + math.cos(alpha)) / math.sin(alpha)
    return IdentityReport(integral_f=integral, rhs=rhs, residual=abs(integral - rhs) / rhs, grid_size=grid)


def shape_from_points(points) -> ConvexPolygon:
    return convex_hull(points)
