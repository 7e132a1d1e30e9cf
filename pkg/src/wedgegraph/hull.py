"""Convex hull with exact predicates and logarithmic extreme-vertex queries."""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

from .errors import GeneralPositionViolation, InvalidInput, TooFewPoints
from .geom import TWO_PI, Point, normalize_angle, orientation

# Directions used by the interior-discarding prefilter.
_FILTER_DIRECTIONS = 16
_FILTER_MIN_N = 64


@dataclass(frozen=True)
class PolygonStats:
    area: float
    perimeter: float
    diameter: float


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon, vertices in counter-clockwise order.

    ``source_index[k]`` is the position of vertex k in the point list the
    hull was built from.
    """

    vertices: tuple[Point, ...]
    source_index: tuple[int, ...]
    _normals: list = field(init=False, repr=False)
    _normal_start: int = field(init=False, repr=False)

    def __post_init__(self):
        h = len(self.vertices)
        if h < 3:
            raise TooFewPoints("a convex polygon needs at least 3 vertices")
        normals = []
        for k in range(h):
            a = self.vertices[k]
            b = self.vertices[(k + 1) % h]
            # outward normal of a CCW edge (dx, dy) is (dy, -dx)
            normals.append(normalize_angle(math.atan2(-(b[0] - a[0]), b[1] - a[1])))
        start = min(range(h), key=normals.__getitem__)
        # rotated to start at the smallest normal, so the list is increasing
        rotated = [normals[(start + k) % h] for k in range(h)]
        object.__setattr__(self, "_normals", rotated)
        object.__setattr__(self, "_normal_start", start)

    def __len__(self):
        return len(self.vertices)

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def neighbors(self, k: int) -> tuple[int, int]:
        h = len(self.vertices)
        return (k - 1) % h, (k + 1) % h

    def edge_normal(self, k: int) -> float:
        h = len(self.vertices)
        return self._normals[(k - self._normal_start) % h]

    def is_valid(self) -> bool:
        h = len(self.vertices)
        return all(
            orientation(self.vertices[k], self.vertices[(k + 1) % h], self.vertices[(k + 2) % h]) > 0
            for k in range(h)
        )


def _dot(v, ux, uy):
    return v[0] * ux + v[1] * uy


def supporting_vertex(poly: ConvexPolygon, outward_normal: float) -> int:
    """Index of the vertex extreme in direction ``outward_normal``.

    O(log h) bisection over the sorted edge normals, followed by a local
    dot-product check.  When the normal is perpendicular to an edge both
    endpoints tie and the edge's first endpoint (CCW order) is returned.
    """
    h = len(poly.vertices)
    phi = normalize_angle(outward_normal)
    j = bisect.bisect_left(poly._normals, phi)
    if j == h:
        j = 0
    k = (j + poly._normal_start) % h
    ux, uy = math.cos(phi), math.sin(phi)
    V = poly.vertices
    # guard against atan2 rounding near edge normals; unimodality makes a
    # local maximum global
    for _ in range(h):
        nxt = (k + 1) % h
        if _dot(V[nxt], ux, uy) > _dot(V[k], ux, uy):
            k = nxt
        else:
            break
    for _ in range(h):
        prv = (k - 1) % h
        if _dot(V[prv], ux, uy) >= _dot(V[k], ux, uy):
            k = prv
        else:
            break
    return k


def polygon_stats(poly: ConvexPolygon) -> PolygonStats:
    P = poly.array
    x, y = P[:, 0], P[:, 1]
    xs, ys = np.roll(x, -1), np.roll(y, -1)
    area = 0.5 * float(np.sum(x * ys - xs * y))
    perimeter = float(np.sum(np.hypot(xs - x, ys - y)))
    h = len(P)
    if h <= 64:
        d = P[:, None, :] - P[None, :, :]
        diameter = float(np.sqrt((d ** 2).sum(axis=2).max()))
    else:
        diameter = _caliper_diameter(P)
    return PolygonStats(area=area, perimeter=perimeter, diameter=diameter)


def _caliper_diameter(P: np.ndarray) -> float:
    h = len(P)

    def twice_area(i, j, k):
        return abs((P[j, 0] - P[i, 0]) * (P[k, 1] - P[i, 1]) - (P[j, 1] - P[i, 1]) * (P[k, 0] - P[i, 0]))

    best = 0.0
    j = 1
    for i in range(h):
        ni = (i + 1) % h
        while twice_area(i, ni, (j + 1) % h) > twice_area(i, ni, j):
            j = (j + 1) % h
        for a in (i, ni):
            best = max(best, math.hypot(*(P[a] - P[j])))
    return best


def _as_array(points) -> np.ndarray:
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2:
        raise InvalidInput("points must be an (n, 2) array")
    if not np.all(np.isfinite(P)):
        raise InvalidInput("points must have finite coordinates")
    return P


@njit(cache=True)
def _first_duplicate(xb, yb):
    # open addressing on the coordinate bit patterns, expected O(n)
    n = xb.shape[0]
    size = 1
    while size < 2 * n:
        size *= 2
    mask = size - 1
    table = np.full(size, -1, dtype=np.int64)
    for i in range(n):
        h = (xb[i] * 0x9E3779B97F4A7C15 + yb[i] * 0xC2B2AE3D27D4EB4F) & mask
        h ^= h >> 17
        h &= mask
        while table[h] >= 0:
            j = table[h]
            if xb[j] == xb[i] and yb[j] == yb[i]:
                return j, i
            h = (h + 1) & mask
        table[h] = i
    return -1, -1


def check_duplicates(P: np.ndarray) -> None:
    # + 0.0 maps -0.0 to 0.0 so equal values have equal bits
    Q = np.ascontiguousarray(P + 0.0).view(np.uint64)
    i, j = _first_duplicate(np.ascontiguousarray(Q[:, 0]), np.ascontiguousarray(Q[:, 1]))
    if i >= 0:
        raise GeneralPositionViolation(f"points {i} and {j} coincide", (int(i), int(j)))


def _prefilter(P: np.ndarray) -> np.ndarray:
    """Indices of points not provably interior to the hull.

    Points strictly inside the polygon spanned by extreme points in a few
    fixed directions cannot be hull vertices.  The strictness test carries
    the orient2d error bound, so rounding never discards a hull vertex.
    """
    n = len(P)
    if n < _FILTER_MIN_N:
        return np.arange(n)
    ang = np.arange(_FILTER_DIRECTIONS) * (TWO_PI / _FILTER_DIRECTIONS)
    ext = []
    for a in ang:
        k = int(np.argmax(P[:, 0] * math.cos(a) + P[:, 1] * math.sin(a)))
        if not ext or ext[-1] != k:
            ext.append(k)
    if len(ext) > 1 and ext[0] == ext[-1]:
        ext.pop()
    if len(ext) < 3:
        return np.arange(n)
    poly = P[ext]
    inside = np.ones(n, dtype=bool)
    for k in range(len(poly)):
        a, b = poly[k], poly[(k + 1) % len(poly)]
        idx = np.flatnonzero(inside)
        Q = P[idx]
        detleft = (a[0] - Q[:, 0]) * (b[1] - Q[:, 1])
        detright = (a[1] - Q[:, 1]) * (b[0] - Q[:, 0])
        det = detleft - detright
        bound = 4.0 * 2.0 ** -52 * (np.abs(detleft) + np.abs(detright))
        inside[idx[~(det > bound)]] = False
    return np.flatnonzero(~inside)


def _monotone_chain(P: np.ndarray, idx: np.ndarray, keep_collinear: bool = True) -> list[int]:
    """Andrew's monotone chain, optionally keeping collinear boundary points."""
    order = idx[np.lexsort((P[idx, 1], P[idx, 0]))]
    pts = [tuple(p) for p in P[order].tolist()]
    ids = order.tolist()

    limit = 0 if keep_collinear else 1

    def half(seq):
        chain = []
        for k in seq:
            while len(chain) >= 2 and orientation(pts[chain[-2]], pts[chain[-1]], pts[k]) < limit:
                chain.pop()
            chain.append(k)
        return chain

    m = len(ids)
    lower = half(range(m))
    upper = half(range(m - 1, -1, -1))
    ring = []
    seen = set()
    # degenerate (collinear) input can revisit points on the way back
    for k in lower[:-1] + upper[:-1]:
        if k not in seen:
            seen.add(k)
            ring.append(ids[k])
    return ring


def convex_hull(points, strict: bool = True) -> ConvexPolygon:
    """Counter-clockwise hull of ``points``, starting at the lowest-leftmost vertex.

    Raises GeneralPositionViolation on duplicate points or on three
    collinear points along the hull boundary (checked exactly).  With
    ``strict=False`` points lying inside a hull edge are simply not
    vertices; duplicates and all-collinear input are still rejected.
    """
    P = _as_array(points)
    n = len(P)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    check_duplicates(P)
    ring = _monotone_chain(P, _prefilter(P), keep_collinear=strict)
    h = len(ring)
    if h < 3:
        raise GeneralPositionViolation("all points are collinear", tuple(ring[:3]))
    for k in range(h):
        a, b, c = ring[k - 1], ring[k], ring[(k + 1) % h]
        if orientation(P[a], P[b], P[c]) == 0:
            raise GeneralPositionViolation(
                f"points {a}, {b}, {c} are collinear on the hull boundary", (a, b, c)
            )
    return _canonical(P, ring)


def _canonical(P: np.ndarray, ring: list[int]) -> ConvexPolygon:
    """Rotate the CCW ring so it starts at the lowest (then leftmost) vertex."""
    start = min(range(len(ring)), key=lambda k: (P[ring[k], 1], P[ring[k], 0]))
    ring = ring[start:] + ring[:start]
    verts = tuple(Point(float(P[i, 0]), float(P[i, 1])) for i in ring)
    return ConvexPolygon(verts, tuple(ring))


def polygon_from_vertices(vertices) -> ConvexPolygon:
    """Wrap vertices already known to be in strictly convex position."""
    return convex_hull(vertices)


def check_general_position(points, limit: int | None = None) -> None:
    """Exact check that no two points coincide and no three are collinear.

    For every point the other points are sorted by direction modulo pi;
    only clusters of nearly equal directions are examined exactly.
    O(n^2 log n) overall.
    """
    P = _as_array(points)
    n = len(P)
    if limit is not None and n > limit:
        raise ValueError(f"full general-position check capped at {limit} points")
    check_duplicates(P)
    for i in range(n - 2):
        rest = np.arange(i + 1, n)
        d = P[rest] - P[i]
        ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), math.pi)
        order = np.argsort(ang, kind="stable")
        sa = ang[order]
        # directions just above 0 are also just below pi
        wrap = sa <= 1e-9
        if wrap.any():
            sa = np.concatenate([sa, sa[wrap] + math.pi])
            order = np.concatenate([order, order[wrap]])
        close = np.flatnonzero(np.diff(sa) <= 1e-9)
        groups = []
        if len(close):
            start = prev = close[0]
            for c in close[1:]:
                if c != prev + 1:
                    groups.append(order[start : prev + 2])
                    start = c
                prev = c
            groups.append(order[start : prev + 2])
        for g in groups:
            members = rest[g]
            for a in range(len(members)):
                for b in range(a + 1, len(members)):
                    j, k = int(members[a]), int(members[b])
                    if j != k and orientation(P[i], P[j], P[k]) == 0:
                        tri = tuple(sorted((i, j, k)))
                        raise GeneralPositionViolation(
                            f"points {tri[0]}, {tri[1]}, {tri[2]} are collinear", tri
                        )
