"""Slow, obviously-correct references for the fast code paths.

Everything here is quadratic or worse and meant for tests and small
demonstrations.  The routines rely only on :mod:`wedgegraph.geom`
primitives, never on the solver's own shortcuts.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GeneralPositionViolation, InvalidInput, TooFewPoints
from .geom import (
    TWO_PI,
    Point,
    Ray,
    Wedge,
    apex_candidates,
    direction,
    orientation,
    wedge_contains,
)
from .hull import ConvexPolygon
from .icecream import GoodPair

GRID_NOTE = "demonstration at grid resolution"


def naive_hull(points) -> ConvexPolygon:
    """Gift-wrapping hull, O(n*h), counter-clockwise from the lowest-leftmost point."""
    P = np.asarray(points, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2:
        raise InvalidInput("points must be an (n, 2) array")
    n = len(P)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    pts = [Point(float(x), float(y)) for x, y in P.tolist()]
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            raise GeneralPositionViolation(f"points {seen[p]} and {i} coincide", (seen[p], i))
        seen[p] = i
    start = min(range(n), key=lambda i: (pts[i].y, pts[i].x))
    ring = [start]
    cur = start
    while True:
        q = (cur + 1) % n
        for r in range(n):
            if r != cur and orientation(pts[cur], pts[q], pts[r]) < 0:
                q = r
        # no point is right of cur -> q; any point on that line breaks strict convexity
        for r in range(n):
            if r not in (cur, q) and orientation(pts[cur], pts[q], pts[r]) == 0:
                tri = tuple(sorted((cur, q, r)))
                if len(ring) == 1 and all(
                    orientation(pts[cur], pts[q], pts[s]) == 0 for s in range(n)
                ):
                    raise GeneralPositionViolation("all points are collinear", tri)
                raise GeneralPositionViolation(
                    f"points {tri[0]}, {tri[1]}, {tri[2]} are collinear on the hull boundary", tri
                )
        if q == start:
            break
        ring.append(q)
        cur = q
        if len(ring) > n:  # pragma: no cover - defensive
            raise RuntimeError("gift wrapping did not close")
    return ConvexPolygon(tuple(pts[i] for i in ring), tuple(ring))


def exhaustive_good_pair(hull: ConvexPolygon, alpha: float = math.pi / 3) -> list[GoodPair]:
    """Every good pair of ``hull``: all vertex pairs, both apexes, full containment.

    A pair counts when every other vertex lies strictly inside both tangent
    lines (exact orientation signs against the computed apex), so both
    contacts are single vertices.  O(h^3).
    """
    V = hull.vertices
    h = len(V)
    if h > 200:
        raise ValueError("exhaustive search is limited to 200 vertices")
    found = []
    for i, j in itertools.combinations(range(h), 2):
        for O in apex_candidates(V[i], V[j], alpha):
            s = orientation(O, V[i], V[j])
            if s == 0:
                continue
            xi, yi = (i, j) if s > 0 else (j, i)
            X, Y = V[xi], V[yi]
            # interior: left of O->X, right of O->Y
            if all(orientation(O, X, V[m]) > 0 for m in range(h) if m != xi) and all(
                orientation(O, Y, V[m]) < 0 for m in range(h) if m != yi
            ):
                found.append(
                    GoodPair(
                        apex_O=O,
                        contact_X=X,
                        contact_Y=Y,
                        ray_q=Ray(O, direction(O, X)),
                        ray_r=Ray(O, direction(O, Y)),
                        alpha=alpha,
                        hull_index_X=xi,
                        hull_index_Y=yi,
                    )
                )
    return found


@dataclass(frozen=True)
class GridAssignment:
    """A connected wedge assignment found on a direction grid."""

    alpha: float
    k: int
    directions: tuple[int, ...]  # grid index per point
    bisectors: tuple[float, ...]
    note: str = GRID_NOTE


def _connected(n: int, adj: list[int]) -> bool:
    reach = 1
    frontier = 1
    while frontier:
        nxt = 0
        for i in range(n):
            if frontier >> i & 1:
                nxt |= adj[i]
        frontier = nxt & ~reach
        reach |= nxt
    return reach == (1 << n) - 1


def grid_search_assignment(points, alpha: float, k: int = 120) -> Optional[GridAssignment]:
    """Exhaustive search over k bisector directions per point for a connected wedge graph.

    A wedge only matters through the set of other points it contains, so
    each point's k directions collapse to a handful of distinct masks and
    the search runs over mask combinations.  Returns the lexicographically
    smallest direction tuple giving a connected graph, or None.  A None is
    a demonstration at grid resolution, not an impossibility result.
    """
    P = [Point(float(x), float(y)) for x, y in np.asarray(points, dtype=float).tolist()]
    n = len(P)
    if not 1 <= n <= 5:
        raise ValueError("grid search supports 1 to 5 points")
    if k < 1 or k > 120:
        raise ValueError("k must lie in [1, 120]")
    if not (0.0 < alpha < math.pi):
        raise InvalidInput("alpha must lie in (0, pi)")
    thetas = [TWO_PI * d / k for d in range(k)]
    if n == 1:
        return GridAssignment(alpha, k, (0,), (thetas[0],))
    # per point: mask -> smallest direction index producing it
    classes = []
    for i in range(n):
        reps: dict[int, int] = {}
        for d in range(k):
            w = Wedge(P[i], thetas[d], alpha / 2)
            mask = 0
            for j in range(n):
                if j != i and wedge_contains(w, P[j]):
                    mask |= 1 << j
            reps.setdefault(mask, d)
        classes.append(sorted(reps.items(), key=lambda kv: kv[1]))
    best = None
    for combo in itertools.product(*classes):
        masks = [m for m, _ in combo]
        dirs = tuple(d for _, d in combo)
        if best is not None and dirs >= best:
            continue
        # every vertex needs a mutual edge unless n == 1
        adj = [0] * n
        for i in range(n):
            for j in range(n):
                if masks[i] >> j & 1 and masks[j] >> i & 1:
                    adj[i] |= 1 << j
        if any(a == 0 for a in adj):
            continue
        if _connected(n, adj):
            best = dirs
    if best is None:
        return None
    return GridAssignment(alpha, k, best, tuple(thetas[d] for d in best))


def disk_reference(radius: float, alpha: float) -> float:
    """Tangent length from the apex of an alpha-wedge circumscribing a disk."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if not (0.0 < alpha < math.pi):
        raise ValueError("alpha must lie in (0, pi)")
    return radius / math.tan(alpha / 2)
