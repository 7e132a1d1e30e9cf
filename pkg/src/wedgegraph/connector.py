"""Point set -> pi/3 wedge per point, with a wedge graph of diameter <= 4.

Pipeline: hull, good pair (X, Y, apex O), baseline l closing the
equilateral triangle OAB around the points, anchor Z on l, the two-case
anchor wedges, then every other point aims its wedge at an anchor whose
wedge contains it.

Frame used throughout: ``beta`` is the bisector of the good-pair wedge at
O; u = dir(beta - pi/6) runs along ray q (through X), v = dir(beta + pi/6)
along ray r (through Y).  Every anchor wedge is a translate of a pi/3 cone
spanned by two of +-u, +-v, +-(v - u), so anchor wedges are emitted from
these directions rather than from (possibly coincident) defining points.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .errors import (
    CoverageViolation,
    DegenerateBaseline,
    GeneralPositionViolation,
    InternalError,
    InvalidInput,
    TooFewPoints,
)
from .geom import (
    DEFAULT_TOL,
    TWO_PI,
    Point,
    Tolerance,
    Wedge,
    direction,
    dist,
    normalize_angle,
    wedge_contains,
    wedge_contains_many,
    wedge_from_points,
)
from .hull import ConvexPolygon, _as_array, convex_hull, supporting_vertex
from .icecream import GoodPair, find_good_pair

log = logging.getLogger(__name__)

ALPHA = math.pi / 3
HALF = ALPHA / 2  # == math.pi / 6 bit for bit


@dataclass(frozen=True)
class BaselineFrame:
    apex_O: Point
    bisector: float
    side_a: float  # |OX| = |OY|
    side_L: float  # |OA| = |OB| = |AB|
    line_point: Point
    line_direction: float
    A: Point
    B: Point
    X: Point
    Y: Point
    Z: Point
    Z_index: int
    X_prime: Point
    Y_prime: Point
    X_index: int
    Y_index: int

    @property
    def degenerate(self) -> bool:
        return self.Z_index in (self.X_index, self.Y_index)


class CaseTag(NamedTuple):
    case: int
    mirrored: bool = False

    def __str__(self):
        return f"{self.case}-mirrored" if self.mirrored else str(self.case)


@dataclass(frozen=True)
class AnchorWedges:
    tag: CaseTag
    W_X: Wedge
    W_Y: Wedge
    W_Z: Wedge
    Z_prime: Optional[Point] = None

    def by_anchor(self):
        """Anchor wedges in attachment priority order X, Y, Z."""
        return (("x", self.W_X), ("y", self.W_Y), ("z", self.W_Z))


@dataclass(eq=False)
class Assignment:
    """One wedge per input point; all share ``half_angle``."""

    alpha: float
    points: np.ndarray
    bisectors: np.ndarray
    anchors: tuple[int, int, int]  # (x, z, y)
    case_tag: CaseTag
    apex_O: Optional[Point]

    @property
    def half_angle(self) -> float:
        return self.alpha / 2

    @property
    def n(self) -> int:
        return len(self.bisectors)

    def wedge(self, i: int) -> Wedge:
        return Wedge(Point(*self.points[i]), float(self.bisectors[i]), self.half_angle)

    @property
    def wedges(self) -> list[Wedge]:
        return [self.wedge(i) for i in range(self.n)]


def _unit(theta):
    return math.cos(theta), math.sin(theta)


def baseline(
    good: GoodPair,
    points,
    hull: Optional[ConvexPolygon] = None,
    allow_degenerate: bool = True,
) -> BaselineFrame:
    """Close the good-pair wedge with the far supporting line l perpendicular to its bisector.

    l makes pi/3 with both rays, so OAB is equilateral and contains every
    point.  Z is the hull vertex on l, found by bisection.
    """
    P = _as_array(points)
    if hull is None:
        hull = convex_hull(P)
    O = good.apex_O
    X, Y = good.contact_X, good.contact_Y
    # X -> Y is perpendicular to the bisector
    beta = normalize_angle(direction(X, Y) - 0.5 * math.pi)
    a = 0.5 * (dist(O, X) + dist(O, Y))
    ux, uy = _unit(beta - HALF)
    vx, vy = _unit(beta + HALF)
    ex, ey = _unit(beta)
    k = supporting_vertex(hull, beta)
    Z = hull.vertices[k]
    z_index = hull.source_index[k]
    x_index = hull.source_index[good.hull_index_X]
    y_index = hull.source_index[good.hull_index_Y]
    if z_index in (x_index, y_index) and not allow_degenerate:
        raise DegenerateBaseline("baseline contact coincides with a good-pair contact")
    L = ((Z[0] - O[0]) * ex + (Z[1] - O[1]) * ey) / math.cos(HALF)
    A = Point(O[0] + L * ux, O[1] + L * uy)
    B = Point(O[0] + L * vx, O[1] + L * vy)
    X_prime = Point(X[0] + (L - a) * vx, X[1] + (L - a) * vy)
    Y_prime = Point(Y[0] + (L - a) * ux, Y[1] + (L - a) * uy)
    return BaselineFrame(
        apex_O=O,
        bisector=beta,
        side_a=a,
        side_L=L,
        line_point=Z,
        line_direction=normalize_angle(beta + 0.5 * math.pi),
        A=A,
        B=B,
        X=X,
        Y=Y,
        Z=Z,
        Z_index=z_index,
        X_prime=X_prime,
        Y_prime=Y_prime,
        X_index=x_index,
        Y_index=y_index,
    )


def _cone(apex, bisector) -> Wedge:
    return Wedge(Point(*apex), bisector, HALF)


def classify_case(frame: BaselineFrame, tol: Tolerance = DEFAULT_TOL) -> CaseTag:
    """Case 1 if Z lies in both angle(A X X') and angle(B Y Y'); else case 2.

    Case 2 proper when Z is outside angle(A X X'); mirrored (X/Y and A/B
    swapped) when Z is inside angle(A X X') but outside angle(B Y Y').
    Both wedges are translates of the wedge at O.
    """
    in_x = wedge_contains(_cone(frame.X, frame.bisector), frame.Z, tol)
    in_y = wedge_contains(_cone(frame.Y, frame.bisector), frame.Z, tol)
    if in_x and in_y:
        return CaseTag(1)
    if not in_x:
        return CaseTag(2)
    return CaseTag(2, mirrored=True)


def anchor_wedges(frame: BaselineFrame, tag: CaseTag, tol: Tolerance = DEFAULT_TOL) -> AnchorWedges:
    """The three anchor wedges, post-checked for the anchor 2-path edges."""
    b = frame.bisector
    X, Y, Z = frame.X, frame.Y, frame.Z
    z_prime = None
    if tag.case == 1:
        W_X = _cone(X, b)  # angle(A X X')
        W_Y = _cone(Y, b)  # angle(B Y Y')
        if frame.Z_index in (frame.X_index, frame.Y_index):
            raise InternalError("case 1 with Z equal to an anchor")
        W_Z = _cone(Z, wedge_from_points(X, Z, Y).bisector)  # angle XZY <= pi/3
        path = ((X, W_X, Z, W_Z), (Z, W_Z, Y, W_Y))
    elif not tag.mirrored:
        W_X = _cone(X, b + ALPHA)  # angle(Y X X')
        W_Y = _cone(Y, b + 4 * ALPHA)  # angle(O Y X)
        W_Z = _cone(Z, b + 4 * ALPHA)  # angle(A Z Z')
        side = dist(frame.A, Z)
        ux, uy = _unit(b - HALF)
        z_prime = Point(frame.A[0] - side * ux, frame.A[1] - side * uy)
        path = ((Y, W_Y, X, W_X), (X, W_X, Z, W_Z))
    else:
        W_Y = _cone(Y, b - ALPHA)  # angle(X Y Y')
        W_X = _cone(X, b + 2 * ALPHA)  # angle(O X Y)
        W_Z = _cone(Z, b + 2 * ALPHA)  # angle(B Z Z'')
        side = dist(frame.B, Z)
        vx, vy = _unit(b + HALF)
        z_prime = Point(frame.B[0] - side * vx, frame.B[1] - side * vy)
        path = ((X, W_X, Y, W_Y), (Y, W_Y, Z, W_Z))
    for p, Wp, q, Wq in path:
        if p == q:
            continue
        if not (wedge_contains(Wp, q, tol) and wedge_contains(Wq, p, tol)):
            raise InternalError(f"anchor edge {p} - {q} missing in case {tag}")
    return AnchorWedges(tag, W_X, W_Y, W_Z, z_prime)


def attach_point(d, anchors: AnchorWedges, tol: Tolerance = DEFAULT_TOL) -> Wedge:
    """Wedge at a non-anchor point d aimed at the first anchor (X, Y, Z) covering it."""
    for _, W in anchors.by_anchor():
        if wedge_contains(W, d, tol):
            return Wedge(Point(*d), direction(d, W.apex), HALF)
    raise CoverageViolation(f"point {tuple(d)} lies in no anchor wedge")


def _attach_all(P: np.ndarray, anchors: AnchorWedges, skip, tol: Tolerance) -> np.ndarray:
    n = len(P)
    target = np.full(n, -1, dtype=np.int64)
    free = np.ones(n, dtype=bool)
    free[list(skip)] = False
    tx = np.empty(n)
    ty = np.empty(n)
    for t, (_, W) in enumerate(anchors.by_anchor()):
        hit = free & wedge_contains_many(W, P, tol)
        target[hit] = t
        tx[hit] = W.apex[0]
        ty[hit] = W.apex[1]
        free &= ~hit
    if free.any():
        i = int(np.flatnonzero(free)[0])
        raise CoverageViolation(f"point {i} {tuple(P[i])} lies in no anchor wedge")
    bis = np.arctan2(ty - P[:, 1], tx - P[:, 0])
    bis = np.where(bis < 0, bis + TWO_PI, bis)
    bis[bis >= TWO_PI] = 0.0
    return bis


def solve(
    points,
    alpha: float = ALPHA,
    tol: Tolerance = DEFAULT_TOL,
    force: bool = False,
    strict: bool = True,
) -> Assignment:
    """Assign a wedge of angle ``alpha`` to every point so the wedge graph is connected.

    The construction is done with pi/3 wedges; a larger alpha widens every
    wedge about the same bisector, which keeps all edges.  alpha < pi/3 is
    refused unless ``force`` is set (no connectivity guarantee then).

    ``strict=False`` accepts points lying on a hull edge (they are attached
    like interior points); the result is still checked by the verifier but
    carries no general-position guarantee.
    """
    if not (0.0 < alpha < math.pi):
        raise InvalidInput("alpha must lie in (0, pi)")
    if alpha < ALPHA and not force:
        raise InvalidInput(f"alpha={alpha!r} is below pi/3; pass force=True to proceed anyway")
    P = _as_array(points)
    n = len(P)
    if n == 0:
        raise TooFewPoints("no points")
    if n == 1:
        return Assignment(alpha, P, np.zeros(1), (0, 0, 0), CaseTag(1), None)
    if n == 2:
        if np.all(P[0] == P[1]):
            raise GeneralPositionViolation("points 0 and 1 coincide", (0, 1))
        b = np.array([direction(P[0], P[1]), direction(P[1], P[0])])
        return Assignment(alpha, P, b, (0, 1, 1), CaseTag(1), None)

    hull = convex_hull(P, strict=strict)
    good = find_good_pair(hull, ALPHA, tol)
    frame = baseline(good, P, hull)
    tag = classify_case(frame, tol)
    if frame.degenerate:
        log.info("baseline contact coincides with an anchor; anchor path has length 1")
    anchors = anchor_wedges(frame, tag, tol)
    log.debug("good pair X=%d Y=%d Z=%d case %s", frame.X_index, frame.Y_index, frame.Z_index, tag)

    ix, iy, iz = frame.X_index, frame.Y_index, frame.Z_index
    bis = _attach_all(P, anchors, {ix, iy, iz}, tol)
    bis[ix] = anchors.W_X.bisector
    bis[iy] = anchors.W_Y.bisector
    bis[iz] = anchors.W_Z.bisector
    return Assignment(alpha, P, bis, (ix, iz, iy), tag, good.apex_O)
