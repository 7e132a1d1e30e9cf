"""Independent check of an assignment: rebuild the wedge graph from scratch.

Nothing here looks at how the solver reasoned.  The graph is built pairwise
from the points and the emitted wedges, using the same containment
arithmetic as :func:`wedgegraph.geom.wedge_contains`, then analysed with
BFS.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import SizeMismatch
from .geom import DEFAULT_TOL, TWO_PI, Tolerance, boundary_vectors

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

EXACT_DIAMETER_LIMIT = 2000


@njit(cache=True)
def _inside(ax, ay, r1x, r1y, r2x, r2y, s, px, py):
    # same operations as geom.contains_raw; the two shortcuts below can
    # only fire when the full test gives the same answer
    dx = px - ax
    dy = py - ay
    c1 = r1x * dy - r1y * dx
    c2 = dx * r2y - dy * r2x
    if c1 >= 0.0 and c2 >= 0.0:
        return True
    bound = 2.0 * s * (abs(dx) + abs(dy))
    if c1 < -bound or c2 < -bound:
        return False
    slack = s * math.sqrt(dx * dx + dy * dy)
    return c1 >= -slack and c2 >= -slack


@njit(cache=True)
def _mutual_edges(px, py, r1x, r1y, r2x, r2y, s, row, out):
    """Fill ``out`` with edges (i, j), i < j, starting at row ``row``.

    Returns (count, next_row); a row that does not fit is dropped whole
    and resumed on the next call.
    """
    n = px.shape[0]
    m = 0
    cand = np.empty(n, dtype=np.int64)
    for i in range(row, n):
        start = m
        ax = px[i]
        ay = py[i]
        a1x = r1x[i]
        a1y = r1y[i]
        a2x = r2x[i]
        a2y = r2y[i]
        # branch-free pass with the conservative reject bound of _inside
        nc = 0
        for j in range(i + 1, n):
            dx = px[j] - ax
            dy = py[j] - ay
            c1 = a1x * dy - a1y * dx
            c2 = dx * a2y - dy * a2x
            bound = 2.0 * s * (abs(dx) + abs(dy))
            cand[nc] = j
            nc += (c1 >= -bound) & (c2 >= -bound)
        for t in range(nc):
            j = cand[t]
            if _inside(ax, ay, a1x, a1y, a2x, a2y, s, px[j], py[j]):
                if _inside(px[j], py[j], r1x[j], r1y[j], r2x[j], r2y[j], s, ax, ay):
                    if m >= out.shape[0]:
                        return start, i
                    out[m, 0] = i
                    out[m, 1] = j
                    m += 1
    return m, n


@njit(cache=True)
def _csr(n, edges):
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(edges.shape[0]):
        deg[edges[k, 0] + 1] += 1
        deg[edges[k, 1] + 1] += 1
    indptr = np.cumsum(deg)
    fill = indptr[:-1].copy()
    indices = np.empty(2 * edges.shape[0], dtype=np.int64)
    for k in range(edges.shape[0]):
        a = edges[k, 0]
        b = edges[k, 1]
        indices[fill[a]] = b
        fill[a] += 1
        indices[fill[b]] = a
        fill[b] += 1
    return indptr, indices


@njit(cache=True)
def _bfs(indptr, indices, src):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        head += 1
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue[tail] = w
                tail += 1
    return dist


@dataclass(eq=False)
class WedgeGraph:
    n: int
    edges: np.ndarray  # (m, 2), i < j, lexicographic
    indptr: np.ndarray = field(repr=False, default=None)
    indices: np.ndarray = field(repr=False, default=None)

    def __post_init__(self):
        self.edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if self.indptr is None:
            self.indptr, self.indices = _csr(self.n, self.edges)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in self.edges}

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(np.any(self.neighbors(i) == j))

    def bfs(self, src: int) -> np.ndarray:
        """Hop distances from ``src``; -1 where unreachable."""
        return _bfs(self.indptr, self.indices, src)


@dataclass(frozen=True)
class WedgeGraphReport:
    connected: bool
    diameter: float  # math.inf when disconnected
    anchor_path_ok: bool
    all_attached: bool
    edge_count: int
    diameter_exact: bool = True
    diameter_lower: Optional[int] = field(default=None, compare=False)

    def to_json(self) -> dict:
        d = self.diameter
        return {
            "connected": self.connected,
            "diameter": "inf" if d == math.inf else int(d),
            "anchor_path_ok": self.anchor_path_ok,
            "all_attached": self.all_attached,
            "edge_count": self.edge_count,
        }


def build_graph_raw(points, bisectors, half_angle, tol: Tolerance = DEFAULT_TOL) -> WedgeGraph:
    """Wedge graph from raw arrays; ``half_angle`` is a scalar or one value per wedge."""
    P = np.ascontiguousarray(points, dtype=float)
    b = np.asarray(bisectors, dtype=float)
    if P.ndim != 2 or P.shape[1] != 2 or len(P) != len(b):
        raise SizeMismatch(f"{len(P)} points but {len(b)} wedges")
    n = len(P)
    halves = np.broadcast_to(np.asarray(half_angle, dtype=float), b.shape)
    vecs = np.array([boundary_vectors(float(t), float(h)) for t, h in zip(b, halves)]).reshape(n, 4)
    r1x, r1y, r2x, r2y = (np.ascontiguousarray(vecs[:, k]) for k in range(4))
    s = math.sin(tol.eps_ang)
    xs, ys = np.ascontiguousarray(P[:, 0]), np.ascontiguousarray(P[:, 1])
    chunks = []
    row = 0
    cap = 8 * n + 1024
    while row < n:
        out = np.empty((max(cap, n), 2), dtype=np.int64)
        m, row = _mutual_edges(xs, ys, r1x, r1y, r2x, r2y, s, row, out)
        chunks.append(out[:m].copy())
        cap *= 2
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return WedgeGraph(n, edges)


def build_graph(points, assignment, tol: Tolerance = DEFAULT_TOL) -> WedgeGraph:
    """Edge (i, j) iff each point lies in the other's wedge.  O(n^2)."""
    P = np.asarray(points, dtype=float)
    if len(P) != assignment.n:
        raise SizeMismatch(f"{len(P)} points but {assignment.n} wedges")
    return build_graph_raw(P, assignment.bisectors, assignment.half_angle, tol)


def _anchor_path_ok(graph: WedgeGraph, anchors) -> bool:
    distinct = sorted(set(int(a) for a in anchors))
    if len(distinct) == 1:
        return True
    if len(distinct) == 2:
        return graph.has_edge(*distinct)
    a, b, c = distinct
    # a path on three vertices needs two of the three pairs
    return sum(graph.has_edge(p, q) for p, q in ((a, b), (b, c), (a, c))) >= 2


def check(graph: WedgeGraph, anchors, exact_limit: int = EXACT_DIAMETER_LIMIT) -> WedgeGraphReport:
    """Connectivity, diameter and the anchor-path-plus-stars structure.

    The diameter is exact for n <= ``exact_limit``; above that it is the
    certified upper bound (4 when the structure holds, else twice one
    eccentricity) with ``diameter_exact`` False.
    """
    n = graph.n
    anchor_set = sorted(set(int(a) for a in anchors))
    path_ok = _anchor_path_ok(graph, anchor_set)
    hits = np.zeros(n, dtype=bool)
    for a in anchor_set:
        hits[graph.neighbors(a)] = True
    hits[anchor_set] = True
    attached = bool(hits.all())
    if n <= 1:
        return WedgeGraphReport(True, 0, path_ok, attached, graph.edge_count)
    d0 = graph.bfs(anchor_set[0])
    if np.any(d0 < 0):
        return WedgeGraphReport(False, math.inf, path_ok, attached, graph.edge_count)
    if n <= exact_limit:
        return WedgeGraphReport(True, exact_diameter(graph, d0), path_ok, attached, graph.edge_count)
    ecc = int(d0.max())
    upper = 2 * ecc
    if path_ok and attached:
        upper = min(upper, 4)
    return WedgeGraphReport(
        True, upper, path_ok, attached, graph.edge_count, diameter_exact=False, diameter_lower=ecc
    )


def exact_diameter(graph: WedgeGraph, first: Optional[np.ndarray] = None) -> int:
    """Exact diameter of a connected graph by eccentricity bounding.

    Each BFS from v gives ecc(v) and tightens, for every w,
    max(d(v,w), ecc(v) - d(v,w)) <= ecc(w) <= ecc(v) + d(v,w).  Stops when
    the largest lower bound meets the largest upper bound; worst case one
    BFS per vertex, i.e. all-sources BFS.
    """
    n = graph.n
    lo = np.zeros(n, dtype=np.int64)
    hi = np.full(n, n, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    d = first if first is not None else graph.bfs(0)
    v = int(np.flatnonzero(d == 0)[0])
    pick_high = True
    while True:
        ecc = int(d.max())
        lo = np.maximum(lo, np.maximum(d, ecc - d))
        hi = np.minimum(hi, ecc + d)
        alive[v] = False
        lo[v] = hi[v] = ecc
        best_lo = int(lo.max())
        # vertices whose eccentricity can no longer matter
        alive &= ~((hi <= best_lo) | (lo == hi))
        if not alive.any() or int(hi[alive].max(initial=0)) <= best_lo:
            return best_lo
        cand = np.flatnonzero(alive)
        if pick_high:
            v = int(cand[np.argmax(hi[cand])])
        else:
            v = int(cand[np.argmin(lo[cand])])
        pick_high = not pick_high
        d = graph.bfs(v)


def verify(points, assignment, tol: Tolerance = DEFAULT_TOL, exact_limit: int = EXACT_DIAMETER_LIMIT) -> WedgeGraphReport:
    """build_graph + check."""
    return check(build_graph(points, assignment, tol), assignment.anchors, exact_limit)


def third_fraction_check(n: int, bisector_grid: int = 3600, half_angle: float = math.pi / 6,
                         tol: Tolerance = DEFAULT_TOL) -> int:
    """Most other points any grid-aligned wedge sees, for n points evenly spaced on a circle."""
    if n < 3:
        raise ValueError("need at least 3 points")
    t = np.arange(n) * (TWO_PI / n)
    P = np.c_[np.cos(t), np.sin(t)]
    dirs = np.arange(bisector_grid) * (TWO_PI / bisector_grid)
    lo = dirs - half_angle
    hi = dirs + half_angle
    r1x, r1y, r2x, r2y = np.cos(lo), np.sin(lo), np.cos(hi), np.sin(hi)
    s = math.sin(tol.eps_ang)
    best = 0
    for i in range(n):
        dx = np.delete(P[:, 0] - P[i, 0], i)
        dy = np.delete(P[:, 1] - P[i, 1], i)
        c1 = r1x[:, None] * dy[None, :] - r1y[:, None] * dx[None, :]
        c2 = dx[None, :] * r2y[:, None] - dy[None, :] * r2x[:, None]
        slack = s * np.sqrt(dx * dx + dy * dy)[None, :]
        inside = (c1 >= -slack) & (c2 >= -slack)
        best = max(best, int(inside.sum(axis=1).max()))
    return best
