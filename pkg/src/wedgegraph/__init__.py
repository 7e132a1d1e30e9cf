"""Connected wedge graphs from pi/3 directional wedges.

Typical use::

    from wedgegraph import solve
    from wedgegraph.verify import verify
    asg = solve(points)
    report = verify(points, asg)
"""
from .connector import Assignment, solve
from .errors import (
    ConvergenceFailure,
    CoverageViolation,
    DegenerateBaseline,
    DegenerateWedge,
    GeneralPositionViolation,
    InternalError,
    InvalidInput,
    SizeMismatch,
    TooFewPoints,
    WedgeGraphError,
)
from .geom import DEFAULT_TOL, Point, Tolerance, Wedge, orientation, wedge_contains
from .hull import ConvexPolygon, convex_hull, supporting_vertex
from .icecream import Disk, Ellipse, find_good_pair, ice_cream_point
from .verify import WedgeGraphReport, build_graph, check

__all__ = [
    "Assignment", "solve",
    "ConvergenceFailure", "CoverageViolation", "DegenerateBaseline", "DegenerateWedge",
    "GeneralPositionViolation", "InternalError", "InvalidInput", "SizeMismatch",
    "TooFewPoints", "WedgeGraphError",
    "DEFAULT_TOL", "Point", "Tolerance", "Wedge", "orientation", "wedge_contains",
    "ConvexPolygon", "convex_hull", "supporting_vertex",
    "Disk", "Ellipse", "find_good_pair", "ice_cream_point",
    "WedgeGraphReport", "build_graph", "check",
]

__version__ = "0.1.0"
