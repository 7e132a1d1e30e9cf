"""JSON file formats for instances, assignments, reports and shapes.

points:      {"points": [[x, y], ...]}
assignment:  {"alpha", "case", "mirrored", "apex_O", "anchors": {"x", "z", "y"},
              "wedges": [{"apex_index", "bisector", "half_angle"}, ...]}
shape:       {"shape": "polygon", "points": [[x, y], ...]}
             {"shape": "ellipse", "center": [x, y], "a": ..., "b": ..., "rotation": ...}
             {"shape": "disk", "center": [x, y], "radius": ...}

Floats are written with ``repr`` precision, so a write/read cycle is exact.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .connector import Assignment, CaseTag
from .errors import InvalidInput
from .geom import Point
from .hull import convex_hull
from .icecream import Disk, Ellipse, SupportableShape


def _load(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidInput(f"{path}: expected a JSON object")
    return data


def dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False) + "\n"


def _dump(obj, path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _xy(v, what) -> Point:
    try:
        x, y = (float(c) for c in v)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{what} must be a pair of numbers") from exc
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidInput(f"{what} must be finite")
    return Point(x, y)


def points_from_dict(data: dict) -> np.ndarray:
    pts = data.get("points")
    if not isinstance(pts, list) or not pts:
        raise InvalidInput('"points" must be a non-empty list of [x, y] pairs')
    return np.array([_xy(p, f"point {i}") for i, p in enumerate(pts)], dtype=float)


def points_to_dict(points) -> dict:
    return {"points": [[float(x), float(y)] for x, y in np.asarray(points, dtype=float).tolist()]}


def read_points(path) -> np.ndarray:
    return points_from_dict(_load(path))


def write_points(points, path) -> None:
    _dump(points_to_dict(points), path)


def assignment_to_dict(asg: Assignment) -> dict:
    x, z, y = asg.anchors
    half = asg.half_angle
    return {
        "alpha": asg.alpha,
        "case": asg.case_tag.case,
        "mirrored": asg.case_tag.mirrored,
        "apex_O": None if asg.apex_O is None else [asg.apex_O[0], asg.apex_O[1]],
        "anchors": {"x": int(x), "z": int(z), "y": int(y)},
        "wedges": [
            {"apex_index": i, "bisector": float(b), "half_angle": half}
            for i, b in enumerate(asg.bisectors.tolist())
        ],
    }


def assignment_from_dict(data: dict, points) -> Assignment:
    """Rebuild an Assignment for ``points``; every wedge must use half_angle = alpha/2."""
    P = np.asarray(points, dtype=float)
    n = len(P)
    try:
        alpha = float(data["alpha"])
        tag = CaseTag(int(data["case"]), bool(data.get("mirrored", False)))
        anchors = data["anchors"]
        trip = (int(anchors["x"]), int(anchors["z"]), int(anchors["y"]))
        wedges = data["wedges"]
        rows = sorted((int(w["apex_index"]), float(w["bisector"]), float(w["half_angle"])) for w in wedges)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed assignment: {exc}") from exc
    if tag.case not in (1, 2):
        raise InvalidInput('"case" must be 1 or 2')
    if [r[0] for r in rows] != list(range(n)):
        raise InvalidInput(f"assignment must have exactly one wedge per point (n={n})")
    if any(not 0 <= a < n for a in trip):
        raise InvalidInput("anchor index out of range")
    if any(r[2] != alpha / 2 for r in rows):
        raise InvalidInput("every wedge must have half_angle equal to alpha/2")
    apex = data.get("apex_O")
    O = None if apex is None else _xy(apex, "apex_O")
    bis = np.array([r[1] for r in rows], dtype=float)
    return Assignment(alpha, P, bis, trip, tag, O)


def read_assignment(path, points) -> Assignment:
    return assignment_from_dict(_load(path), points)


def write_assignment(asg: Assignment, path) -> None:
    _dump(assignment_to_dict(asg), path)


def shape_from_dict(data: dict) -> SupportableShape:
    kind = data.get("shape")
    try:
        if kind == "polygon":
            return convex_hull(points_from_dict(data))
        if kind == "ellipse":
            return Ellipse(
                _xy(data.get("center", (0, 0)), "center"),
                float(data["a"]),
                float(data["b"]),
                float(data.get("rotation", 0.0)),
            )
        if kind == "disk":
            return Disk(_xy(data.get("center", (0, 0)), "center"), float(data["radius"]))
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed {kind} shape: {exc}") from exc
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    raise InvalidInput('"shape" must be one of polygon, ellipse, disk')


def read_shape(path) -> SupportableShape:
    return shape_from_dict(_load(path))
