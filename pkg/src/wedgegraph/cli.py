"""Command-line entry point: ``wedgegraph <command> ...``.

Exit codes: 0 success, 1 verification failed, 2 invalid or degenerate
input, 3 internal error (a construction post-check failed).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import formats
from .connector import ALPHA, solve
from .errors import GeneralPositionViolation, InternalError, InvalidInput
from .geom import Tolerance
from .hull import check_general_position
from .icecream import ice_cream_point, perimeter_identity_residual
from .oracle import GRID_NOTE, grid_search_assignment
from .svg import render_svg
from .verify import build_graph, check

log = logging.getLogger("wedgegraph")

DISTRIBUTIONS = ("uniform-disk", "uniform-square", "circle-evenly", "triangle-plus-edge")
# exact general-position check is O(n^2 log n); above this only the hull is checked
GP_CHECK_LIMIT = 5000
_PERTURB_TRIES = 5


def generate(n: int, distribution: str, seed: int = 0) -> np.ndarray:
    """Deterministic instance for (n, distribution, seed)."""
    if distribution == "triangle-plus-edge":
        return np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2], [0.5, 0.0]])
    if n < 1:
        raise InvalidInput("n must be at least 1")
    if distribution == "circle-evenly":
        t = 2 * np.pi * np.arange(n) / n
        return np.c_[np.cos(t), np.sin(t)]
    rng = np.random.default_rng(seed)
    if distribution == "uniform-square":
        return rng.random((n, 2))
    if distribution == "uniform-disk":
        r = np.sqrt(rng.random(n))
        t = rng.random(n) * (2 * math.pi)
        return np.c_[r * np.cos(t), r * np.sin(t)]
    raise InvalidInput(f"unknown distribution {distribution!r}")


def _tol(args) -> Tolerance:
    try:
        return Tolerance(args.eps_len, args.eps_ang)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def _validate(P: np.ndarray) -> None:
    if len(P) <= GP_CHECK_LIMIT:
        check_general_position(P)


def _perturbed(P: np.ndarray, magnitude: float, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    scale = magnitude * max(float(np.hypot(*np.ptp(P, axis=0))), 1.0)
    for attempt in range(1, _PERTURB_TRIES + 1):
        Q = P + rng.uniform(-scale, scale, size=P.shape)
        try:
            _validate(Q)
        except GeneralPositionViolation:
            continue
        log.warning("input perturbed by up to %.3g per coordinate (attempt %d)", scale, attempt)
        return Q
    raise InvalidInput(f"perturbation of {magnitude} did not restore general position")


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_gen(args) -> int:
    P = generate(args.n, args.distribution, args.seed)
    if args.distribution == "triangle-plus-edge" and args.n != 4:
        log.warning("triangle-plus-edge always has 4 points; ignoring n=%d", args.n)
    _emit(formats.dumps(formats.points_to_dict(P)), args.output)
    return 0


def cmd_solve(args) -> int:
    P = formats.read_points(args.input)
    tol = _tol(args)
    if len(P) >= 3:
        try:
            _validate(P)
        except GeneralPositionViolation as exc:
            if args.perturb is None:
                raise
            log.warning("%s", exc)
            P = _perturbed(P, args.perturb, args.seed)
    try:
        asg = solve(P, alpha=args.alpha, tol=tol, force=args.force)
    except GeneralPositionViolation:
        if args.perturb is None:
            raise
        P = _perturbed(P, args.perturb, args.seed)
        asg = solve(P, alpha=args.alpha, tol=tol, force=args.force)
    if args.points_output:
        formats.write_points(P, args.points_output)
    _emit(formats.dumps(formats.assignment_to_dict(asg)), args.output)
    if args.svg:
        _emit(render_svg(P, asg, build_graph(P, asg, tol).edges), args.svg)
    return 0


def cmd_verify(args) -> int:
    P = formats.read_points(args.input)
    asg = formats.read_assignment(args.assignment, P)
    report = check(build_graph(P, asg, _tol(args)), asg.anchors)
    sys.stdout.write(json.dumps(report.to_json()) + "\n")
    ok = report.connected and report.anchor_path_ok and report.all_attached and report.diameter <= 4
    return 0 if ok else 1


def cmd_icecream(args) -> int:
    shape = formats.read_shape(args.shape)
    g = ice_cream_point(shape, args.alpha, _tol(args))
    out = {
        "alpha": g.alpha,
        "theta": g.theta,
        "apex_O": list(g.apex_O),
        "contact_X": list(g.contact_X),
        "contact_Y": list(g.contact_Y),
        "dist_X": g.dist_X,
        "dist_Y": g.dist_Y,
    }
    sys.stdout.write(json.dumps(out) + "\n")
    return 0


def cmd_identity(args) -> int:
    shape = formats.read_shape(args.shape)
    try:
        r = perimeter_identity_residual(shape, args.alpha, args.grid)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    out = {"integral_f": r.integral_f, "rhs": r.rhs, "residual": r.residual, "grid_size": r.grid_size}
    sys.stdout.write(json.dumps(out) + "\n")
    return 0


def cmd_render(args) -> int:
    P = formats.read_points(args.input)
    asg = edges = None
    if args.assignment:
        asg = formats.read_assignment(args.assignment, P)
        edges = build_graph(P, asg, _tol(args)).edges
    _emit(render_svg(P, asg, edges), args.output)
    return 0


def cmd_demo_tightness(args) -> int:
    P = generate(4, "triangle-plus-edge")
    try:
        found = grid_search_assignment(P, args.alpha, args.k)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    out = {
        "alpha": args.alpha,
        "k": args.k,
        "found": found is not None,
        "directions": None if found is None else list(found.directions),
        "note": GRID_NOTE,
    }
    sys.stdout.write(json.dumps(out) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wedgegraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(alpha=ALPHA):
        # a fresh parent per command: argparse shares parent actions, so
        # per-command defaults would otherwise leak between commands
        c = argparse.ArgumentParser(add_help=False)
        c.add_argument("--alpha", type=float, default=alpha, help="wedge angle in radians")
        c.add_argument("--eps-len", type=float, default=1e-9)
        c.add_argument("--eps-ang", type=float, default=1e-9)
        c.add_argument("--seed", type=int, default=0)
        return [c]

    p = sub.add_parser("gen", parents=common(), help="generate an instance")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--distribution", choices=DISTRIBUTIONS, default="uniform-disk")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", parents=common(), help="assign a wedge to every point")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--output", "-o")
    p.add_argument("--perturb", type=float, help="jitter magnitude (relative to the bounding-box diagonal)")
    p.add_argument("--points-output", help="write the (possibly perturbed) points here")
    p.add_argument("--force", action="store_true", help="allow alpha below pi/3")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=common(), help="rebuild the wedge graph and check it")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--assignment", "-a", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("icecream", parents=common(), help="equal-tangent wedge around a shape")
    p.add_argument("--shape", required=True)
    p.set_defaults(func=cmd_icecream)

    p = sub.add_parser("identity", parents=common(), help="integral of f against the perimeter")
    p.add_argument("--shape", required=True)
    p.add_argument("--grid", type=int, default=4096)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("render", parents=common(), help="draw an instance as SVG")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--assignment", "-a")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("demo-tightness", parents=common(ALPHA - 0.1), help="grid search on the 4-point instance")
    p.add_argument("--k", type=int, default=120)
    p.set_defaults(func=cmd_demo_tightness)
    return parser


def _setup_logging() -> None:
    level = os.environ.get("WEDGE_LOG", "warning").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
