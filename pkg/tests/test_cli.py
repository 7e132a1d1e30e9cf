import json
import math

import numpy as np
import pytest

from wedgegraph import formats
from wedgegraph.cli import generate, main
from wedgegraph.connector import solve
from wedgegraph.errors import InvalidInput
from wedgegraph.svg import ANCHOR_COLORS, render_svg
from wedgegraph.verify import build_graph, verify


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_generate():
    P = generate(4, "triangle-plus-edge")
    assert P.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2], [0.5, 0.0]]
    C = generate(12, "circle-evenly")
    k = np.arange(12)
    assert np.array_equal(C, np.c_[np.cos(2 * np.pi * k / 12), np.sin(2 * np.pi * k / 12)])
    assert np.array_equal(generate(1000, "uniform-disk", 42), generate(1000, "uniform-disk", 42))
    assert np.all(np.hypot(*generate(500, "uniform-disk", 1).T) <= 1)
    with pytest.raises(InvalidInput):
        generate(5, "gaussian")


def test_assignment_round_trip(tmp_path):
    P = np.random.default_rng(0).random((300, 2))
    asg = solve(P)
    formats.write_points(P, tmp_path / "p.json")
    formats.write_assignment(asg, tmp_path / "a.json")
    P2 = formats.read_points(tmp_path / "p.json")
    asg2 = formats.read_assignment(tmp_path / "a.json", P2)
    assert np.array_equal(P, P2)
    assert np.array_equal(asg.bisectors, asg2.bisectors)
    assert asg.anchors == asg2.anchors and asg.case_tag == asg2.case_tag
    assert verify(P, asg) == verify(P2, asg2)
    data = json.loads((tmp_path / "a.json").read_text())
    assert set(data) == {"alpha", "case", "mirrored", "apex_O", "anchors", "wedges"}
    assert set(data["wedges"][0]) == {"apex_index", "bisector", "half_angle"}
    assert all(w["half_angle"] == math.pi / 6 for w in data["wedges"])


def test_bad_files(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(InvalidInput):
        formats.read_points(tmp_path / "bad.json")
    (tmp_path / "nan.json").write_text('{"points": [[0, NaN], [1, 1]]}')
    with pytest.raises(InvalidInput):
        formats.read_points(tmp_path / "nan.json")
    P = np.random.default_rng(0).random((5, 2))
    d = formats.assignment_to_dict(solve(P))
    d["wedges"][2]["half_angle"] = 0.3
    with pytest.raises(InvalidInput):
        formats.assignment_from_dict(d, P)
    d = formats.assignment_to_dict(solve(P))
    del d["wedges"][0]
    with pytest.raises(InvalidInput):
        formats.assignment_from_dict(d, P)


def test_shapes():
    e = formats.shape_from_dict({"shape": "ellipse", "center": [1, 2], "a": 2, "b": 1})
    assert (e.a, e.b, e.rotation) == (2.0, 1.0, 0.0)
    d = formats.shape_from_dict({"shape": "disk", "radius": 3})
    assert d.radius == 3.0
    poly = formats.shape_from_dict({"shape": "polygon", "points": [[0, 0], [1, 0], [0, 1], [0.2, 0.2]]})
    assert len(poly) == 3
    with pytest.raises(InvalidInput):
        formats.shape_from_dict({"shape": "disk", "radius": -1})
    with pytest.raises(InvalidInput):
        formats.shape_from_dict({"shape": "blob"})


def test_cli_gen_solve_verify(tmp_path, capsys):
    pts, asg = tmp_path / "pts.json", tmp_path / "asg.json"
    assert run(capsys, "gen", "--n", 400, "--distribution", "uniform-square", "--seed", 3, "-o", pts)[0] == 0
    code, _, _ = run(capsys, "solve", "--input", pts, "--output", asg, "--svg", tmp_path / "a.svg")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--input", pts, "--assignment", asg)
    rep = json.loads(out)
    assert code == 0 and rep["connected"] and rep["diameter"] <= 4
    assert (tmp_path / "a.svg").read_text().startswith("<svg")


def test_cli_determinism(tmp_path, capsys):
    for name in ("a", "b"):
        run(capsys, "gen", "--n", 1000, "--distribution", "uniform-disk", "--seed", 42, "-o", tmp_path / f"{name}.json")
        run(capsys, "solve", "-i", tmp_path / f"{name}.json", "-o", tmp_path / f"{name}.asg")
        run(capsys, "render", "-i", tmp_path / f"{name}.json", "-a", tmp_path / f"{name}.asg", "-o", tmp_path / f"{name}.svg")
    for ext in ("json", "asg", "svg"):
        assert (tmp_path / f"a.{ext}").read_bytes() == (tmp_path / f"b.{ext}").read_bytes()


def test_cli_collinear_input(tmp_path, capsys, caplog):
    pts = tmp_path / "p.json"
    formats.write_points([(0, 0), (3, 1), (1, 1), (2, 2), (0, 5)], pts)
    code, _, err = run(capsys, "solve", "-i", pts, "-o", tmp_path / "a.json")
    assert code == 2
    assert "0, 2, 3" in err
    code, _, err = run(capsys, "solve", "-i", pts, "-o", tmp_path / "a.json", "--perturb", 1e-6,
                       "--points-output", tmp_path / "q.json")
    assert code == 0 and "perturbed" in caplog.text
    code, out, _ = run(capsys, "verify", "-i", tmp_path / "q.json", "-a", tmp_path / "a.json")
    assert code == 0


def test_cli_alpha_and_failure_exit(tmp_path, capsys):
    pts = tmp_path / "p.json"
    formats.write_points(generate(300, "uniform-square", 1), pts)
    assert run(capsys, "solve", "-i", pts, "--alpha", 0.9)[0] == 2
    assert run(capsys, "solve", "-i", pts, "--alpha", 0.9, "--force", "-o", tmp_path / "a.json")[0] == 0
    code, out, _ = run(capsys, "verify", "-i", pts, "-a", tmp_path / "a.json")
    assert code == 1 and not json.loads(out)["anchor_path_ok"]
    assert run(capsys, "solve", "-i", pts, "--eps-ang", 0)[0] == 2
    assert run(capsys, "verify", "-i", pts, "-a", tmp_path / "missing.json")[0] == 2


def test_cli_unknown_distribution(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--distribution", "gaussian"])
    assert exc.value.code == 2


def test_cli_icecream_identity_demo(tmp_path, capsys):
    shp = tmp_path / "e.json"
    shp.write_text('{"shape": "ellipse", "a": 2, "b": 1}')
    code, out, _ = run(capsys, "icecream", "--shape", shp)
    r = json.loads(out)
    assert code == 0 and abs(r["dist_X"] - r["dist_Y"]) <= 4e-6
    code, out, _ = run(capsys, "identity", "--shape", shp, "--grid", 8192)
    assert code == 0 and json.loads(out)["residual"] <= 1e-6
    sq = tmp_path / "s.json"
    sq.write_text('{"shape": "polygon", "points": [[0, 0], [1, 0], [1, 1], [0, 1]]}')
    assert run(capsys, "identity", "--shape", sq)[0] == 2
    code, out, _ = run(capsys, "demo-tightness")
    r = json.loads(out)
    assert code == 0 and r["found"] is False and r["note"] == "demonstration at grid resolution"
    code, out, _ = run(capsys, "demo-tightness", "--alpha", math.pi / 3)
    assert json.loads(out)["found"] is True


def test_svg_rendering():
    P = generate(4, "triangle-plus-edge")
    dots = render_svg(P)
    assert dots.count("<circle") == 4 and "<polyline" not in dots and "<line" not in dots
    asg = solve(P, strict=False)
    edges = build_graph(P, asg).edges
    svg = render_svg(P, asg, edges)
    assert svg.count("<polyline") == 4
    assert svg.count("<line") == len(edges) >= 3
    for color in ANCHOR_COLORS.values():
        assert color in svg
    assert svg == render_svg(P, asg, edges)
