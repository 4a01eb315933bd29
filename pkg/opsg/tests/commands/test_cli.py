"""End-to-end tests of the command line through `run`."""
import json
import math
from pathlib import Path

import pytest

from opsg.core.exceptions import ConstructionInvariantViolated
from opsg.core.generators import random_convex, random_general
from opsg.core.geometry import convex_hull
from opsg.libs.io import parse_graph, read_points, write_points
from opsg.main import run


def error_report(stderr: str) -> dict:
    lines = [line for line in stderr.splitlines() if line.startswith('{"error"')]
    assert lines, stderr
    return json.loads(lines[-1])


@pytest.fixture()
def general_file(tmp_path: Path) -> Path:
    path = tmp_path / "general.txt"
    write_points(random_general(10, seed=7), path)
    return path


@pytest.fixture()
def convex_file(tmp_path: Path) -> Path:
    path = tmp_path / "convex.txt"
    write_points(random_convex(8, seed=7), path)
    return path


# Construct, then verify
@pytest.mark.parametrize(
    "command, extra, graph_class, fixture",
    [
        ("triangulate", [], "triangulation", "general_file"),
        ("tree", [], "tree", "general_file"),
        ("tree3", [], "tree3", "general_file"),
        ("tree4", [], "tree4", "general_file"),
        ("path", [], "path", "general_file"),
        ("matching", [], "matching", "general_file"),
        ("zigzag", [], "path-convex", "convex_file"),
        ("path-convex", [], "path-convex", "convex_file"),
        ("path-convex-from", ["3"], "path-convex", "convex_file"),
    ],
)
def test_construction_verifies(request, tmp_path: Path, command, extra, graph_class, fixture):
    points = request.getfixturevalue(fixture)
    out = tmp_path / "out.psg"
    assert run([command, str(points), *extra, "--out", str(out)]) == 0
    assert run(["verify", str(out), "--class", graph_class]) == 0


def test_hull_entry_points_verify(tmp_path: Path, general_file: Path):
    hull = convex_hull(read_points(general_file))
    out = tmp_path / "out.psg"
    assert run(["path-from", str(general_file), str(hull[1]), "--out", str(out)]) == 0
    assert run(["verify", str(out), "--class", "path"]) == 0
    assert run(["path-edge", str(general_file), str(hull[-1]), str(hull[0]), "--out", str(out)]) == 0
    assert run(["verify", str(out), "--class", "path"]) == 0


def test_stdout_is_a_graph_file(capsys, general_file: Path):
    assert run(["tree", str(general_file)]) == 0
    out = capsys.readouterr().out
    g = parse_graph(out)
    assert len(g.edges) == 9
    assert "# classes:" in out and "tree" in out
    assert "# pointed:" in out


def test_json_report_includes_trace(capsys, points_file: Path):
    assert run(["triangulate", str(points_file), "--json"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["command"] == "triangulate"
    assert report["n"] == 5
    assert report["m"] == 8
    assert "triangulation" in report["classes"]
    assert report["trace"]["construction"] == "triangulation"
    assert report["pointed"] == [0, 1, 2, 3]


def test_svg_written(tmp_path: Path, points_file: Path):
    svg = tmp_path / "t.svg"
    assert run(["tree", str(points_file), "--out", str(tmp_path / "t.psg"), "--svg", str(svg), "--annotate"]) == 0
    assert svg.read_bytes().startswith(b"<?xml")


# Verify failures
def test_verify_rejects_a_weaker_graph(tmp_path: Path, capsys, points_file: Path):
    out = tmp_path / "tri.psg"
    assert run(["triangulate", str(points_file), "--out", str(out)]) == 0
    capsys.readouterr()
    assert run(["verify", str(out), "--class", "tree"]) == 1
    assert error_report(capsys.readouterr().err)["error"] == "ValidationFailed"


def test_verify_min_openness_and_degree(tmp_path: Path, points_file: Path):
    out = tmp_path / "tree.psg"
    assert run(["tree", str(points_file), "--out", str(out)]) == 0
    assert run(["verify", str(out), "--min-openness", "6.3"]) == 1
    assert run(["verify", str(out), "--max-degree", "0"]) == 1
    assert run(["verify", str(out), "--json"]) == 0


def test_verify_help_mentions_the_tolerance(capsys):
    assert run(["verify", "--help"]) == 0
    assert "EPS" in capsys.readouterr().out


def test_verify_rejects_crossing_edges(tmp_path: Path):
    path = tmp_path / "x.psg"
    path.write_text("psg v1 n=4 m=2\n0 0\n1 0\n1 1\n0 1\n0 2\n1 3\n", encoding="utf-8")
    assert run(["verify", str(path)]) == 1


# Oracle
def test_oracle_prints_the_witness(capsys, points_file: Path):
    assert run(["oracle", str(points_file), "--class", "triangulation"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("psg v1 n=5")
    assert "over 3 graphs" in out


def test_oracle_json(capsys, points_file: Path):
    assert run(["oracle", str(points_file), "--endpoint", "4", "--json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["max_openness"] > 0
    assert result["witness"] is not None


def test_oracle_cap_exit_code(capsys, points_file: Path):
    assert run(["oracle", str(points_file), "--max-n", "3"]) == 3
    report = error_report(capsys.readouterr().err)
    assert report == {"error": "OracleTooLarge", "message": report["message"], "exit_code": 3}


def test_oracle_sweep_over_a_family(capsys):
    argv = ["oracle", "--sweep", "random", "--size", "5", "--count", "3", "--seed", "1"]
    assert run([*argv, "--json"]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["graph_class"] == "path"
    assert result["max_openness"] >= 5 * math.pi / 4 - 1e-9
    assert result["witness"] is not None

    assert run(argv) == 0
    out = capsys.readouterr().out
    assert out.startswith("psg v1 n=5")
    assert "# worst of 3 random sets is" in out


def test_oracle_needs_a_file_or_a_sweep(capsys):
    assert run(["oracle"]) == 2
    assert error_report(capsys.readouterr().err)["error"] == "DegenerateInput"


# Gen
def test_gen_writes_points(capsys, tmp_path: Path):
    assert run(["gen", "barycenter", "7", "--eps", "0.05"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 7
    out = tmp_path / "r.txt"
    assert run(["gen", "random", "12", "--seed", "3", "--out", str(out)]) == 0
    assert read_points(out).n == 12


def test_gen_family_needs_eps(capsys):
    assert run(["gen", "three-wedge", "6"]) == 2
    assert error_report(capsys.readouterr().err)["error"] == "BadShape"


# Input and usage errors
def test_bad_index_is_bad_input(points_file: Path):
    assert run(["path-from", str(points_file), "9"]) == 2


def test_interior_start_is_bad_input(points_file: Path):
    assert run(["path-from", str(points_file), "4"]) == 2


def test_odd_matching_is_bad_input(points_file: Path):
    assert run(["matching", str(points_file)]) == 2


def test_collinear_input(tmp_path: Path, capsys):
    path = tmp_path / "line.txt"
    path.write_text("0 0\n1 1\n2 2\n", encoding="utf-8")
    assert run(["triangulate", str(path)]) == 2
    assert error_report(capsys.readouterr().err)["error"] == "DegenerateInput"


def test_usage_errors_exit_two(capsys):
    assert run(["no-such-command"]) == 2
    assert run(["tree"]) == 2


def test_construction_failure_exit_code(mocker, points_file: Path, capsys):
    mocker.patch(
        "opsg.commands.construct.open_spanning_tree",
        side_effect=ConstructionInvariantViolated("edge crossing"),
    )
    assert run(["tree", str(points_file)]) == 1
    assert error_report(capsys.readouterr().err)["message"] == "edge crossing"
