import json
import subprocess
import sys

import pytest

from affine_walls.cli_explorer import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--type", "B1:3", "--level", "1")
    assert code == 0
    assert len(out.split()) == 7


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--type", "C1:2", "--level", "1", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["meta"]["size"] == 11 == len(data["elements"])


def test_enumerate_to_file(capsys, tmp_path):
    dest = tmp_path / "b.txt"
    code, out, _ = run(capsys, "enumerate", "--type", "B1:3", "--level", "2", "--out", str(dest))
    assert code == 0 and out == ""
    assert len(dest.read_text().split()) == 27


def test_graph_depth_zero(capsys):
    code, out, _ = run(capsys, "graph", "--type", "B1:3", "--weight", "3,0,0,0", "--depth", "0")
    data = json.loads(out)
    assert code == 0 and len(data["nodes"]) == 1 and data["edges"] == []


@pytest.mark.parametrize("model", ["wall", "path"])
def test_graph_top_arrow(capsys, model):
    code, out, _ = run(capsys, "graph", "--type", "B1:3", "--weight", "3,0,0,0", "--depth", "2", "--model", model)
    data = json.loads(out)
    root = [e for e in data["edges"] if e["src"] == 0]
    assert code == 0 and [e["color"] for e in root] == [0]


def test_graph_dot(capsys):
    code, out, _ = run(capsys, "graph", "--type", "C1:2", "--weight", "1,1,0", "--depth", "1", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_graph_slice_perfect(capsys):
    code, out, _ = run(capsys, "graph", "--type", "B1:3", "--level", "1", "--model", "slice-perfect")
    assert code == 0 and len(json.loads(out)["nodes"]) == 7


def test_map_coord_slice_round_trip(capsys):
    code, out, _ = run(capsys, "map", "--type", "B1:3", "--level", "2", "--direction", "coord-slice", "0,1,0|0|0,0,1")
    assert code == 0
    line = out.strip()
    assert line.endswith("[0,1,0|0|0,0,1]")
    code, out, _ = run(capsys, "map", "--type", "B1:3", "--level", "2", "--direction", "slice-coord", line)
    assert code == 0 and out.strip() == "0,1,0|0|0,0,1"


def test_map_arrow_spelling(capsys):
    code, out, _ = run(capsys, "map", "--type", "B1:3", "--level", "2", "--direction", "coord->slice", "0,1,0|0|0,0,1")
    assert code == 0


def test_map_wall_path(capsys):
    wall = "lambda=3,0,0,0; cols=B01:2,2,3"
    code, out, _ = run(capsys, "map", "--type", "B1:3", "--direction", "wall-path", wall)
    assert code == 0 and out.strip() == "lambda=3,0,0,0; N=1; p=0,1,0|0|0,0,2"
    code, out, _ = run(capsys, "map", "--type", "B1:3", "--direction", "path-wall", out.strip())
    assert code == 0 and out.strip() == wall


def test_map_improper_wall_is_domain_error(capsys):
    code, _, err = run(capsys, "map", "--type", "B1:3", "--direction", "wall-path", "lambda=3,0,0,0; cols=B01:2,2,2;B10:8,8,8")
    assert code == 1 and err


def test_ground(capsys):
    code, out, _ = run(capsys, "ground", "--type", "B1:3", "--weight", "3,0,0,0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["proper"] is True


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "axioms", "--type", "B1:3", "--level", "1")
    assert code == 0 and "all passed" in out


def test_verify_seed_determinism(capsys):
    args = ("verify", "--suite", "signatures", "--type", "C1:2", "--level", "1", "--samples", "20", "--seed", "7",
            "--format", "json")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second and json.loads(first)["seed"] == 7


@pytest.mark.parametrize(
    "argv",
    [
        ["enumerate", "--type", "E1:6", "--level", "1"],
        ["enumerate", "--type", "B1:3"],
        ["map", "--type", "B1:3", "--level", "1", "--direction", "sideways", "x"],
        ["map", "--type", "B1:3", "--level", "1", "--direction", "coord-slice", "1,1"],
        ["verify", "--suite", "axioms", "--samples", "0"],
        ["nonsense"],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "affine_walls", "enumerate", "--type", "A1:1", "--level", "1"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["0,1", "1,0"]
