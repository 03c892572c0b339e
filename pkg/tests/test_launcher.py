import json

import pytest

from helly_lab_launcher import build_parser, main


@pytest.fixture
def c4_file(tmp_path):
    path = tmp_path / "c4.txt"
    path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")
    return str(path)


@pytest.fixture
def out(tmp_path):
    return tmp_path / "result.out"


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_helly_hull_json(c4_file, out):
    code = main(["--format", "json", "--output", str(out), "helly", "hull", c4_file])
    assert code == 0
    data = json.loads(out.read_text())
    assert data['kind'] == 'helly_hull'
    assert len(data['edges']) == 8


def test_false_verdict_exits_one(c4_file, out):
    assert main(["--output", str(out), "helly", "check", c4_file]) == 1
    assert main(["--output", str(out), "helly", "check", "--generate", "star:3"]) == 0


def test_dot_output(out):
    code = main(["--format", "dot", "--output", str(out), "subdivide",
                 "--generate", "complete:2"])
    assert code == 0
    assert out.read_text().count("shape=ellipse") == 1


def test_tightspan_commands(tmp_path, out):
    metric = tmp_path / "triangle.csv"
    metric.write_text("0,1,1\n1,0,1\n1,1,0\n")
    assert main(["--output", str(out), "tightspan", "vertices", str(metric)]) == 0
    assert out.read_text().startswith("4 vertices")
    assert main(["--format", "json", "--output", str(out), "tightspan", "project",
                 str(metric), "--function", "1,1,1"]) == 0
    assert json.loads(out.read_text())['function'] == ["1/2", "1/2", "1/2"]


def test_metric_errors_exit_two(tmp_path, out, capsys):
    metric = tmp_path / "bad.csv"
    metric.write_text("0,1,3\n1,0,1\n3,1,0\n")
    assert main(["--output", str(out), "tightspan", "cells", str(metric)]) == 2
    err = capsys.readouterr().err
    assert err.startswith("ERROR: ")
    assert "R1C3, R1C2, R2C3" in err


def test_bounds(out, capsys):
    assert main(["--bound", "hull_vertices=3", "--output", str(out), "helly", "hull",
                 "--generate", "cycle:4"]) == 3
    assert main(["--bound", "hull_vertices=20", "--output", str(out), "helly", "hull",
                 "--generate", "cycle:4"]) == 2
    assert "--unsafe-raise" in capsys.readouterr().err
    assert main(["--bound", "hull_vertices=20", "--unsafe-raise", "--output", str(out),
                 "helly", "hull", "--generate", "cycle:4"]) == 0
    assert main(["--bound", "hull_vertices", "--output", str(out), "helly", "hull",
                 "--generate", "cycle:4"]) == 2


def test_config_file_bounds(tmp_path, out):
    config = tmp_path / "helly_lab.json"
    config.write_text(json.dumps({'bounds': {'hull_vertices': 3}}))
    assert main(["--config", str(config), "--output", str(out), "helly", "hull",
                 "--generate", "cycle:4"]) == 3


def test_translation_length(out):
    assert main(["--output", str(out), "aut", "length", "--oracle", "king:2",
                 "--map", "shift-bump", "--horizon", "12"]) == 0
    assert out.read_text() == "L = 1/2 (certified, a=2)\n"
    assert main(["--output", str(out), "aut", "length", "--oracle", "king:2",
                 "--map", "translate:1,0", "--horizon", "20"]) == 3


def test_classify(out):
    assert main(["--format", "json", "--output", str(out), "aut", "classify",
                 "--generate", "complete:2", "--perm", "(0 1)"]) == 0
    assert json.loads(out.read_text())['clique'] == [0, 1]


def test_missing_inputs(out):
    assert main(["--output", str(out), "helly", "check"]) == 2
    assert main(["--output", str(out), "aut", "classify", "--generate", "cycle:4"]) == 2
    assert main(["--output", str(out), "helly", "circumclique",
                 "--generate", "star:3"]) == 2
    assert main(["--output", str(out), "helly", "check", "--generate", "cycle:1"]) == 2


def test_poset_and_metric_commands(tmp_path, out):
    poset = tmp_path / "bowtie.txt"
    poset.write_text("a < c\na < d\nb < c\nb < d\n")
    assert main(["--format", "json", "--output", str(out), "poset", "check",
                 str(poset)]) == 0
    assert json.loads(out.read_text())['bowties'] == [["a", "b", "c", "d"]]
    metric = tmp_path / "c4.csv"
    metric.write_text("0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n")
    assert main(["--output", str(out), "metric", "delta", str(metric)]) == 0
    assert "delta: 2" in out.read_text()
    assert main(["--output", str(out), "metric", "median", str(metric),
                 "--triple", "0,1,2"]) == 0


def test_construct(out):
    assert main(["--format", "json", "--output", str(out), "construct", "cube",
                 "corner"]) == 0
    data = json.loads(out.read_text())
    assert data['kind'] == 'cell_complex'
    assert data['thickening_helly'] is True
    assert main(["--format", "edges", "--output", str(out), "construct", "king",
                 "2,2"]) == 0
    assert out.read_text().startswith("4 6\n")
