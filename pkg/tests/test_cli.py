import json
import math
import subprocess
import sys

import numpy as np
import pytest

from conftest import isomorphic
from stayhome import ParseError, cone, cycle
from stayhome.cli import RunConfig, main, parse_graph_spec
from stayhome.io import parse_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_graph_spec():
    wheel = parse_graph_spec("cone:cycle:5")
    assert wheel == cone(cycle(5)) and wheel.n == 6
    assert isomorphic(parse_graph_spec("join:empty:2,empty:2"), cycle(4))
    assert parse_graph_spec("product:complete:2,complete:2").n == 4
    assert parse_graph_spec("mkn:2,3").adj.sum() == 12
    assert parse_graph_spec(" PETERSEN ").n == 10


@pytest.mark.parametrize("spec,pos", [("cycle", 5), ("cycle:x", 6), ("bogus:3", 0),
                                      ("join:oa:2,3", 11), ("complete:3 junk", 10)])
def test_parse_graph_spec_errors_carry_position(spec, pos):
    with pytest.raises(ParseError) as exc:
        parse_graph_spec(spec)
    assert exc.value.position == pos


def test_run_config_validation():
    with pytest.raises(ParseError):
        RunConfig("walk", t_points=1)
    with pytest.raises(ParseError):
        RunConfig("walk", t_start=2.0, t_end=1.0)
    with pytest.raises(ParseError):
        RunConfig("walk", tol=0)


def test_graph_command_recognises_rook(capsys):
    code, out, _ = run(capsys, "graph", "--graph", "oa:2,3")
    data = json.loads(out)
    assert code == 0 and data["n"] == 9 and data["srg"] == [9, 4, 1, 2]


def test_graph_export_round_trip(tmp_path, capsys):
    path = tmp_path / "wheel.txt"
    assert main(["graph", "--graph", "cone:cycle:5", "--edges", "--out", str(path)]) == 0
    g = parse_edge_list(path.read_text())
    assert g == cone(cycle(5))
    code, out, _ = run(capsys, "graph", "--file", str(path), "--edges")
    assert code == 0 and out == path.read_text()


def test_graph_from_oa_and_design_files(tmp_path, capsys):
    from stayhome import affine_plane_ag23, oa_cyclic
    from stayhome.io import format_design, format_oa
    (tmp_path / "oa.txt").write_text(format_oa(oa_cyclic(3, 3)))
    (tmp_path / "d.txt").write_text(format_design(affine_plane_ag23()))
    _, out, _ = run(capsys, "graph", "--oa-file", str(tmp_path / "oa.txt"))
    assert json.loads(out)["srg"] == [9, 6, 3, 6]
    _, out, _ = run(capsys, "graph", "--design-file", str(tmp_path / "d.txt"))
    assert json.loads(out)["srg"] == [12, 9, 6, 9]


def test_spectrum_command(capsys):
    code, out, _ = run(capsys, "spectrum", "--graph", "cycle:5")
    data = json.loads(out)
    assert code == 0 and data["multiplicities"] == [1, 2, 2]
    assert data["ratio_condition"]["0,1,2"]["status"] == "fails"
    _, out, _ = run(capsys, "spectrum", "--graph", "petersen")
    assert json.loads(out)["ratio_condition"]["0,1,2"]["status"] == "holds"


def test_walk_command(capsys):
    code, out, _ = run(capsys, "walk", "--graph", "complete:2", "--t", str(math.pi / 2))
    data = json.loads(out)
    assert np.allclose(data["M"], [[0, 1], [1, 0]], atol=1e-12)
    assert data["U"][0][1] == {"modulus": 1, "argument": pytest.approx(math.pi / 2, abs=1e-11)}
    code, out, _ = run(capsys, "walk", "--graph", "complete:2", "--t", "0", "--format", "csv")
    assert out.splitlines()[0] == "a,b,re,im,prob" and len(out.splitlines()) == 5
    assert run(capsys, "walk", "--graph", "complete:2")[0] == 1


def test_avg_command(capsys):
    _, out, _ = run(capsys, "avg", "--graph", "complete:3")
    data = json.loads(out)
    assert np.allclose(data["average_mixing"], [[5 / 9, 2 / 9, 2 / 9], [2 / 9, 5 / 9, 2 / 9], [2 / 9, 2 / 9, 5 / 9]])


def test_stayhome_command_complete_100(capsys):
    code, out, _ = run(capsys, "stayhome", "--graph", "complete:100", "--t-start", "0",
                       "--t-end", str(2 * math.pi))
    data = json.loads(out)
    assert code == 0 and data["min_diagonal"] >= 0.96
    _, out, _ = run(capsys, "stayhome", "--graph", "cycle:4", "--format", "csv", "--t-points", "5")
    assert len(out.splitlines()) == 6


def test_stayhome_invariant_violation_exit_code(capsys):
    # margins sit at about -1e-15 in floating point; a 1e-30 tolerance cannot be met
    code, out, err = run(capsys, "stayhome", "--graph", "petersen", "--tol", "1e-30")
    assert code == 2 and out == ""
    assert "invariant violation" in err and "lower_margin" in err


def test_uniform_command(capsys):
    _, out, _ = run(capsys, "uniform", "--graph", "complete:2", "--t-start", "0", "--t-end", "1")
    assert json.loads(out)["hits"] == [pytest.approx(math.pi / 4, abs=1e-11)]


def test_cone_command(capsys):
    _, out, _ = run(capsys, "cone", "--ell", "0", "--n", "3")
    data = json.loads(out)
    assert data["uniform_mixing_time"] == pytest.approx(math.pi / (3 * math.sqrt(3)), abs=1e-11)
    assert data["root_of_unity"] is True
    assert run(capsys, "cone", "--ell", "5", "--n", "3")[0] == 1


def test_pst_command(capsys):
    _, out, _ = run(capsys, "pst", "--graph", "join:empty:2,empty:2", "--from", "0", "--to", "1",
                    "--t-start", "0", "--t-end", str(math.pi))
    data = json.loads(out)
    assert data["found"] and data["time"] == pytest.approx(math.pi / 2, abs=1e-11)
    assert data["phase"]["modulus"] == 1 and abs(data["phase"]["argument"]) == pytest.approx(math.pi)


def test_family_command(capsys):
    _, out, _ = run(capsys, "family", "oa", "--k", "2", "--range", "3:5", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "family,k,n,avgDiag,diagLowerBound,dMeasured,verdict" and len(lines) == 4
    _, out, _ = run(capsys, "family", "conference", "--range", "5:13")
    assert [r["n"] for r in json.loads(out)] == [5, 9, 13]
    assert run(capsys, "family", "oa", "--range", "3-5")[0] == 1


def test_usage_errors_exit_one(capsys):
    assert run(capsys, "spectrum")[0] == 1
    code, _, err = run(capsys, "spectrum", "--graph", "cycle:2")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "spectrum", "--graph", "cycle:")
    assert code == 1 and "at position 6" in err
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    assert run(capsys, "spectrum", "--file", "/nonexistent/edges.txt")[0] == 1


def test_output_is_byte_identical_across_processes():
    argv = [sys.executable, "-m", "stayhome", "stayhome", "--graph", "cone:petersen", "--t-points", "64"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
