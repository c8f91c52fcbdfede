import json
import subprocess
import sys

import pytest

from minnorm.cli import main
from minnorm.fileio import dump_instance, parse_instance
from minnorm.hard import figure1_example, generate_pd


@pytest.fixture
def fig1(tmp_path):
    path = tmp_path / "figure1.json"
    inst = figure1_example()
    inst = type(inst)(inst.points, ("p1", "p2", "p3", "p4"))
    path.write_text(dump_instance(inst))
    return str(path)


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def test_solve_minnorm(fig1, tmp_path, capsys):
    trace = tmp_path / "t.jsonl"
    assert main(["solve", fig1, "--trace", str(trace)]) == 0
    out = capsys.readouterr().out
    assert "corrals       4" in out
    assert "(0.1980, 0.0990, 0.4455)" in out
    assert "(20/101, 10/101, 45/101)" in out
    events = [json.loads(line) for line in trace.read_text().splitlines()]
    reached = [e["corral"] for e in events if e["kind"] == "corral_reached"]
    assert reached == [["p1"], ["p1", "p2"], ["p1", "p2", "p3"], ["p1", "p2", "p4"]]


def test_solve_linopt_jsonl(fig1, capsys):
    assert main(["solve", fig1, "--rule", "linopt", "--format", "jsonl", "--precision", "6"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["corral_count"] == 5
    assert rep["minor_cycle_total"] == 2
    assert rep["x_star_decimal"] == ["0.198020", "0.099010", "0.445545"]
    assert rep["final_corral"] == ["p1", "p2", "p4"]


def test_solve_singleton(tmp_path, capsys):
    path = write(tmp_path, "one.json", {"dim": 2, "points": [["2", "3"]]})
    assert main(["solve", path]) == 0
    assert "x*            (2, 3)" in capsys.readouterr().out


def test_solve_parse_error(tmp_path, capsys):
    path = write(tmp_path, "bad.json", '{"dim": 2,\n "points": [["1", "x"]]}')
    assert main(["solve", path]) == 1
    err = capsys.readouterr().err
    assert "bad.json:2:19" in err


def test_solve_dimension_mismatch(tmp_path, capsys):
    path = write(tmp_path, "bad.json", {"dim": 3, "points": [["1", "2"]]})
    assert main(["solve", path]) == 1
    assert "dim is 3" in capsys.readouterr().err


def test_missing_file_and_usage(capsys):
    assert main(["solve", "/nonexistent.json"]) == 1
    with pytest.raises(SystemExit) as info:
        main(["solve", "x.json", "--rule", "fastest"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 1


def test_gen_hard(tmp_path, capsys):
    out = tmp_path / "p3.json"
    assert main(["gen-hard", "3", str(out)]) == 0
    assert "points=5 M_d=17/4 m_d=4/17" in capsys.readouterr().out
    assert parse_instance(out.read_text()).points == generate_pd(3).instance.points
    assert main(["gen-hard", "1", "-"]) == 0
    cap = capsys.readouterr()
    assert json.loads(cap.out)["points"] == [["1"]] and "points=1" in cap.err
    assert main(["gen-hard", "2", str(out)]) == 1


def test_verify_exponential(capsys):
    assert main(["verify-exponential", "7"]) == 0
    rows = [line.split() for line in capsys.readouterr().out.splitlines()[1:]]
    assert rows == [["1", "1", "1", "yes"], ["3", "6", "6", "yes"],
                    ["5", "16", "16", "yes"], ["7", "36", "36", "yes"]]
    assert main(["verify-exponential", "1", "--format", "jsonl"]) == 0
    assert json.loads(capsys.readouterr().out)["match"] == "yes"
    assert main(["verify-exponential", "7", "--rule", "linopt"]) == 0
    assert all(line.endswith("n/a") for line in capsys.readouterr().out.splitlines()[1:])
    assert main(["verify-exponential", "4"]) == 1


def test_verify_exponential_mismatch_exit(monkeypatch, capsys):
    import minnorm.cli as cli
    from minnorm.hard import ExponentialReport
    from minnorm.wolfe import Rule

    monkeypatch.setattr(cli, "verify_exponential",
                        lambda d, rule: ExponentialReport(d, rule, 2, 1, False, [(0, None, None)]))
    assert main(["verify-exponential", "1"]) == 2
    assert "NO" in capsys.readouterr().out


def test_solve_lp(tmp_path, capsys):
    box = write(tmp_path, "box.json", {"A": [[1, 0], [0, 1], [-1, 0], [0, -1]],
                                       "b": [1, 1, 0, 0], "c": [1, 1]})
    assert main(["solve-lp", box, "--format", "jsonl"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["status"] == "OPTIMAL" and rep["objective"] == "2" and rep["x"] == ["1", "1"]
    infeasible = write(tmp_path, "inf.json", {"A": [[1], [-1]], "b": [-1, -2], "c": [1]})
    assert main(["solve-lp", infeasible]) == 0
    assert capsys.readouterr().out.startswith("INFEASIBLE")
    unbounded = write(tmp_path, "unb.json", {"A": [[-1]], "b": [0], "c": [1]})
    assert main(["solve-lp", unbounded]) == 0
    assert capsys.readouterr().out.startswith("INFINITE")


def test_reduce(tmp_path, capsys):
    lp = write(tmp_path, "lp.json", {"A": [[1]], "b": [2], "c": [1]})
    assert main(["reduce", lp]) == 0
    recs = [json.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert [r["stage"] for r in recs] == ["FP", "BFP", "VPM", "ZVPM", "DVS"]
    out = tmp_path / "stages.jsonl"
    assert main(["reduce", lp, "--system", "kkt", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 5
    assert "DVS" in capsys.readouterr().out


def test_module_entry_point(fig1):
    res = subprocess.run([sys.executable, "-m", "minnorm", "solve", fig1],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "corrals       4" in res.stdout
