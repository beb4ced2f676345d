import json
import subprocess
import sys

import pytest

from smallcover.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out) if out else None, err


def test_validate_builtins(capsys):
    for spec in ("kn:4", "p6:3", "p5:2"):
        code, rep, _ = run_json(capsys, "validate", "--builtin", spec)
        assert code == 0 and rep["result"]["valid"] is True
        assert rep["schema_version"] == "1" and rep["command"] == "validate"


def test_validate_corrupted_file(tmp_path, capsys):
    f = tmp_path / "bad.chi"
    f.write_text("cube 2\n2 4\n1 0 0 1\n0 1 1 1\n")
    code, rep, _ = run_json(capsys, "validate", "--file", str(f))
    assert code == 1
    assert rep["result"]["valid"] is False and rep["result"]["failing_vertices"]


def test_validate_parse_error_reports_position(tmp_path, capsys):
    f = tmp_path / "broken.chi"
    f.write_text("cube 2\n2 4\n1 0 1 0\n0 1 x 1\n")
    code, out, err = run(capsys, "validate", "--file", str(f))
    assert code == 2 and out == ""
    assert "line 4" in err and "column 5" in err


def test_usage_errors(capsys):
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "validate", "--builtin", "q7:3")[0] == 2
    assert run(capsys, "betti", "--model", "kn:3", "--method", "magic")[0] == 2
    assert run(capsys, "betti", "--model", "p5:3", "--method", "ishida")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["tables"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_betti_examples(capsys):
    code, rep, _ = run_json(capsys, "betti", "--model", "p5:5", "--method", "st")
    assert code == 0 and rep["result"]["betti"]["st"] == [1, 2, 9, 9, 2, 1]
    code, rep, _ = run_json(capsys, "betti", "--model", "kn:3", "--method", "ishida,closed")
    assert code == 0
    assert rep["result"]["betti"] == {"ishida": [1, 1, 1, 1], "closed": [1, 1, 1, 1]}
    assert rep["result"]["match"] is True
    code, rep, _ = run_json(capsys, "betti", "--model", "p6:2", "--method", "st")
    assert rep["result"]["betti"]["st"] == [1, 3, 0]


def test_betti_all_methods_on_kn(capsys):
    code, rep, _ = run_json(capsys, "betti", "--model", "kn:5", "--method", "ishida,st,closed,circuits,mod2")
    b = rep["result"]["betti"]
    assert code == 0 and rep["result"]["match"] is True
    assert b["mod2"] == [1, 5, 10, 10, 5, 1]
    assert b["st"] == [1, 1, 6, 6, 1, 1]


def test_betti_from_bott_file(tmp_path, capsys):
    f = tmp_path / "a.txt"
    f.write_text("3 3\n0 0 0\n1 0 0\n1 1 0\n")
    code, rep, _ = run_json(capsys, "betti", "--bott", str(f), "--method", "ishida,st,circuits")
    assert code == 0 and rep["result"]["match"] is True


def test_tables(capsys):
    code, rep, _ = run_json(capsys, "tables", "--family", "p5", "--max-n", "5")
    assert code == 0 and rep["result"]["mismatches"] == []
    got = {r["n"]: r["betti"] for r in rep["result"]["rows"]}
    assert got[4] == [1, 2, 5, 4, 0, 0] and got[5] == [1, 2, 9, 9, 2, 1]
    code, out, _ = run(capsys, "tables", "--family", "p6", "--max-n", "3", "--format", "csv")
    assert out.splitlines() == ["n,b0,b1,b2,b3", "2,1,3,0,0", "3,1,3,3,1"]
    assert run(capsys, "tables", "--family", "kn", "--max-n", "1")[0] == 2


def test_bott_queries(tmp_path, capsys):
    code, rep, _ = run_json(capsys, "bott", "--builtin", "kn:5", "--query", "orientable")
    assert rep["result"]["orientable"] is True
    code, rep, _ = run_json(capsys, "bott", "--builtin", "kn:4", "--query", "symplectic")
    assert rep["result"]["cohomologically_symplectic"] is False
    code, rep, _ = run_json(capsys, "bott", "--builtin", "kn:4", "--query", "ring")
    assert [g["degree"] for g in rep["result"]["generators"]] == [1, 2, 2, 2]
    code, rep, _ = run_json(capsys, "bott", "--builtin", "kn:3", "--query", "chi")
    assert rep["result"]["matrix"] == "3 6\n1 0 0 1 0 0\n0 1 0 1 1 0\n0 0 1 1 0 1\n"
    code, rep, _ = run_json(capsys, "bott", "--builtin", "kn:4", "--query", "free", "--samples", "20")
    assert code == 0 and rep["result"]["fixed"] == []
    cyc = tmp_path / "cyc.txt"
    cyc.write_text("2 2\n0 1\n1 0\n")
    code, out, err = run(capsys, "bott", str(cyc), "--query", "check")
    assert code == 1 and "cycle" in err


def test_bott_text_output(capsys):
    code, out, _ = run(capsys, "bott", "--builtin", "kn:3", "--query", "ring")
    assert code == 0 and "x_{1}^2 = 0" in out


def test_genetic_code_examples(capsys):
    code, rep, _ = run_json(capsys, "genetic-code", "--lengths", "1,2,2,2,4")
    r = rep["result"]
    assert code == 0 and r["genes"] == [[1, 5]] and r["family"] == "KN" and r["betti"] == [1, 1, 0]
    code, rep, _ = run_json(capsys, "genetic-code", "--lengths", "1,1,1,1,2")
    assert code == 1 and rep["result"]["generic"] is False
    assert sorted(rep["result"]["witness"]) in ([1, 5], [1, 2, 5], [2, 5])
    code, rep, _ = run_json(capsys, "genetic-code", "--lengths", "1,1,1,1,10")
    assert code == 0 and rep["result"]["empty_space"] is True
    code, rep, _ = run_json(capsys, "genetic-code", "--lengths", "1,1,1,1,1")
    assert rep["result"]["family"] == "OTHER" and "betti" not in rep["result"]
    assert run(capsys, "genetic-code", "--lengths", "1,zero,2")[0] == 2


def test_json_is_deterministic(capsys):
    argv = ["tables", "--family", "p6", "--max-n", "4", "--format", "json"]
    outs = []
    for par in ("1", "2"):
        main(argv + ["--parallel", par])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert list(json.loads(outs[0])) == sorted(json.loads(outs[0]))


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "smallcover", "betti", "--model", "kn:2", "--method", "ishida"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and "1 1 0" in res.stdout
