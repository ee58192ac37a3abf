import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cosetnum.cli import EXIT_INVALID, EXIT_PARSE, EXIT_USAGE, main, run
from cosetnum.formats import parse_assignments_json
from cosetnum.group_core import GroupSpec, make_cyclic
from cosetnum.registry import pattern_for, system_entry, system_names
from cosetnum.ruleset import ParamAssignment, check_assignment, derive_constraints


def ok(argv):
    code, text = run(argv)
    assert code == 0, text
    return text


def test_tables_1_markdown():
    text = ok(["tables", "--which", "1", "--format", "md"])
    rows = [l for l in text.splitlines() if l.startswith("| ") and l.strip("| ")
            and "α" not in l]
    assert len(rows) == 6
    assert rows[0] == "| 1 | 1 | 1 | 1 | 1 |"
    assert rows[-1] == "| -1 | 1 | -1 | -1 | 1 |"


def test_calc_quaternion():
    assert ok(["calc", "--system", "quaternion", "(0,1,0,0)*(0,0,1,0)"]) == "(0, 0, 0, 1)\n"
    assert ok(["calc", "--system", "complex", "inv((3,4))"]) == "(3/25, -4/25)\n"
    assert ok(["calc", "--system", "complex", "--decimal", "inv((3,4))"]) == "(0.12, -0.16)\n"
    assert ok(["calc", "--system", "complex", "det((3,4))"]) == "25\n"


def test_calc_errors():
    assert run(["calc", "--system", "octonion", "(1)"])[0] == EXIT_USAGE
    assert run(["calc", "--system", "quaternion", "(1,x,0,0)"])[0] == EXIT_PARSE
    assert run(["calc", "--system", "quaternion", "(1,0)"])[0] == EXIT_PARSE
    code, text = run(["calc", "--system", "split-complex", "inv((1,1))"])
    assert code == 1 and "inverse" in text


def test_validate_broken_group(tmp_path, capsys):
    rows = [list(r) for r in make_cyclic(4).table]
    rows[1][1], rows[1][3] = rows[1][3], rows[1][1]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps({"name": "broken", "order": 4, "identity": 0, "table": rows}))
    code = main(["validate", "--group-file", str(path)])
    err = capsys.readouterr().err
    assert code == EXIT_INVALID
    assert "associativity" in err and "witness" in err
    assert err.strip().splitlines()[-1].startswith("cosetnum: error: group fails associativity")


def test_validate_good_and_malformed(tmp_path):
    assert "associativity: pass" in ok(["validate", "--group", "klein4"])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["validate", "--group-file", str(bad)])[0] == EXIT_INVALID
    assert run(["enumerate", "--group", "file", "--group-file", str(bad)])[0] == EXIT_INVALID
    assert run(["validate", "--group", "c9"])[0] == EXIT_USAGE


def test_validate_assignment(tmp_path):
    good = tmp_path / "q.json"
    good.write_text(json.dumps(system_entry("quaternion")[1].to_json()))
    assert "assignment: pass" in ok(["validate", "--group", "klein4", "--assignment", str(good)])
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({n: "-1" if n in ("alpha", "beta", "gamma") else "1"
                               for n in pattern_for("klein4").names}))
    assert run(["validate", "--group", "klein4", "--assignment", str(bad)])[0] == EXIT_INVALID
    junk = tmp_path / "junk.json"
    junk.write_text(json.dumps({"alpha": "one"}))
    assert run(["validate", "--group", "c2", "--assignment", str(junk)])[0] == EXIT_PARSE


def test_enumerate_json_round_trip():
    text = ok(["enumerate", "--group", "klein4", "--domain", "-1,1", "--filter", "nonzero",
               "--format", "json"])
    data = json.loads(text)
    assert len(data) == 16
    p = pattern_for("klein4")
    cs = derive_constraints(p)
    for values in parse_assignments_json(data):
        assert check_assignment(p, cs, values)[0]
    labels = {item["label"] for item in data}
    assert {"H", "S", "B", "Q", "C"} <= labels


def test_enumerate_group_file(tmp_path):
    path = tmp_path / "c5.json"
    path.write_text(json.dumps(make_cyclic(5).to_json()))
    text = ok(["enumerate", "--group-file", str(path), "--domain", "1", "--format", "csv"])
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == 2 and rows[1][:16] == ["1"] * 16


def test_enumerate_classes_and_domain_parse():
    text = ok(["enumerate", "--group", "c3", "--domain", "-1,0,1", "--classes", "--format", "csv"])
    assert len(text.strip().splitlines()) == 1 + 6
    assert run(["enumerate", "--group", "c3", "--domain", "1,x"])[0] == EXIT_PARSE
    assert run(["enumerate", "--group", "c3", "--domain", "1/2,1", "--format", "json"])[0] == 0


def test_constraints_json_schema():
    data = json.loads(ok(["constraints", "--group", "c3", "--format", "json"]))
    names = set(pattern_for("c3").names)
    for item in data:
        assert set(item) == {"triple", "lhs", "rhs"}
        assert len(item["triple"]) == 3
        assert set(item["lhs"]) | set(item["rhs"]) <= names
    assert "beta*gamma = alpha" in ok(["constraints", "--group", "c3", "--format", "md"])


@pytest.mark.parametrize("which", ["1", "2", "3", "4", "5"])
@pytest.mark.parametrize("fmt", ["md", "csv", "json"])
def test_tables_all_formats(which, fmt):
    text = ok(["tables", "--which", which, "--format", fmt])
    if fmt == "json":
        data = json.loads(text)
        assert data["table"] == which and all(len(r) == len(data["columns"]) for r in data["rows"])
    if fmt == "csv":
        rows = list(csv.reader(io.StringIO(text)))
        assert all(len(r) == len(rows[0]) for r in rows)


def test_tables_deterministic():
    assert ok(["tables", "--which", "4", "--format", "csv"]) == ok(["tables", "--which", "4",
                                                                    "--format", "csv"])


def test_matrices():
    data = json.loads(ok(["matrices", "--system", "quaternion", "--format", "json"]))
    assert data["i"] == [["0", "1", "0", "0"], ["-1", "0", "0", "0"],
                         ["0", "0", "0", "-1"], ["0", "0", "1", "0"]]
    sym = json.loads(ok(["matrices", "--group", "c3", "--symbolic", "--format", "json"]))
    assert sym["matrix"][1] == ["alpha*c", "a", "beta*b"]
    assert "| 0 | -1 | 0 | 0 |" in ok(["matrices", "--system", "planar"])


def test_double_emits():
    data = json.loads(ok(["double", "--alpha", "-1", "--emit", "assignment", "--format", "json"]))
    assert data[0]["values"]["gamma"] == "1" and data[0]["label"] == "B"
    info = json.loads(ok(["double", "--alpha", "-1", "--emit", "system"]))
    assert info["correspondence"] and info["commutative"]
    mats = json.loads(ok(["double", "--alpha", "2", "--emit", "matrices", "--format", "json"]))
    assert mats["k"][3][0] == "4"
    assert run(["double", "--alpha", "two"])[0] == EXIT_PARSE


def test_output_file(tmp_path):
    out = tmp_path / "t.md"
    code, text = run(["-o", str(out), "tables", "--which", "1"])
    assert code == 0 and text == "" and "| 1 | 1 | 1 | 1 | 1 |" in out.read_text()


def test_usage_errors():
    assert run([])[0] == EXIT_USAGE
    assert run(["tables", "--which", "7"])[0] == EXIT_USAGE
    assert run(["calc", "(1,0)"])[0] == EXIT_USAGE


def test_every_builtin_name_is_valid():
    for name in system_names():
        group, a = system_entry(name)
        p = pattern_for(group)
        assert check_assignment(p, derive_constraints(p), a)[0], name
        assert ok(["calc", "--system", name, "(" + ",".join(["1"] * p.order) + ")^2"])


def test_entry_point_subprocess():
    out = subprocess.run([sys.executable, "-m", "cosetnum.cli", "calc", "--system", "quaternion",
                          "(0,1,0,0)*(0,0,1,0)"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "(0, 0, 0, 1)\n"
