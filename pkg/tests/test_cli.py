import json
import subprocess
import sys
from pathlib import Path

import pytest

from petord.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    assert code == 0
    return json.loads(out)


def write(tmp_path, obj, name="in.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_analyze_worked_example(capsys):
    rep = report(capsys, "analyze", str(DATA / "worked_example.json"))
    assert rep["result"]["weight_matrix"] == [[1, 2, 0, 0, 0], [0, 1, 3, 0, 0]]
    assert rep["result"]["ceiling"] == "w^(10)"
    assert len(rep["result"]["classes"]) == 7


def test_analyze_linear_plus_square(capsys):
    rep = report(capsys, "analyze", str(DATA / "n_nsq.json"))
    assert rep["result"]["ordinal"] == "w + 1"
    assert [w["weight"] for w in rep["result"]["weights"]] == [[1, 2], [1, 1]]


def test_human_output(capsys):
    code, out, _ = run(capsys, "analyze", str(DATA / "n_nsq.json"))
    assert code == 0 and "o(A) = w + 1" in out


def test_reports_are_reproducible(capsys):
    a = report(capsys, "bound", str(DATA / "worked_example.json"))
    b = report(capsys, "bound", str(DATA / "worked_example.json"))
    a.pop("timestamp"), b.pop("timestamp")
    assert a == b
    assert len(a["input_sha256"]) == 64


@pytest.mark.parametrize("payload,fragment", [
    ({"t": 1, "seqs": []}, "seqs"),
    ({"t": 1}, "'seqs' is a required property"),
    ({"t": 1, "seqs": [["n^"]]}, "position"),
    ({"t": 2, "seqs": [["n"]]}, "length"),
    ({"t": 1, "seqs": [["1/2n"]]}, "integer-valued"),
])
def test_invalid_systems_exit_2(capsys, tmp_path, payload, fragment):
    code, _, err = run(capsys, "analyze", write(tmp_path, payload))
    assert code == 2
    assert fragment in err


def test_json_syntax_error_has_position(capsys, tmp_path):
    code, _, err = run(capsys, "analyze", write(tmp_path, '{"t": 1,\n  "seqs": [["n"],]}'))
    assert code == 2
    assert "line 2" in err and "column" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "nope.json"))
    assert code == 2


def test_descent(capsys):
    rep = report(capsys, "descent", str(DATA / "n_nsq.json"), "--shifts", "1", "--depth", "5")
    node, ords = rep["result"]["tree"], []
    while True:
        ords.append(node["ordinal"])
        if not node["children"]:
            break
        node = node["children"][0]
    assert ords == ["w + 1", "w", "2", "1", "0"]
    assert node["degenerate"]


def test_descent_bad_shifts(capsys):
    code, _, _ = run(capsys, "descent", str(DATA / "n_nsq.json"), "--shifts", "a,b")
    assert code == 2


def test_descent_violation_exits_3(capsys, monkeypatch):
    from petord import pet

    def broken(*a, **k):
        raise pet.DescentViolation("forced")

    monkeypatch.setattr(pet, "descent_tree", broken)
    code, _, err = run(capsys, "descent", str(DATA / "n_nsq.json"))
    assert code == 3 and "forced" in err


def test_bound(capsys):
    rep = report(capsys, "bound", str(DATA / "n_nsq.json"))
    assert rep["result"]["exponent"] == "w + 2"
    assert rep["result"]["below_omega4"] is True
    assert rep["result"]["derivation"]["rule"] == "Tech"
    rep = report(capsys, "bound", str(DATA / "worked_example.json"), "--K", "2")
    assert rep["params"] == {"K": 2}


def test_bound_rejects_non_distinct(capsys, tmp_path):
    code, _, _ = run(capsys, "bound", write(tmp_path, {"t": 1, "seqs": [["n"], ["n+1"]]}))
    assert code == 2


def test_ordinal_commands(capsys):
    code, out, _ = run(capsys, "ordinal", "eval", "1+w")
    assert code == 0 and out.strip() == "w"
    code, out, _ = run(capsys, "ordinal", "cmp", "w^(w)", "w^(3)*9")
    assert out.strip() == "w^(w) > w^(3)*9"
    assert report(capsys, "ordinal", "cmp", "w", "w")["result"]["cmp"] == 0
    code, _, err = run(capsys, "ordinal", "eval", "w^(")
    assert code == 2 and "position" in err


def test_search(capsys, tmp_path):
    assert report(capsys, "search", str(DATA / "ap3.json"))["result"] == {"found": True, "N": 3}
    rep = report(capsys, "search", str(DATA / "sarkozy_half.json"), "--nmax", "3")
    assert rep["result"] == {"found": False, "N_max": 3}
    code, _, _ = run(capsys, "search", str(DATA / "ap3.json"), "--nmax", "30")
    assert code == 2
    bad = {"d": 1, "polys": [["n+1"]], "vectors": [[1]], "delta": "1/2"}
    assert run(capsys, "search", write(tmp_path, bad))[0] == 2


def test_finsys_demo_and_file(capsys, tmp_path):
    rep = report(capsys, "finsys", "--seed", "3")
    assert rep["result"]["metastable"]["n"] >= 1
    assert rep["result"]["recurrence"][0]["m"] == 1
    payload = {
        "generators": [[1, 2, 3, 4, 0]],
        "recurrence": {"Ts": [[1]], "system": {"t": 1, "seqs": [["0"], ["n"], ["2n"]]}, "B": [0, 1, 2], "m": 5},
    }
    rep = report(capsys, "finsys", write(tmp_path, payload))
    assert rep["result"]["recurrence"][-1] == {"m": 5, "average": "1/5"}
    payload["generators"] = [[0, 0, 1]]
    assert run(capsys, "finsys", write(tmp_path, payload))[0] == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "petord", "ordinal", "eval", "w*2+w"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.strip() == "w*3"
