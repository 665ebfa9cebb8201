import json
import subprocess
import sys

import pytest

from smalldoubling.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct(capsys):
    code, out, _ = run(capsys, "construct", "--k", "5")
    assert code == 0
    assert json.loads(out)["result"]["square_size"] == 15


def test_classify_from_flags(capsys):
    s = json.dumps([[x] for x in range(11)])
    code, out, _ = run(capsys, "classify", "--mode", "3k3", "--group", '{"family":"lattice"}', "--set", s)
    assert code == 0 and json.loads(out)["verdict"] == "i"


def test_classify_ck_needs_c(capsys):
    code, _, err = run(capsys, "classify", "--mode", "ck", "--group", '{"family":"lattice"}', "--set", "[[0],[1]]")
    assert code == 2 and err.count("\n") == 1


def test_hypothesis_failure_is_usage_error(capsys):
    s = json.dumps([[x] for x in (0, 1, 3, 7, 15)])
    code, _, err = run(capsys, "classify", "--group", '{"family":"lattice"}', "--set", s)
    assert code == 2 and "hypothesis" in err


def test_malformed_json(capsys):
    code, out, err = run(capsys, "square", "--group", "{nope", "--set", "[]")
    assert code == 2 and out == "" and err.startswith("error:") and err.count("\n") == 1


def test_missing_arguments(capsys):
    code, _, _ = run(capsys, "square")
    assert code == 2
    code, _, _ = run(capsys, "frobnicate")
    assert code == 2


def test_input_file(tmp_path, capsys):
    f = tmp_path / "in.json"
    f.write_text(json.dumps({"group": {"family": "heisenberg"}, "set": [[1, 0, 0], [0, 1, 0]]}))
    code, out, _ = run(capsys, "square", "--input", str(f))
    assert code == 0 and len(json.loads(out)["result"]["square"]["values"]) == 4
    code, _, err = run(capsys, "square", "--input", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err


def test_dim_and_match(capsys):
    code, out, _ = run(capsys, "dim", "--group", '{"family":"lattice","rank":2}', "--set", "[[0,0],[1,0],[0,1]]")
    assert code == 0 and json.loads(out)["result"]["freiman_d"] == 2
    code, out, _ = run(capsys, "match", "--group", '{"family":"bs12"}', "--set", "[[0,1],[1,1],[2,1]]")
    assert code == 0 and json.loads(out)["verdict"] == "P5c"


def test_undecided_order_exit_3(capsys):
    g = '{"family":"free","magnus_initial_degree":1,"magnus_max_degree":1}'
    code, _, err = run(capsys, "square", "--group", g, "--set", "[[], [-1,-2,1,2]]")
    assert code == 3 and err.startswith("undecided")


def test_ball_cap_exit_3(tmp_path, capsys):
    task = {
        "ball": {"group": {"family": "free"}, "radius": 6, "cap": 50},
        "k": 3,
        "alpha": "3",
        "beta": -3,
    }
    f = tmp_path / "task.json"
    f.write_text(json.dumps({"version": "1", "task": task}))
    code, _, _ = run(capsys, "enumerate", "--corpus", str(f))
    assert code == 3


def test_enumerate_streams_json_lines(tmp_path, capsys):
    task = {"ball": {"group": {"family": "lattice"}, "radius": 3}, "k": 3, "alpha": "3", "beta": -3}
    f = tmp_path / "task.json"
    f.write_text(json.dumps({"version": "1", "task": task}))
    code, out, _ = run(capsys, "enumerate", "--corpus", str(f))
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and lines and all(r["square_size"] <= 6 for r in lines)
    code2, out2, _ = run(capsys, "enumerate", "--corpus", str(f), "--parallel", "2")
    assert out2 == out


def test_laws(capsys):
    code, out, _ = run(capsys, "laws", "--group", '{"family":"free"}', "--generators", "[[1],[2]]", "--radius", "4")
    cert = json.loads(out)
    assert code == 0 and cert["verdict"] == "violated" and cert["evidence_level"] == "exact"


def test_verify_and_check(tmp_path, capsys):
    code, out, _ = run(capsys, "--timing", "verify", "--theorem", "T1_9")
    env = json.loads(out)
    assert code == 0 and isinstance(env["runtime_ms"], int)
    f = tmp_path / "cert.json"
    f.write_text(out)
    code, out, _ = run(capsys, "check", str(f))
    assert code == 0 and json.loads(out) == {"valid": True}
    env["certificate"]["result"]["corpus_size"] += 1
    f.write_text(json.dumps(env))
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1 and json.loads(out) == {"valid": False}


def test_verify_rejects_wrong_corpus(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"version": "1", "theorem": "T1_1", "params": {}}))
    code, _, err = run(capsys, "verify", "--theorem", "T1_9", "--corpus", str(f))
    assert code == 2 and "T1_1" in err


def test_output_byte_identical(capsys):
    args = ["classify", "--group", '{"family":"lattice"}', "--set", json.dumps([[x] for x in range(11)])]
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "smalldoubling", "construct", "--k", "3"], capture_output=True, text=True
    )
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["square_size"] == 7
