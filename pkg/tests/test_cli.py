"""Command-line behaviour: output formats, exit codes, files and determinism."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from binderlab.cli import main, write_atomic


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv: str):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_lagrangians(capsys):
    sets = run_json(capsys, "lagrangians", "--j", "2")
    assert len(sets) == 15 and ["0000", "0010", "1000", "1010"] in sets
    assert len(run_json(capsys, "lagrangians", "--j", "2", "--affine")) == 60
    spread = run_json(capsys, "lagrangians", "--j", "2", "--spread")
    assert spread["verified"] and len(spread["lines"]) == 5
    assert len(run_json(capsys, "lagrangians", "--j", "1", "--p", "3")) == 4


def test_lagrangians_human_and_csv(capsys):
    code, out, _ = run(capsys, "lagrangians", "--j", "1")
    assert code == 0 and out.strip().endswith("3 Lagrangian subspaces")
    code, out, _ = run(capsys, "lagrangians", "--j", "1", "--csv")
    assert out.splitlines()[0] == "index,vectors" and len(out.splitlines()) == 4


def test_gram_export(capsys, tmp_path):
    out = tmp_path / "gram.json"
    code, text, _ = run(capsys, "gram", "--family", "psi-d-hat", "--j", "2", "--out", str(out))
    assert code == 0 and "diag=3" in text
    data = json.loads(out.read_text())
    assert data["n"] == 10 and data["diag"] == 3 and data["p"] == 2
    code, text, _ = run(capsys, "binder", "--gram", str(out), "--verify", "--json")
    assert code == 0 and len(json.loads(text)) == 15


def test_binder_outputs(capsys, tmp_path):
    blocks = run_json(capsys, "binder", "--family", "phi", "--j", "2")
    assert len(blocks) == 16 and all(len(b) == 6 for b in blocks)
    code, out, _ = run(capsys, "binder", "--family", "psi", "--j", "2", "--verify")
    assert code == 0
    assert "60 blocks of size 4" in out and "(16, 4, 3, 15, 60)" in out and "all blocks pass" in out
    code, out, _ = run(capsys, "binder", "--family", "phi", "--j", "3")
    assert code == 0 and "empty binder" in out
    target = tmp_path / "blocks.json"
    code, out, _ = run(capsys, "binder", "--family", "psi-d", "--j", "2", "--out", str(target))
    assert code == 0 and len(json.loads(target.read_text())) == 15


def test_binder_force_search_and_odd_p(capsys):
    a = run_json(capsys, "binder", "--family", "psi-d-hat", "--j", "2", "--force-search")
    b = run_json(capsys, "binder", "--family", "psi-d-hat", "--j", "2")
    assert a == b
    assert len(run_json(capsys, "binder", "--family", "psi", "--j", "1", "--p", "3")) == 12
    assert run_json(capsys, "binder", "--family", "phi", "--j", "1", "--p", "3", "--force-search") == []


def test_binder_custom_d(capsys):
    d = "0000,0001,0010,0100,0101,0110,1000,1001,1010,1111"
    blocks = run_json(capsys, "binder", "--family", "psi-d", "--j", "2", "--d", d)
    assert len(blocks) == 15 and all(set(b) <= set(d.split(",")) for b in blocks)
    code, _, err = run(capsys, "binder", "--family", "psi-d", "--j", "2", "--d", "0000,0001")
    assert code == 2 and "affine quadric" in err


def test_binder_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "binder", "--family", "psi-d-hat", "--j", "3", "--json")
    assert code == 0 and "anchors" in err and "anchors" not in out
    assert len(json.loads(out)) == 336


def test_design_commands(capsys, tmp_path):
    blocks = tmp_path / "psi.json"
    run(capsys, "binder", "--family", "psi", "--j", "2", "--out", str(blocks))
    other = tmp_path / "phi.json"
    run(capsys, "binder", "--family", "phi", "--j", "2", "--out", str(other))
    matrix = tmp_path / "x.csv"
    res = run_json(capsys, "design", "verify", str(blocks), "--matrix", str(matrix))
    assert res == {"ok": True, "params": [16, 4, 3, 15, 60]}
    rows = matrix.read_text().splitlines()
    assert len(rows) == 60 and all(r.count("1") == 4 for r in rows)
    res = run_json(capsys, "design", "ovals", str(blocks), "--against", str(other))
    assert res["oval"] and set(res["histogram"]) == {"0", "2"}
    res = run_json(capsys, "design", "ovals", str(blocks), "--points", "0001,0010,0011,0100,1000,1100")
    assert res["bound"] == "6"
    res = run_json(capsys, "design", "decompose", "--j", "2")
    assert res["ok"] and res["identity"] and res["params"]["last"] == [10, 2, 1, 9, 45]
    res = run_json(capsys, "design", "resolve", str(blocks))
    assert res["found"] and len(res["classes"]) == 15


def test_design_not_a_bibd(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps([["a", "b"], ["b", "c"]]))
    code, out, _ = run(capsys, "design", "verify", str(f))
    assert code == 1 and "not a BIBD" in out
    f.write_text(json.dumps([["a", "b"], ["b", "c", "d"]]))
    code, _, err = run(capsys, "design", "verify", str(f))
    assert code == 2 and "block sizes" in err


def test_design_resolve_certificate(capsys, tmp_path):
    f = tmp_path / "pairs5.json"
    f.write_text(json.dumps({"vertices": list("abcde"), "blocks": [[x, y] for i, x in enumerate("abcde") for y in "abcde"[i + 1:]]}))
    code, out, _ = run(capsys, "design", "resolve", str(f))
    assert code == 0 and out.startswith("no resolution exists")


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--j", "2", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "family,D,V,K,lam,R,B"
    assert "PsiHat_D,5,10,4,2,6,15" in lines


def test_report_json(capsys):
    data = run_json(capsys, "report", "--j", "3")
    assert data["mismatches"] == []
    rows = {r["name"]: r for r in data["rows"]}
    assert rows["Phi"]["K"] == 10 and rows["Phi"]["B"] == 0


def test_golden(capsys):
    code, out, _ = run(capsys, "golden", "tremain-j3-lambda")
    assert code == 0 and "8/8 sets equal" in out
    data = run_json(capsys, "golden", "lagrangians-j2")
    assert data[0]["ok"] and data[0]["missing"] == [] and data[0]["extra"] == []


def test_probability(capsys):
    assert run_json(capsys, "probability", "--family", "psi", "--j", "2")["probability"] == "3/91"
    assert run_json(capsys, "probability", "--family", "phi", "--j", "3")["probability"] == "0"


def test_spark(capsys):
    res = run_json(capsys, "spark", "--family", "psi", "--j", "2")
    assert res["spark"] == 4 and len(res["subsets"]) == 60
    res = run_json(capsys, "spark", "--family", "phi", "--j", "1", "--size-cap", "3")
    assert res["spark"] is None
    code, _, err = run(capsys, "spark", "--family", "phi", "--j", "3")
    assert code == 2 and "N <= 20" in err


def test_invalid_inputs(capsys):
    code, _, err = run(capsys, "gram", "--family", "psi-d", "--j", "2", "--p", "3")
    assert code == 2 and "p = 2" in err
    with pytest.raises(SystemExit):
        main(["binder"])
    with pytest.raises(SystemExit):
        main(["design", "verify"])
    with pytest.raises(SystemExit):
        main(["report", "--j", "5"])


def test_json_output_is_deterministic(capsys):
    first = run(capsys, "binder", "--family", "psi-d-hat", "--j", "3", "--json")[1]
    second = run(capsys, "binder", "--family", "psi-d-hat", "--j", "3", "--json", "--threads", "2")[1]
    assert first == second


def test_write_atomic_leaves_no_temporary_files(tmp_path):
    target = tmp_path / "a.txt"
    write_atomic(target, "one")
    write_atomic(target, "two")
    assert target.read_text() == "two"
    assert [p.name for p in tmp_path.iterdir()] == ["a.txt"]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "binderlab.cli", "golden", "spread-j2"], capture_output=True, text=True)
    assert out.returncode == 0 and "5/5 sets equal" in out.stdout
