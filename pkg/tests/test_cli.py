import csv
import io
import json
import subprocess
import sys

import pytest

from ruledsyz.cli import run
from ruledsyz.numeric import NumClass, cohomology_dims, decompose_for_np, np_status, positivity


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_oracle_golden(capsys):
    code, out, _ = call(capsys, "oracle", "-e", "-1", "-a", "2", "-b", "2", "-p", "1")
    assert code == 0
    data = json.loads(out)
    assert data["np_status"] == {"verdict": "proven_yes", "source": "thm6.1.1", "p": 1}
    L = NumClass(2, 2)
    assert data["cohomology"] == cohomology_dims(L, -1).to_dict()
    assert data["positivity"] == positivity(L, -1).to_dict()
    assert data["codimension"] == 6


def test_scan_regions(capsys):
    code, out, _ = call(capsys, "scan", "-e", "-1", "-p", "2", "--amin", "0", "--amax", "8", "--bmin", "-4", "--bmax", "8")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["a", "b", "e", "p", "verdict", "source"]
    assert len(rows) == 9 * 13
    proven = {(int(r["a"]), int(r["b"])) for r in rows if r["verdict"] == "proven_yes"}
    conj = {(int(r["a"]), int(r["b"])) for r in rows if r["verdict"] == "conjectured_yes"}
    pts = [(a, b) for a in range(9) for b in range(-4, 9)]
    assert proven == {(a, b) for a, b in pts if a >= 3 and a + b >= 6 and a + 2 * b >= 6}
    assert conj == {(a, b) for a, b in pts if a >= 1 and a + b >= 5 and a + 2 * b >= 5} - proven
    for r in rows:
        st = np_status(NumClass(int(r["a"]), int(r["b"])), -1, 2)
        assert (r["verdict"], r["source"]) == (st.verdict.value, st.source)


def test_scan_deterministic(capsys):
    argv = ["scan", "-e", "1", "-p", "1", "--amin", "0", "--amax", "4", "--bmin", "0", "--bmax", "9"]
    _, a, _ = call(capsys, *argv)
    _, b, _ = call(capsys, *argv)
    assert a == b


def test_decompose_golden(capsys):
    code, out, _ = call(capsys, "decompose", "-e", "-1", "-a", "6", "-b", "-1", "-p", "1")
    assert code == 0
    data = json.loads(out)
    assert data["witnesses"][0]["witness"] == decompose_for_np(NumClass(6, -1), -1, 1, 1).to_dict()


def test_betti_elliptic_quintic(capsys):
    code, out, _ = call(capsys, "betti", "--model", "elliptic", "-d", "5", "--pmax", "3", "--qmax", "3")
    assert code == 0
    header, rest = out.split("\n", 1)
    assert "prime=" in header and "seed=0" in header
    table_csv, decisions = rest.split("{", 1)
    rows = list(csv.reader(io.StringIO(table_csv)))
    assert rows[0] == ["j-i", "0", "1", "2", "3"]
    assert rows[3][4] == "1"  # beta_{3,5}
    dec = json.loads("{" + decisions)["decide_np"]
    assert dec[1]["p"] == 2 and dec[1]["holds"]
    assert not dec[2]["holds"]


def test_betti_ruled(capsys):
    code, out, _ = call(capsys, "betti", "--model", "ruled", "-e", "0", "-a", "2", "-b", "4", "--pmax", "1", "--qmax", "2")
    assert code == 0
    assert json.loads(out[out.index("{"):])["decide_np"][0]["hypotheses_certified"]


def test_prime_env(capsys, monkeypatch):
    monkeypatch.setenv("RULEDSYZ_PRIME", "10009")
    code, out, _ = call(capsys, "betti", "--model", "rnc", "-d", "3", "--pmax", "2", "--qmax", "2")
    assert code == 0 and "prime=10009" in out


def test_domain_error_exit_code(capsys):
    code, _, err = call(capsys, "oracle", "-e", "-2", "-a", "1", "-b", "1")
    assert code == 1 and "InvalidSurface" in err
    code, _, err = call(capsys, "betti", "--model", "elliptic", "-d", "5", "--prime", "10007", "-A", "0", "-B", "0")
    assert code == 1 and "SingularCurve" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["oracle", "-e", "0"])
    assert exc.value.code == 2
    assert "-a" in capsys.readouterr().err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ruledsyz", "oracle", "-e", "0", "-a", "2", "-b", "4"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["np_status"]["verdict"] == "proven_yes"


def test_verify(capsys):
    code, out, _ = call(capsys, "verify")
    assert code == 0 and "5/5 checks passed" in out
