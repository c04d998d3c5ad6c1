import io
import json
import subprocess
import sys

import pytest

from toricext.cli import run


def call(tmp_path, command, doc, *extra, fmt="json"):
    path = tmp_path / "in.json"
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    out, err = io.StringIO(), io.StringIO()
    code = run([command, "--input", str(path), "--format", fmt, *extra], out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_json(tmp_path):
    code, out, _ = call(tmp_path, "classify", {"A": [["1", "1", "-2"]]})
    assert code == 0
    report = json.loads(out)
    assert report["B_columns"] == [["2", "0", "1"], ["0", "2", "1"], ["1", "1", "1"]]
    assert report["E_columns"] == [["1", "1", "-2"]]
    assert all(report["checks"].values())
    assert report["binomials"] == ["x1*x2 - x3^2"]


def test_text_format(tmp_path):
    code, out, _ = call(tmp_path, "classify", {"A": [[1, 1, -2]]}, fmt="text")
    assert code == 0
    assert "A*B = 0: ok" in out
    assert "FAILED" not in out


def test_hilbert_basis_and_saturate(tmp_path):
    code, out, _ = call(tmp_path, "hilbert-basis", {"A": [[2, 1, -2]]})
    assert code == 0 and json.loads(out)["B_columns"] == [["1", "0", "1"], ["0", "2", "1"]]
    code, out, _ = call(tmp_path, "saturate", {"generators": [[1, 0], [0, 2], [1, 1]]})
    report = json.loads(out)
    assert code == 0 and report["is_normal"] is False
    assert report["saturation"] == [["0", "1"], ["1", "0"]]


def test_obstruction(tmp_path):
    code, out, _ = call(tmp_path, "obstruction", {"A": [[1, 1, -2]]})
    w = json.loads(out)["witness"]
    assert code == 0 and w["v"] == ["2", "2", "2"]
    code, _, err = call(tmp_path, "obstruction", {"A": [[2, 1, -2]]})
    assert code == 1 and "KerBTrivial" in err


def test_counterexample_roundtrip(tmp_path):
    code, out, _ = call(tmp_path, "counterexample", {"A": [[1, 1, -2]]})
    assert code == 0
    code, out, _ = call(tmp_path, "decide-extension", out)
    report = json.loads(out)
    assert code == 0
    assert report["verdict"] == "NotExtendable"
    assert report["examined"] == report["total_selections"] == 1
    assert report["checks"]["certificate verified"] is True


def test_decide_extendable(tmp_path):
    doc = {
        "A": [[1, 1, -2]],
        "primes": ["Z1", "Z2", "W1", "W2"],
        "classes": {"Z1": ["-1"], "Z2": ["-1"], "W1": ["1"], "W2": ["1"]},
        "H_S": {"free_rank": 1, "torsion_orders": []},
        "H_X": {"free_rank": 1, "torsion_orders": []},
        "rho": [["1"]],
        "V": [[2, 0, 1, 1], [0, 2, 1, 1], [1, 1, 1, 1]],
    }
    code, out, _ = call(tmp_path, "decide-extension", doc)
    report = json.loads(out)
    assert code == 0 and report["verdict"] == "Extendable"
    assert report["eta"] == [["-1"]]
    assert report["checks"]["B*U = V"] is True


def test_budget_flag_and_env(tmp_path, monkeypatch):
    code, out, _ = call(tmp_path, "counterexample", {"A": [[1, 1, -2]]})
    code, _, err = call(tmp_path, "decide-extension", out, "--budget", "0")
    assert code == 1 and "SearchBudgetExceeded" in err
    monkeypatch.setenv("TORIC_BUDGET", "0")
    code, _, err = call(tmp_path, "decide-extension", out)
    assert code == 1
    code, _, _ = call(tmp_path, "decide-extension", out, "--budget", "5")
    assert code == 0
    monkeypatch.setenv("TORIC_BUDGET", "lots")
    code, _, err = call(tmp_path, "decide-extension", out)
    assert code == 2


@pytest.mark.parametrize(
    "command, doc, status",
    [
        ("classify", "{not json", 2),
        ("classify", {"B": [[1]]}, 2),
        ("classify", {"A": [[0, 0]]}, 2),
        ("classify", {"A": [[1, 2], [3]]}, 2),
        ("classify", {"A": [["x", 1]]}, 2),
        ("counterexample", {"A": [[2, -2]]}, 1),
        ("counterexample", {"A": [[1, 1]]}, 1),
        ("saturate", {"generators": [[1], [-1]]}, 1),
    ],
)
def test_exit_codes(tmp_path, command, doc, status):
    code, out, err = call(tmp_path, command, doc)
    assert code == status
    assert out == "" and err.startswith("error:")


def test_missing_file():
    assert run(["classify", "--input", "/nonexistent/x.json"], io.StringIO(), io.StringIO()) == 2


def test_bignum_roundtrip(tmp_path):
    big = str(10**30)
    code, out, _ = call(tmp_path, "classify", {"A": [[big, "-" + big]]})
    assert code == 0
    assert json.loads(out)["B_columns"] == [["1", "1"]]


def test_output_is_deterministic(tmp_path):
    outs = {call(tmp_path, "counterexample", {"A": [[1, 1, -1, -1]]})[1] for _ in range(3)}
    assert len(outs) == 1


def test_console_entry_point(tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"A": [[1, 1, -2]]}))
    proc = subprocess.run(
        [sys.executable, "-m", "toricext", "counterexample", "--input", str(path)],
        capture_output=True, text=True, check=True,
    )
    proc2 = subprocess.run(
        [sys.executable, "-m", "toricext", "decide-extension", "--input", "-", "--format", "text"],
        input=proc.stdout, capture_output=True, text=True,
    )
    assert proc2.returncode == 0
    assert "verdict: NotExtendable" in proc2.stdout
