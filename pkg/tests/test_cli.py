import json
import re
import subprocess
import sys

import jsonschema
import pytest

from negafont import schemas
from negafont.cli import run

from oracles import CLUSTER, GHZ3, TABLE1, W3


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def check(command, rec):
    jsonschema.validate(rec, schemas.BY_COMMAND[command])


def test_count(capsys):
    code, out, _ = call(capsys, "count", "--n", "5")
    assert code == 0 and out.strip() == "major classes: 15, N-partite types: 13"
    code, out, _ = call(capsys, "count", "--n", "4", "--json")
    check("count", json.loads(out))


def test_classify_json_ghz(capsys):
    code, out, _ = call(capsys, "classify", "--state", "|000>+|111>", "--json")
    rec = json.loads(out)
    check("classify", rec)
    assert code == 0 and rec["class"] == "CII" and rec["subclass"] == {"N3": 1, "N2": 0}


def test_classify_table_output(capsys):
    code, out, _ = call(capsys, "classify", "--state", TABLE1["CI"], "--canonicalize")
    assert code == 0
    assert "class: CI" in out and "canonical form:" in out and "tau3:" in out


def test_fonts_table(capsys):
    code, out, _ = call(capsys, "fonts", "--state", "|000>+|111>+|110>", "--qubit", "1")
    assert code == 0
    body = out.splitlines()[2:-1]
    assert len(body) == 6
    assert sum(line.rstrip().endswith("*") for line in body) == 2
    assert "6 fonts, 2 with nonzero determinant" in out


def test_fonts_json(capsys):
    code, out, _ = call(capsys, "fonts", "--state", CLUSTER, "--qubit", "2", "--k", "3", "--json")
    rec = json.loads(out)
    check("fonts", rec)
    # binom(3, 2) flip sets times 2^(4-2) spectator/base choices
    assert all(f["K"] == 3 for f in rec["fonts"]) and len(rec["fonts"]) == 12


def test_transpose(capsys):
    code, out, _ = call(capsys, "transpose", "--state", "|00>+|11>", "--qubit", "2", "--dump", "--json")
    rec = json.loads(out)
    check("transpose", rec)
    assert rec["negativity"] == pytest.approx(1) and len(rec["matrix"]) == 16
    code, out, _ = call(capsys, "transpose", "--state", "|000>+i|100>", "--qubit", "1", "--k", "2")
    assert code == 0 and "2-way partial transpose" in out
    # the i|100> coherence sits at distance 1 from the flipped qubit: |i/2 - (-i/2)| = 1
    resid = float(re.search(r"decomposition residual \(max abs\): (\S+)", out).group(1))
    assert resid == pytest.approx(1, abs=1e-12)


def test_negativity_all_and_one(capsys):
    code, out, _ = call(capsys, "negativity", "--state", W3, "--json")
    rec = json.loads(out)
    check("negativity", rec)
    assert [q["qubit"] for q in rec["qubits"]] == [1, 2, 3]
    code, out, _ = call(capsys, "negativity", "--state", W3, "--qubit", "2")
    assert code == 0 and len(out.strip().splitlines()) == 3


def test_canonicalize(capsys):
    code, out, _ = call(capsys, "canonicalize", "--state", "(0.3+0.1i)|000>+|011>-0.4i|101>+|110>", "--json")
    rec = json.loads(out)
    check("canonicalize", rec)
    assert rec["method"] == "exact3" and rec["lbp_count"] <= 5
    code, out, _ = call(capsys, "canonicalize", "--state", "|000>+|011>+|101>+0.5|110>", "--slocc", "--json")
    assert any(op["kind"] == "invertible" for op in json.loads(out)["ops"])


def test_invariants(capsys):
    code, out, _ = call(capsys, "invariants", "--state", GHZ3, "--json")
    rec = json.loads(out)
    check("invariants", rec)
    assert rec["tau3"] == pytest.approx(1)
    assert all(r["difference"] < 1e-10 for r in rec["font_sum_identity"])
    code, out, _ = call(capsys, "invariants", "--state", "|00>+|11>")
    assert code == 0 and "tau3" not in out


def test_human_and_json_agree(capsys):
    _, js, _ = call(capsys, "invariants", "--state", TABLE1["CI"], "--json")
    _, text, _ = call(capsys, "invariants", "--state", TABLE1["CI"])
    rec = json.loads(js)
    nums = [float(x) for x in re.findall(r"-?\d+\.\d+(?:e-?\d+)?", text)]
    assert any(abs(x - rec["tau3"]) <= 1e-12 for x in nums)
    for r in rec["font_sum_identity"]:
        assert any(abs(x - r["negativity_sq"]) <= 1e-12 for x in nums)
    _, js, _ = call(capsys, "classify", "--state", TABLE1["CI"], "--json")
    _, text, _ = call(capsys, "classify", "--state", TABLE1["CI"])
    nums = [float(x) for x in re.findall(r"-?\d+\.\d+(?:e-?\d+)?", text)]
    for q in json.loads(js)["per_qubit"]:
        assert any(abs(x - q["negativity"]) <= 1e-12 for x in nums)


@pytest.mark.parametrize(
    "argv,code",
    [
        (["classify", "--state", "|01>+"], 1),
        (["classify", "--state", "|00>-|00>"], 2),
        (["classify", "--state", "|00>+|11>"], 2),
        (["fonts", "--state", GHZ3, "--qubit", "4"], 4),
        (["fonts", "--state", GHZ3, "--qubit", "1", "--k", "5"], 4),
        (["fonts", "--state", GHZ3], 4),
        (["classify"], 4),
        (["classify", "--state", GHZ3, "--tol", "abc"], 4),
        (["classify", "--state", GHZ3, "--tol", "-1"], 4),
        (["classify", "--state", GHZ3, "--canonicalize", "--assume-canonical"], 4),
        (["nope"], 4),
        (["count", "--n", "1"], 4),
        (["canonicalize", "--state", "|00>+|11>"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = call(capsys, *argv)
    assert got == code
    assert err.strip()


def test_parse_error_reports_offset(capsys):
    _, _, err = call(capsys, "classify", "--state", "|000>+|11x>")
    assert "at byte 9" in err


def test_batch(tmp_path, capsys):
    f = tmp_path / "states.txt"
    f.write_text(f"# two states and a typo\n{GHZ3}\n{W3}\n|0x1>\n\n|00>-|00>\n")
    code, out, _ = call(capsys, "classify", "--file", str(f), "--workers", "3")
    recs = records(out)
    assert code == 0 and len(recs) == 4
    assert [r["line"] for r in recs] == [2, 3, 4, 6]
    assert recs[0]["class"] == "CII" and recs[1]["class"] == "CIII"
    assert recs[2]["error"]["type"] == "parse" and recs[2]["error"]["offset"] == 2
    assert recs[3]["error"]["type"] == "invalid-state"
    for r in recs:
        jsonschema.validate(r, schemas.ERROR_RECORD if "error" in r else schemas.CLASS_REPORT)


def test_batch_empty_and_unreadable(tmp_path, capsys):
    f = tmp_path / "empty.txt"
    f.write_text("")
    code, out, _ = call(capsys, "classify", "--file", str(f))
    assert code == 0 and out == ""
    code, _, err = call(capsys, "classify", "--file", str(tmp_path / "missing.txt"))
    assert code == 4 and err


def test_file_input_for_other_commands(tmp_path, capsys):
    f = tmp_path / "s.txt"
    f.write_text(f"{GHZ3}\n{W3}\n")
    code, out, _ = call(capsys, "negativity", "--file", str(f), "--json")
    assert code == 0 and len(records(out)) == 2


def test_seeded_output_is_bit_identical(capsys):
    argv = ["classify", "--state", CLUSTER, "--json", "--seed", "3", "--restarts", "4"]
    _, first, _ = call(capsys, *argv)
    _, second, _ = call(capsys, *argv)
    assert first == second
    check("classify", json.loads(first))


def test_assume_canonical_four_qubits(capsys):
    code, out, _ = call(capsys, "classify", "--state", "|0000>+|1110>", "--assume-canonical", "--json")
    rec = json.loads(out)
    check("classify", rec)
    assert rec["class"] == "CVI" and rec["separable_qubits"] == [4] and rec["canonicalization"] is None


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "negafont", "count", "--n", "3"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "major classes: 3, N-partite types: 3"
    proc = subprocess.run([sys.executable, "-m", "negafont", "classify", "--state", "|0"], capture_output=True, text=True)
    assert proc.returncode == 1 and "at byte 2" in proc.stderr
