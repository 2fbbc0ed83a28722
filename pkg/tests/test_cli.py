from __future__ import annotations

import json
import subprocess
import sys

import pytest

from seshadri.cli import main, parse_config


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys, data_dir):
    code, out, _ = run(capsys, "validate", str(data_dir / "toric.json"))
    assert code == 0 and out.startswith("OK")


def test_validate_reports_line(capsys, data_dir):
    code, _, err = run(capsys, "validate", str(data_dir / "bad_bond.json"))
    assert code == 2 and "line 4" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "nope.json"))
    assert code == 2 and err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"elements": [\n  "a",\n}')
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "line" in err


def test_bad_linearization_is_input_error(capsys, data_dir):
    code, _, err = run(capsys, "gamma", str(data_dir / "toric.json"), "--linearization", "p0,p1")
    assert code == 2 and err


def test_gamma_toric(capsys, data_dir):
    code, out, _ = run(capsys, "gamma", str(data_dir / "toric.json"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["indecomposables"]) == 6


def test_koszul_verdicts(capsys, data_dir):
    code, out, _ = run(capsys, "koszul", str(data_dir / "semigroup23.json"))
    assert code == 0 and "NotQuadratic" in out
    code, out, _ = run(capsys, "koszul", str(data_dir / "toric.json"))
    assert code == 0 and "Quadratic" in out and "NotQuadratic" not in out
    code, out, _ = run(capsys, "koszul", "--example", "sl3")
    assert code == 0 and "NotQuadratic" not in out


def test_semitoric_gb_sl3(capsys, data_dir):
    code, out, _ = run(capsys, "semitoric-gb", str(data_dir / "sl3.json"), "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["basis"]) == 9


def test_gorenstein(capsys):
    code, out, _ = run(capsys, "gorenstein", "--bonds", "2,1,2")
    assert code == 0 and "Gorenstein: true" in out
    code, out, _ = run(capsys, "gorenstein", "--bonds", "3,1", "--format", "json")
    data = json.loads(out)
    assert data["gorenstein"] is False and data["sums"] == ["5/3", "4", "1"]


def test_gorenstein_bad_bonds():
    with pytest.raises(SystemExit) as exc:
        parse_config(["gorenstein", "--bonds", "2,x"])
    assert exc.value.code == 2


def test_wps(capsys):
    code, out, _ = run(capsys, "wps", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 14 == len(data["entries"])
    lines = [e["weights"] for e in data["entries"] if e["two_disjoint_lines"]]
    assert lines == [[2, 3, 3, 4]]


def test_sl3_demo_json(capsys):
    code, out, _ = run(capsys, "sl3-demo", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["matches_reference"] is True
    assert len(data["relations"]) == 9 and len(data["semitoric_basis"]) == 9
    assert len(data["chains"]) == 4


def test_sl3_demo_text(capsys):
    code, out, _ = run(capsys, "sl3-demo")
    assert code == 0
    assert out.rstrip().splitlines()[-1].startswith("reference relations: match")


def test_lift_examples(capsys):
    code, out, _ = run(capsys, "lift", "--example", "toric")
    assert code == 0 and "y2^2 = y1 y3" in out
    code, out, _ = run(capsys, "lift", "--example", "sl3", "--format", "json")
    assert code == 0 and len(json.loads(out)["lifted_basis"]) == 9


def test_toric_demo(capsys):
    code, out, _ = run(capsys, "toric-demo")
    assert code == 0 and out


@pytest.mark.parametrize("argv", [["sl3-demo", "--format", "json"], ["wps", "--format", "json"],
                                  ["lift", "--example", "sl3", "--format", "json"]])
def test_json_output_is_deterministic(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert json.loads(first) == json.loads(second)


def test_module_entry_point(data_dir):
    proc = subprocess.run([sys.executable, "-m", "seshadri", "validate", str(data_dir / "toric.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("OK")
