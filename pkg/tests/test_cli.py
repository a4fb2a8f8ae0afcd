from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from hhnerve.cli import RunConfig, UsageError, ingest_group, main, run
from hhnerve.exactla import Q, SparseMatrix

SCHEMA = json.loads((Path(__file__).resolve().parents[1] / "docs" / "report-schema.json").read_text())

NON_ASSOCIATIVE = [[0, 1, 2, 3, 4],
                   [1, 0, 3, 4, 2],
                   [2, 4, 0, 1, 3],
                   [3, 2, 4, 0, 1],
                   [4, 3, 1, 2, 0]]


def invoke(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_full_report_s3_json(capsys):
    code, out, _ = invoke(capsys, "full-report", "--group", "s3", "--field", "Q",
                          "--max-degree", "3", "--format", "json")
    assert code == 0
    r = json.loads(out)
    jsonschema.validate(r, SCHEMA)
    assert r["homology"]["dims"] == [3, 0, 0]
    assert r["passed"] and all(r["checks"].values())
    assert r["sizes"]["hochschild_chains"]["dims"] == [6, 36, 216, 1296]
    assert "timing_seconds" not in r


@pytest.mark.parametrize("command", ["group-info", "hochschild", "nerve", "derivations",
                                     "compare", "burghelea", "benson-check"])
def test_each_command_validates(capsys, command):
    code, out, _ = invoke(capsys, command, "--group", "klein", "--field", "F2", "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), SCHEMA)


def test_benson_check_c3(capsys):
    code, out, _ = invoke(capsys, "benson-check", "--group", "c3")
    assert code == 0
    assert "lhs 9, rhs 9, equal (abelian)" in out


def test_non_associative_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"order": 5, "table": NON_ASSOCIATIVE}))
    code, _, err = invoke(capsys, "hochschild", "--cayley-file", str(p))
    assert code == 1
    assert "NotAGroup(non-associative)" in err and "witness [" in err


def test_cayley_file_klein(tmp_path):
    p = tmp_path / "klein.json"
    p.write_text(json.dumps({"order": 4, "table": [[0, 1, 2, 3], [1, 0, 3, 2],
                                                   [2, 3, 0, 1], [3, 2, 1, 0]]}))
    G = ingest_group(RunConfig(cayley_file=str(p)))
    assert G.order == 4 and G.is_abelian


def test_usage_errors(capsys, tmp_path):
    assert invoke(capsys, "group-info", "--group", "s9")[0] == 1
    assert invoke(capsys, "group-info")[0] == 1
    assert invoke(capsys, "group-info", "--group", "s3", "--field", "F4")[0] == 1
    assert invoke(capsys, "group-info", "--group", "s3", "--max-degree", "0")[0] == 1
    assert invoke(capsys, "group-info", "--cayley-file", str(tmp_path / "missing.json"))[0] == 1
    bad = tmp_path / "junk.json"
    bad.write_text("{not json")
    assert invoke(capsys, "group-info", "--cayley-file", str(bad))[0] == 1
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 1
    with pytest.raises(UsageError):
        ingest_group(RunConfig(group="s3", cayley_file="x.json"))


def test_budget_exceeded(capsys):
    code, _, err = invoke(capsys, "hochschild", "--group", "s4", "--budget-mb", "1")
    assert code == 1
    assert "|G|=24" in err and "N=3" in err


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("HHNERVE_BUDGET_MB", "0.5")
    code, _, err = invoke(capsys, "hochschild", "--group", "q8")
    assert code == 1 and "BudgetExceeded" in err


def test_negative_control_exit_2(capsys):
    code, out, _ = invoke(capsys, "compare", "--group", "s3", "--corrupt-sign", "2",
                          "--format", "json")
    assert code == 2
    r = json.loads(out)
    assert not r["passed"]
    assert r["compare"]["S"]["signed"]["witness"]["degree"] in (1, 2)


def test_csv_output(capsys):
    code, out, _ = invoke(capsys, "hochschild", "--group", "c2", "--field", "F2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "complex,field,degree,dimension,torsion"
    assert "HH_*,F2,2,2," in lines


def test_z_field_reports_torsion(capsys):
    code, out, _ = invoke(capsys, "hochschild", "--group", "c2", "--field", "Z", "--format", "json")
    assert code == 0
    r = json.loads(out)
    assert r["homology"]["torsion"][1] == [2, 2]


def test_dump_matrix(capsys):
    code, out, _ = invoke(capsys, "hochschild", "--group", "c2", "--dump-matrix", "hochschild-chains:1")
    assert code == 0
    M = SparseMatrix.loads(out, Q)
    assert M.shape == (2, 4) and M.is_zero()
    assert invoke(capsys, "hochschild", "--group", "c2", "--dump-matrix", "nope:1")[0] == 1


def test_dump_complex_and_dot(capsys):
    code, out, _ = invoke(capsys, "nerve", "--group", "c2", "--dump-complex", "adjoint")
    assert code == 0 and "dims 2 4 8 16" in out
    code, out, _ = invoke(capsys, "nerve", "--group", "s3", "--dot")
    assert code == 0 and out.count("subgraph cluster_") == 3


def test_timing_flag(capsys):
    code, out, _ = invoke(capsys, "benson-check", "--group", "c2", "--format", "json", "--timing")
    assert code == 0 and "timing_seconds" in json.loads(out)


def test_run_api_deterministic():
    cfg = RunConfig(group="q8", field=Q)
    a, ca = run("full-report", cfg)
    b, cb = run("full-report", cfg)
    assert ca == cb == 0
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hhnerve", "group-info", "--group", "q8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "order 8, 5 classes" in proc.stdout
