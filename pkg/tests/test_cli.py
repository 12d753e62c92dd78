import json
import os
import subprocess
import sys

from coring_lab.cli import main, run_analysis, check_assertion
from coring_lab.fixtures import fixture

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fx(name):
    return os.path.join(FIXDIR, f"{name}.json")


def run_cli(args):
    """Invoke the CLI in-process, capturing exit code and stdout."""
    import io
    from contextlib import redirect_stdout, redirect_stderr

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(args)
    return code, out.getvalue(), err.getvalue()


def test_verify_fixture_ok():
    for name in ("fix-t", "fix-h", "fix-n", "fix-s"):
        code, out, err = run_cli(["verify", fx(name)])
        assert code == 0, err


def test_verify_malformed_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, out, err = run_cli(["verify", str(bad)])
    assert code == 1


def test_verify_wrong_shape(tmp_path):
    blob = json.load(open(fx("fix-h")))
    blob["unit_coaction"] = [1, 0]
    p = tmp_path / "shape.json"
    p.write_text(json.dumps(blob))
    code, out, err = run_cli(["verify", str(p)])
    assert code == 1


def test_verify_broken_entwining_names_axiom(tmp_path):
    blob = json.load(open(fx("fix-n")))
    blob["entwining"] = {"kind": "matrix",
                         "psi": [[0, 0], [0, 0]]}
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(blob))
    code, out, err = run_cli(["verify", str(p)])
    assert code == 2
    assert "entwining-unit" in err


def test_analyze_asserts_pass():
    code, out, err = run_cli(["analyze", fx("fix-h"),
                              "--assert", "galois=true",
                              "--assert", "cleft=true"])
    assert code == 0


def test_analyze_assert_fix_n():
    code, out, err = run_cli(["analyze", fx("fix-n"),
                              "--assert", "galois=false"])
    assert code == 0
    code, out, err = run_cli(["analyze", fx("fix-n"),
                              "--assert", "cleft=true"])
    assert code == 3
    assert "assertion failed" in err


def test_analyze_assert_dotted_paths():
    code, out, err = run_cli(["analyze", fx("fix-n"),
                              "--assert", "dims.B=1",
                              "--assert", "theorems.surj.clauses.1=true"])
    assert code == 0


def test_analyze_json_roundtrip():
    code, out, err = run_cli(["analyze", fx("fix-h"), "--format", "json"])
    assert code == 0
    payload = json.loads(out)
    # round-trip: parse(serialize(report)) = report
    from coring_lab.exactla import dumps_canonical
    assert json.loads(dumps_canonical(payload)) == payload
    assert payload["flags"]["galois"] is True


def test_analyze_deterministic_across_runs():
    blobs = []
    for _ in range(2):
        code, out, err = run_cli(["analyze", fx("fix-h"), "--format", "json",
                                  "--seed", "7"])
        assert code == 0
        blobs.append(out)
    assert blobs[0] == blobs[1]


def test_analyze_seed_env(monkeypatch, capsys):
    monkeypatch.setenv("CORING_LAB_SEED", "3")
    code, out, err = run_cli(["analyze", fx("fix-t"), "--format", "json"])
    assert code == 0


def test_analyze_witness_budget():
    code, out, err = run_cli(["analyze", fx("fix-h"), "--format", "json",
                              "--witnesses", "3"])
    assert code == 0
    payload = json.loads(out)
    assert len(payload["witnesses"]) == 3


def test_report_over_fixtures():
    paths = [fx(n) for n in ("fix-t", "fix-h", "fix-n", "fix-s")]
    code, out, err = run_cli(["report"] + paths)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5  # header + 4 rows
    body = lines[1:]
    assert [l.split("\t")[0] for l in body] == sorted(paths)
    false_rows = [l for l in body if "\tfalse" in l]
    assert len(false_rows) == 1 and "fix-n" in false_rows[0]


def test_report_empty():
    code, out, err = run_cli(["report"])
    assert code == 0
    assert out.strip().splitlines()[0].startswith("instance")


def test_report_unreadable_path(tmp_path):
    missing = str(tmp_path / "missing.json")
    code, out, err = run_cli(["report", fx("fix-t"), missing])
    assert code == 1
    assert "error" in out


def test_check_assertion_helper():
    report = run_analysis(fixture("fix-n").context).payload
    assert check_assertion(report, "galois=false") is None
    assert check_assertion(report, "galois=true") is not None
    assert check_assertion(report, "nonsense-key=1") is not None
    assert check_assertion(report, "no-equals") is not None


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "coring_lab.cli", "verify", fx("fix-t")],
        capture_output=True, text=True)
    assert proc.returncode == 0


def test_exit_code_for_clause_disagreement(monkeypatch):
    import coring_lab.cli as cli
    from coring_lab.morita import ClauseDisagreement

    def boom(ctx, seed=0, witness_budget=None):
        raise ClauseDisagreement("synthetic", {"1": True, "2": False})

    monkeypatch.setattr(cli, "run_analysis", boom)
    code, out, err = run_cli(["analyze", fx("fix-t")])
    assert code == 4
    assert "clause disagreement" in err


def test_exit_code_for_inconclusive_search(monkeypatch):
    import coring_lab.cli as cli
    from coring_lab.cleft import InconclusiveSearch

    def boom(ctx, seed=0, witness_budget=None):
        raise InconclusiveSearch("budget exhausted")

    monkeypatch.setattr(cli, "run_analysis", boom)
    code, out, err = run_cli(["analyze", fx("fix-t")])
    assert code == 5
    assert "inconclusive" in err
