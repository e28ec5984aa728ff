import io
import json
import subprocess
import sys

import pytest

from quadforge.classify import EliminationRecord, registry_hash
from quadforge.cli import main

# ---------------------------------------------------------------------------
# exit codes
# ---------------------------------------------------------------------------


def test_verify_known_tag_exits_zero(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", "--lemma", "case4-case8", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["schema"] == 1
    assert report["registry_hash"] == registry_hash()
    assert report["outcome"]["ok"] is True


def test_verify_unknown_tag_exits_two(capsys):
    assert main(["verify", "--lemma", "not-a-tag"]) == 2


def test_bad_workers_and_budget_exit_two(capsys):
    assert main(["verify", "--lemma", "case4-case8", "--workers", "0"]) == 2
    assert main(["verify", "--lemma", "case4-case8", "--budget", "10"]) == 2


def test_usage_error_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--range", "notarange", "--pair", "3,8"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------


def test_verify_case9_equal_pipeline(tmp_path):
    out = tmp_path / "r.json"
    code = main(
        ["verify", "--lemma", "case9-equal", "--range", "4..2000",
         "--format", "json", "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text())
    tags = [r["lemma_tag"] for r in report["records"]]
    assert tags == ["case9-equal", "case9-q41"]
    assert report["records"][0]["survivors"] == [[41, 9, 9]]
    assert report["records"][1]["verdict"] == "eliminated"


def test_verify_theorem_small(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--lemma", "theorem", "--qmax", "50", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["outcome"]["final_verdict"] == "confirmed-example"


# ---------------------------------------------------------------------------
# scan command
# ---------------------------------------------------------------------------


def test_scan_pair_in_window(tmp_path):
    out = tmp_path / "r.json"
    code = main(["scan", "--pair", "4,8", "--range", "37..866", "--format", "json", "--out", str(out)])
    assert code == 0


def test_scan_beyond_guard(capsys):
    code = main(["scan", "--pair", "4,8", "--range", "37..2000"])
    assert code == 2  # needs --beyond
    code = main(["scan", "--pair", "4,8", "--range", "37..1000", "--beyond"])
    assert code == 0


def test_scan_equal_2(tmp_path):
    out = tmp_path / "r.json"
    code = main(["scan", "--equal", "2", "--range", "3..97", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["records"][0]["survivors"] == [[9, 2, 2]]


def test_scan_equal_9_includes_survivor(tmp_path):
    out = tmp_path / "r.json"
    code = main(["scan", "--equal", "9", "--range", "4..50", "--format", "json", "--out", str(out)])
    assert code == 0


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def test_json_report_roundtrips_records(tmp_path):
    out = tmp_path / "r.json"
    main(["verify", "--lemma", "case5-case8", "--format", "json", "--out", str(out)])
    report = json.loads(out.read_text())
    for rec_dict in report["records"]:
        rec = EliminationRecord.from_dict(rec_dict)
        assert rec.to_dict() == rec_dict


def test_reports_byte_identical_across_runs(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["verify", "--lemma", "case4-case9", "--format", "json", "--out", str(a)])
    main(["verify", "--lemma", "case4-case9", "--format", "json", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_csv_and_text_formats(tmp_path):
    for fmt in ("csv", "text"):
        out = tmp_path / f"r.{fmt}"
        code = main(["verify", "--lemma", "case4-case8", "--format", fmt, "--out", str(out)])
        assert code == 0
        body = out.read_text()
        assert "case4-case8" in body
    assert "lemma_tag,verdict" in (tmp_path / "r.csv").read_text()


# ---------------------------------------------------------------------------
# build-w2 and export
# ---------------------------------------------------------------------------


def test_build_w2_and_export_file(tmp_path):
    inc = tmp_path / "w2.inc"
    rep = tmp_path / "w2.json"
    code = main(
        ["build-w2", "--export", str(inc), "--all-selections",
         "--format", "json", "--out", str(rep)]
    )
    assert code == 0
    lines = inc.read_text().splitlines()
    assert lines[0] == "GQ 15 15 2 2"
    assert len(lines) == 46  # header + 45 flags
    report = json.loads(rep.read_text())
    assert report["outcome"]["points"] == 15
    assert report["outcome"]["order"] == [2, 2]
    assert len(report["outcome"]["selections"]) == 1


def test_export_to_stdout(capsys):
    code = main(["export"])
    assert code == 0
    captured = capsys.readouterr()
    lines = captured.out.splitlines()
    assert lines[0] == "GQ 15 15 2 2"
    assert len(lines) == 46


def test_export_to_file(tmp_path):
    inc = tmp_path / "w2.inc"
    assert main(["export", "--out", str(inc)]) == 0
    assert inc.read_text().startswith("GQ 15 15 2 2\n")


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def test_tables_json(tmp_path):
    out = tmp_path / "t.json"
    assert main(["tables", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())["tables"]
    assert set(data) == {"1", "2", "3", "4", "5"}
    assert len(data["1"]) == 10
    assert len(data["2"]) == 9
    assert data["2"][7]["index"] == "q(q+1)/2"
    assert len(data["4"]) == 6 and len(data["5"]) == 6


def test_tables_single(capsys):
    assert main(["tables", "--table", "1"]) == 0
    out = capsys.readouterr().out
    assert "PGL(2,11)" in out and "D_20" in out


# ---------------------------------------------------------------------------
# console entry point
# ---------------------------------------------------------------------------


def test_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "quadforge", "--version"],
        capture_output=True, text=True, timeout=120,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"


def test_env_budget_override(monkeypatch):
    from quadforge.psl2 import resolve_budget

    monkeypatch.setenv("QF_BUDGET", "123456")
    assert resolve_budget() == 123456
    assert resolve_budget(999) == 999
    monkeypatch.delenv("QF_BUDGET")
    assert resolve_budget() == 10_000_000


def test_budget_error_exits_three(monkeypatch):
    from quadforge import cli
    from quadforge.errors import BudgetExceededError

    def boom(budget=None):
        raise BudgetExceededError("simulated")

    monkeypatch.setattr(cli, "build_w2", boom)
    assert cli.main(["build-w2"]) == 3


def test_verify_theorem_q100(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--lemma", "theorem", "--qmax", "100",
                 "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    w2 = [r for r in report["records"] if r["lemma_tag"] == "w2-construction"]
    assert len(w2) == 1 and w2[0]["verdict"] == "confirmed-example"


def test_scan_pair_3_9_full_window(tmp_path):
    out = tmp_path / "r.json"
    code = main(["scan", "--pair", "3,9", "--range", "11..107995",
                 "--workers", "4", "--format", "json", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["records"][0]["survivors"] == []
    assert report["records"][0]["scan_size"] > 5000
