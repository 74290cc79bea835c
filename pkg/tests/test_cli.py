"""Front-end behavior: subcommands, exit codes, report schema."""

import json
import subprocess
import sys

import pytest

from tubes import cli


def run_cli(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(argv, capsys):
    code = cli.main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_symmetry_subcommand(capsys):
    code, report = run_json(["symmetry", "--surface", "surface.table.1p"], capsys)
    assert code == 0
    dims = [c for c in report["checks"] if c["id"].startswith("symmetry.dim")]
    assert "dimension 7" in dims[0]["details"]


def test_table_subcommand(capsys):
    code, report = run_json(["table", "--case", "D"], capsys)
    assert code == 0
    assert report["summary"] == {"pass": 46, "fail": 0, "unresolved": 0}
    entry_checks = [c for c in report["checks"] if c["id"].startswith("table.D.0")
                    or c["id"].startswith("table.D.1")]
    assert len(entry_checks) == 45


def test_classify_has_fourteen_domain_records(capsys):
    code, report = run_json(["classify"], capsys)
    assert code == 0
    domain_records = [c for c in report["checks"] if c["id"].startswith("classify.domain.")]
    assert len(domain_records) == 14
    assert all(c["verdict"] == "PASS" for c in domain_records)
    assert report["summary"]["fail"] == 0


def test_orbits_rejects_on_surface_probe(capsys):
    code, out = run_cli(["orbits", "--surface", "surface.table.6",
                         "--probes", "1,0,0,0"], capsys)
    assert code == 1
    assert "probe lies on the surface" in out


def test_scan_exit_code_unresolved(capsys):
    code, report = run_json(["scan", "--surface", "surface.table.3", "--dim", "4"], capsys)
    assert code == 2
    assert report["summary"]["unresolved"] == 1
    assert report["summary"]["fail"] == 0


def test_normal_form_cutoff_flag(capsys):
    code, report = run_json(["normal-form", "--case", "C", "--cutoff", "7"], capsys)
    assert code == 0
    assert report["summary"]["fail"] == 0


def test_usage_errors(capsys):
    assert cli.main([]) == 64
    capsys.readouterr()
    assert cli.main(["witness", "--id", "no.such.witness"]) == 64


def test_report_schema_fields(capsys):
    code, report = run_json(["lines"], capsys)
    assert code == 0
    assert set(report.keys()) == {"version", "command", "checks", "summary", "seconds"}
    for check in report["checks"]:
        assert set(check.keys()) == {"id", "claim", "verdict", "details", "provenance"}
    assert [c["id"] for c in report["checks"]] == sorted(c["id"] for c in report["checks"])


def test_reports_deterministic(capsys):
    _, first = run_json(["nilpotency", "--case", "C"], capsys)
    _, second = run_json(["nilpotency", "--case", "C"], capsys)
    first.pop("seconds")
    second.pop("seconds")
    assert first == second


def test_fixture_override_roundtrip(tmp_path, monkeypatch, capsys):
    from tubes import catalog
    catalog.export_tree(tmp_path)
    monkeypatch.setenv("TUBES_FIXTURES", str(tmp_path))
    code, report = run_json(["witness", "--id", "witness.C.gt"], capsys)
    assert code == 0 and report["summary"]["pass"] == 1


def test_console_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "tubes.cli", "verify-map",
                           "--id", "map.case3.derived"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "[PASS]" in proc.stdout
