"""
Tests for experiment reports and the report writer.
"""

import csv

from cutoff_lab.reporter import CaseResult, ExperimentReport, FitResult, ReportWriter


def make_report(passed=True):
    cases = [
        CaseResult(name="bound", provenance="claim: test", inputs_digest="abc", measured={"value": 0.5},
                   bound=1.0, comparison="<=", passed=True),
        CaseResult(name="other", provenance="claim: test", inputs_digest="def", measured={"value": 3.0},
                   bound=2.0, comparison="<=", passed=passed),
    ]
    fits = [FitResult(quantity="delta0", exponent=2.0, intercept=0.1, r_squared=1.0, target=2.0, tolerance=0.1)]
    return ExperimentReport(
        suite_name="demo",
        seed=42,
        config_digest="0123",
        cases=cases,
        fitted_slopes=fits,
        table=[{"epsilon": 0.25, "delta0": 0.1}, {"epsilon": 0.125, "delta0": 1 / 3}],
        passed=passed,
    )


def test_report_json_round_trip():
    report = make_report()
    assert ExperimentReport.model_validate_json(report.to_json()) == report


def test_failures():
    assert make_report().failures() == []

    lines = make_report(passed=False).failures()
    assert len(lines) == 1
    assert lines[0].startswith("demo/other [def]: 3.0 <= 2.0")


def test_write_report_and_table(tmp_path):
    writer = ReportWriter(tmp_path / "out")
    report = make_report()

    json_path = writer.write_report(report)
    assert json_path.name == "demo.json"
    assert ExperimentReport.model_validate_json(json_path.read_text()).suite_name == "demo"

    csv_path = writer.write_table(report)
    with open(csv_path) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["epsilon", "delta0"]
    assert rows[2] == ["0.125", "0.33333333333333331"]


def test_table_falls_back_to_cases(tmp_path):
    writer = ReportWriter(tmp_path)
    report = make_report()
    report.table = []
    with open(writer.write_table(report)) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["case", "value", "passed"]
    assert len(rows) == 3


def test_svg_plot_is_deterministic(tmp_path):
    writer = ReportWriter(tmp_path)
    series = [("delta0", [0.25, 0.125, 0.0625], [0.1, 0.025, 0.00625])]
    fits = make_report().fitted_slopes
    first = writer.plot_loglog("scaling", series, "epsilon", "delta", fits=fits).read_bytes()
    second = writer.plot_loglog("scaling", series, "epsilon", "delta", fits=fits).read_bytes()
    assert first.startswith(b"<?xml")
    assert first == second


def test_summary_lists_failures(tmp_path):
    writer = ReportWriter(tmp_path)
    path = writer.write_summary([make_report(), make_report(passed=False)])
    text = path.read_text()
    assert "# Cutoff Lab Report" in text
    assert "FAIL" in text
    assert "## Failures" in text
    assert "demo/fit:" not in text
    assert "demo/delta0: 2.0000" in text
