"""
Experiment reports and their writers.

Suites produce an ExperimentReport per run; ReportWriter turns reports into
JSON, a CSV table per suite, SVG log-log plots and a markdown summary.
"""

import csv
import json
import logging
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from pydantic import BaseModel, Field  # noqa: E402

logger = logging.getLogger(__name__)

COMPARISONS = ("<=", ">=", "diagnostic")


class CaseResult(BaseModel):
    """One checked (or reported) quantity of a suite."""

    name: str = Field(..., description="Case name")
    provenance: str = Field(..., description="Where the bound comes from")
    inputs_digest: str = Field(..., description="sha256 prefix of the case inputs")
    measured: Dict[str, float] = Field(default_factory=dict, description="Measured values")
    bound: Optional[float] = Field(None, description="Bound or target")
    tolerance: float = Field(0.0, description="Allowed slack on the bound")
    comparison: str = Field("diagnostic", description="<=, >= or diagnostic")
    passed: bool = Field(True, description="Whether the bound holds")
    detail: str = Field("", description="Free-form note")


class FitResult(BaseModel):
    """Least-squares fit of log(value) against log(epsilon)."""

    quantity: str
    exponent: float
    intercept: float
    r_squared: float
    target: Optional[float] = None
    tolerance: Optional[float] = None
    passed: bool = True


class ExperimentReport(BaseModel):
    """Structured result of one verification suite."""

    suite_name: str
    seed: int
    config_digest: str = ""
    cases: List[CaseResult] = Field(default_factory=list)
    fitted_slopes: List[FitResult] = Field(default_factory=list)
    table: List[Dict[str, float]] = Field(default_factory=list)
    runtime: float = 0.0
    passed: bool = True

    def failures(self) -> List[str]:
        """Digest lines for every failing case and fit."""
        lines = []
        for case in self.cases:
            if not case.passed:
                value = case.measured.get("value")
                lines.append(
                    f"{self.suite_name}/{case.name} [{case.inputs_digest}]: "
                    f"{value!r} {case.comparison} {case.bound!r} (tol {case.tolerance:g}) fails"
                )
        for fit in self.fitted_slopes:
            if not fit.passed:
                lines.append(
                    f"{self.suite_name}/fit:{fit.quantity}: exponent {fit.exponent:.6g} "
                    f"(target {fit.target} +- {fit.tolerance}), r^2 {fit.r_squared:.6g}"
                )
        return lines

    def to_json(self) -> str:
        """JSON with sorted keys; floats keep their shortest round-trip form."""
        return json.dumps(self.model_dump(), indent=2, sort_keys=True)


def _format(value: Any) -> str:
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.17g}"
    return str(value)


class ReportWriter:
    """Writes reports, tables and plots into one output directory."""

    def __init__(self, out_dir: Union[str, Path]):
        """
        Initialize the writer.

        Args:
            out_dir: Output directory, created if missing
        """
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)

    def write_report(self, report: ExperimentReport) -> Path:
        path = self.out_dir / f"{report.suite_name}.json"
        path.write_text(report.to_json() + "\n")
        logger.info("Wrote %s", path)
        return path

    def write_table(self, report: ExperimentReport) -> Optional[Path]:
        """Write the suite's table rows as CSV (17 significant digits)."""
        rows = report.table or [
            {"case": case.name, **case.measured, "passed": float(case.passed)}
            for case in report.cases
        ]
        if not rows:
            return None
        header: List[str] = []
        for row in rows:
            header.extend(key for key in row if key not in header)
        path = self.out_dir / f"{report.suite_name}.csv"
        with open(path, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(header)
            for row in rows:
                writer.writerow([_format(row.get(key, "")) for key in header])
        return path

    def plot_loglog(
        self,
        name: str,
        series: Sequence[Tuple[str, Sequence[float], Sequence[float]]],
        xlabel: str,
        ylabel: str,
        fits: Sequence[FitResult] = (),
    ) -> Path:
        """
        Save a log-log plot as SVG.

        Args:
            name: File stem
            series: (label, x values, y values) triples
            xlabel: Label of the x axis
            ylabel: Label of the y axis
            fits: Optional fits drawn as dashed lines over the first series' x range

        Returns:
            Path of the SVG file
        """
        fig, ax = plt.subplots(figsize=(6, 4))
        for label, xs, ys in series:
            ax.loglog(xs, ys, "o-", label=label)
        for fit, (_, xs, _) in zip(fits, series):
            grid = np.array(sorted(xs), dtype=float)
            ax.loglog(
                grid,
                np.exp(fit.intercept) * grid**fit.exponent,
                "--",
                label=f"{fit.quantity} slope {fit.exponent:.3f}",
            )
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
        fig.tight_layout()
        path = self.out_dir / f"{name}.svg"
        plt.rcParams["svg.hashsalt"] = "cutoff-lab"
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        return path

    def write_summary(self, reports: Sequence[ExperimentReport]) -> Path:
        """Markdown overview of all reports of a run."""
        lines = []
        lines.append("# Cutoff Lab Report")
        lines.append("")
        timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        lines.append(f"**Run completed at:** {timestamp}")
        lines.append("")

        lines.append("## Suites")
        lines.append("")
        for report in reports:
            status = "PASS" if report.passed else "FAIL"
            passed = sum(1 for case in report.cases if case.passed)
            lines.append(
                f"- **{report.suite_name}**: {status} "
                f"({passed}/{len(report.cases)} cases, {report.runtime:.1f}s)"
            )

        fits = [(report.suite_name, fit) for report in reports for fit in report.fitted_slopes]
        if fits:
            lines.append("")
            lines.append("## Fitted exponents")
            lines.append("")
            for suite, fit in fits:
                lines.append(
                    f"- {suite}/{fit.quantity}: {fit.exponent:.4f} (r^2 = {fit.r_squared:.4f})"
                )

        failures = self.failure_digest(reports)
        if failures:
            lines.append("")
            lines.append("## Failures")
            lines.append("")
            for failure in failures:
                lines.append(f"- {failure}")

        path = self.out_dir / "summary.md"
        path.write_text("\n".join(lines) + "\n")
        return path

    @staticmethod
    def failure_digest(reports: Sequence[ExperimentReport]) -> List[str]:
        return [line for report in reports for line in report.failures()]
