"""
Base class for verification suites.

A suite runs a fixed list of checks against the cut-off operator and records
every measured quantity as a CaseResult, every scaling law as a FitResult.
All suites share the digest, record and fit machinery defined here.
"""

import hashlib
import json
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import asdict
from time import perf_counter
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..config import FamilyConfig, LabConfig
from ..grid import GridFunction
from ..partition import PartitionPair, build_partition_pair, certify
from ..reporter import CaseResult, ExperimentReport, FitResult
from .samples import SampleFamily

logger = logging.getLogger(__name__)

DIGEST_LENGTH = 16


def _digest_item(value: Any) -> Any:
    if isinstance(value, GridFunction):
        return {
            "grid": [value.domain_half_length, value.resolution],
            "samples": hashlib.sha256(value.samples.tobytes()).hexdigest(),
        }
    if isinstance(value, np.ndarray):
        return hashlib.sha256(np.ascontiguousarray(value).tobytes()).hexdigest()
    if isinstance(value, (list, tuple)):
        return [_digest_item(item) for item in value]
    if isinstance(value, dict):
        return {str(key): _digest_item(item) for key, item in value.items()}
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def inputs_digest(inputs: Optional[Dict[str, Any]]) -> str:
    """sha256 prefix identifying the inputs of a case."""
    payload = json.dumps(_digest_item(inputs or {}), sort_keys=True, default=repr)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:DIGEST_LENGTH]


def config_digest(config: LabConfig) -> str:
    """Digest of everything in the config that can change a result."""
    data = asdict(config)
    for key in ("out_dir", "debug", "verbose", "suites"):
        data.pop(key, None)
    return inputs_digest(data)


def compare(value: float, bound: Optional[float], comparison: str, tolerance: float = 0.0) -> bool:
    """Evaluate value <= bound + tol or value >= bound - tol; diagnostics always pass."""
    if comparison == "diagnostic" or bound is None:
        return True
    if not math.isfinite(value):
        return False
    if comparison == "<=":
        return value <= bound + tolerance
    if comparison == ">=":
        return value >= bound - tolerance
    raise ValueError(f"Unknown comparison '{comparison}'")


class BaseSuite(ABC):
    """Shared machinery of the verification suites."""

    name: str = "suite"

    def __init__(self, config: LabConfig, pair: Optional[PartitionPair] = None):
        """
        Initialize the suite.

        Args:
            config: Experiment configuration
            pair: Partition pair under test (default: the quintic pair)
        """
        self.config = config
        self.pair = pair or build_partition_pair()
        self.cases: List[CaseResult] = []
        self.fits: List[FitResult] = []
        self.table: List[Dict[str, float]] = []

    @abstractmethod
    def execute(self) -> None:
        """Run every check of the suite, recording results."""
        pass

    def run(self) -> ExperimentReport:
        """
        Run the suite and assemble its report.

        Returns:
            ExperimentReport; passed is False if any case or fit fails
        """
        self.cases, self.fits, self.table = [], [], []
        logger.info("Running suite '%s' (seed %d)", self.name, self.config.seed)
        start = perf_counter()
        self.execute()
        runtime = perf_counter() - start

        passed = all(case.passed for case in self.cases) and all(fit.passed for fit in self.fits)
        logger.info("Suite '%s' finished in %.1fs: %s", self.name, runtime, "pass" if passed else "FAIL")
        return ExperimentReport(
            suite_name=self.name,
            seed=self.config.seed,
            config_digest=config_digest(self.config),
            cases=list(self.cases),
            fitted_slopes=list(self.fits),
            table=list(self.table),
            runtime=runtime,
            passed=passed,
        )

    def require_certified(self) -> None:
        """Raise CertificationError unless the pair passes certification."""
        certify(self.pair)

    def family(self, family: FamilyConfig) -> SampleFamily:
        return SampleFamily(
            kind=family.kind,
            amplitude=family.amplitude,
            roughness=family.roughness,
            seed=self.config.seed,
            count=family.count,
            amplitude_decades=family.amplitude_decades,
            eta=self.config.eta,
        )

    def record(
        self,
        name: str,
        provenance: str,
        value: float,
        bound: Optional[float] = None,
        comparison: str = "diagnostic",
        tolerance: float = 0.0,
        inputs: Optional[Dict[str, Any]] = None,
        extra: Optional[Dict[str, float]] = None,
        detail: str = "",
    ) -> CaseResult:
        """
        Record one case.

        Args:
            name: Case name, unique within the suite
            provenance: "claim: ..." for bounds taken from the theory,
                "derived: ..." for bounds computed here, "diagnostic: ..." otherwise
            value: The measured quantity compared against bound
            bound: Bound or target (None for diagnostics)
            comparison: "<=", ">=" or "diagnostic"
            tolerance: Slack allowed on the bound
            inputs: Whatever identifies the case inputs (hashed)
            extra: Further measured values stored next to value
            detail: Free-form note

        Returns:
            The recorded CaseResult
        """
        measured = {"value": float(value)}
        measured.update({key: float(item) for key, item in (extra or {}).items()})
        case = CaseResult(
            name=name,
            provenance=provenance,
            inputs_digest=inputs_digest(inputs),
            measured=measured,
            bound=None if bound is None else float(bound),
            tolerance=float(tolerance),
            comparison=comparison,
            passed=compare(float(value), bound, comparison, tolerance),
            detail=detail,
        )
        self.cases.append(case)
        level = logging.INFO if case.passed else logging.WARNING
        logger.log(level, "%s/%s: %.6g %s %s", self.name, name, value, comparison, bound)
        return case

    def fit_power_law(
        self,
        quantity: str,
        eps: Sequence[float],
        values: Sequence[float],
        target: Optional[float] = None,
        tolerance: Optional[float] = None,
        min_r_squared: float = 0.98,
    ) -> FitResult:
        """
        Least-squares fit of log(values) against log(eps).

        A fit with r^2 below 0.9 is flagged as degenerate and always fails when
        a target is given.
        """
        x = np.log(np.asarray(eps, dtype=float))
        y_raw = np.asarray(values, dtype=float)
        if np.any(y_raw <= 0) or x.size < 2:
            fit = FitResult(
                quantity=quantity, exponent=float("nan"), intercept=float("nan"),
                r_squared=0.0, target=target, tolerance=tolerance, passed=target is None,
            )
            self.fits.append(fit)
            logger.warning("Cannot fit %s: non-positive values", quantity)
            return fit

        y = np.log(y_raw)
        slope, intercept = np.polyfit(x, y, 1)
        residual = y - (slope * x + intercept)
        spread = float(np.sum((y - y.mean()) ** 2))
        r_squared = 1.0 - float(np.sum(residual**2)) / spread if spread > 0 else 1.0

        passed = True
        if target is not None:
            passed = abs(slope - target) <= (tolerance or 0.0) and r_squared >= min_r_squared
        if r_squared < 0.9:
            logger.warning("Degenerate fit for %s (r^2 = %.3f)", quantity, r_squared)
            if target is not None:
                passed = False

        fit = FitResult(
            quantity=quantity,
            exponent=float(slope),
            intercept=float(intercept),
            r_squared=r_squared,
            target=target,
            tolerance=tolerance,
            passed=passed,
        )
        self.fits.append(fit)
        logger.debug("Fit %s: exponent %.6g, r^2 %.6g", quantity, slope, r_squared)
        return fit
