"""
Certification suite for the partition-of-unity pair.

Records the certified constants of the pair under test and runs the two
negative controls (sharp indicator, zero generator), which must be rejected.
"""

import logging
from typing import Optional

from ..config import LabConfig
from ..exceptions import CertificationError
from ..partition import (
    MAX_CERT_SPACING,
    PARTITION_TOL,
    SLOPE_BOUND,
    PartitionPair,
    certify,
    indicator_pair,
    zero_theta_pair,
)
from ..reporter import ExperimentReport
from .base_suite import BaseSuite

logger = logging.getLogger(__name__)

# max |S'| of the quintic smoothstep is 30/16
QUINTIC_SLOPE = 1.875


class CertificationSuite(BaseSuite):
    name = "certify"

    def __init__(self, config: LabConfig, pair: Optional[PartitionPair] = None, h_cert: float = MAX_CERT_SPACING):
        super().__init__(config, pair)
        self.h_cert = h_cert

    def execute(self) -> None:
        inputs = {"pair": self.pair.name, "h_cert": self.h_cert}
        try:
            record = certify(self.pair, self.h_cert)
        except CertificationError as e:
            self.record(
                "certification",
                "claim: bump and partition hypotheses",
                0.0,
                bound=1.0,
                comparison=">=",
                inputs=inputs,
                extra={key: value for key, value in e.record.items()},
                detail=str(e),
            )
            return

        self.record(
            "partition_defect",
            "claim: sum of integer translates of theta equals 1",
            record.partition_defect,
            bound=PARTITION_TOL,
            comparison="<=",
            inputs=inputs,
        )
        self.record(
            "slope_bound",
            "claim: |chi_bar'| <= 2",
            record.slope_max,
            bound=SLOPE_BOUND,
            comparison="<=",
            inputs=inputs,
        )
        if self.pair.name == "quintic":
            self.record(
                "slope_closed_form",
                "derived: max |chi_bar'| = 15/8 for the quintic transition",
                abs(record.slope_max - QUINTIC_SLOPE),
                bound=1e-6,
                comparison="<=",
                inputs=inputs,
                extra={"slope_max": record.slope_max},
            )
        self.record(
            "theta_min_on_unit",
            "claim: theta([0, 1]) lies in [1/2, 1]",
            record.theta_min_on_unit,
            bound=0.5,
            comparison=">=",
            tolerance=PARTITION_TOL,
            inputs=inputs,
        )
        self.record(
            "theta_max_on_unit",
            "claim: theta([0, 1]) lies in [1/2, 1]",
            record.theta_max_on_unit,
            bound=1.0,
            comparison="<=",
            tolerance=PARTITION_TOL,
            inputs=inputs,
        )
        self.record(
            "symmetry",
            "derived: chi_bar even, theta(x) = theta(1 - x)",
            record.symmetry_defect,
            bound=PARTITION_TOL,
            comparison="<=",
            inputs=inputs,
        )

        for control in (indicator_pair(), zero_theta_pair()):
            try:
                certify(control, self.h_cert)
                rejected, reason = 0.0, "accepted"
            except CertificationError as e:
                rejected, reason = 1.0, str(e)
            self.record(
                f"rejects_{control.name}",
                "derived: negative control must fail certification",
                rejected,
                bound=1.0,
                comparison=">=",
                inputs={"pair": control.name, "h_cert": self.h_cert},
                detail=reason,
            )


def suite_certification(config: LabConfig, pair: Optional[PartitionPair] = None) -> ExperimentReport:
    """Certify the partition pair and its negative controls."""
    return CertificationSuite(config, pair).run()
