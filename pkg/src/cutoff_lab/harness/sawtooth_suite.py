"""
Sawtooth contrast between the pointwise cutoff g and F_eps.

For sawtooth pairs of decreasing inverse slope eps_saw the Lipschitz ratio of
g grows like 2/eps_saw, while the ratio of F_eps (eps = 1) stays bounded.
Ratios are measured with H1 norms on the interior window [4h, 1 - 4h], where
v - u is the constant delta'; whole-line weighted ratios are reported next to
them.
"""

import logging
from typing import List, Optional, Sequence

from ..config import LabConfig
from ..cutoff import CutoffConfig
from ..nonlin import (
    PointwiseCutoffSpec,
    SawtoothSpec,
    f_eps,
    interior_window,
    lipschitz_ratio,
    pointwise_cutoff_g,
    sawtooth,
    sawtooth_grid,
)
from ..norms import WeightedNormSpec
from ..partition import PartitionPair
from ..reporter import ExperimentReport
from .base_suite import BaseSuite

logger = logging.getLogger(__name__)

LOWER_BOUND_FACTOR = 1.9
F_EPS_SPREAD = 2.0
# ratios below this are treated as zero
F_EPS_FLOOR = 1e-9


class SawtoothSuite(BaseSuite):
    name = "sawtooth"

    def __init__(
        self,
        config: LabConfig,
        specs: Optional[Sequence[SawtoothSpec]] = None,
        eta: Optional[float] = None,
        pair: Optional[PartitionPair] = None,
    ):
        super().__init__(config, pair)
        saw = config.sawtooth
        if specs is None:
            specs = [SawtoothSpec(eps, saw.delta, saw.delta_prime) for eps in saw.eps_saw_list]
        # coarsest sawtooth first
        self.specs: List[SawtoothSpec] = sorted(specs, key=lambda spec: spec.eps_saw, reverse=True)
        self.norm = WeightedNormSpec(config.eta if eta is None else eta, config.eta_max)

    def execute(self) -> None:
        saw = self.config.sawtooth
        cfg = CutoffConfig(pair=self.pair, epsilon=1.0)
        ratios_g, ratios_f = [], []

        for spec in self.specs:
            L, h = sawtooth_grid(spec, saw.points_per_half_tooth, saw.L)
            u, v = sawtooth(spec, L, h)
            window = interior_window(h)
            g_spec = PointwiseCutoffSpec(delta=spec.delta)

            def g(w):
                return pointwise_cutoff_g(w, g_spec)

            def f(w):
                return f_eps(w, cfg)

            ratio_g = lipschitz_ratio(g, u, v, self.norm, window)
            ratio_f = lipschitz_ratio(f, u, v, self.norm, window)
            weighted_g = lipschitz_ratio(g, u, v, self.norm)
            weighted_f = lipschitz_ratio(f, u, v, self.norm)
            ratios_g.append(ratio_g)
            ratios_f.append(ratio_f)
            logger.info("eps_saw=%g (1/h=%d): ratio_g=%.6g ratio_f=%.6g", spec.eps_saw, u.resolution, ratio_g, ratio_f)

            self.table.append({
                "eps_saw": spec.eps_saw,
                "inverse_eps_saw": 1.0 / spec.eps_saw,
                "ratio_g": ratio_g,
                "ratio_f_eps": ratio_f,
                "weighted_ratio_g": weighted_g,
                "weighted_ratio_f_eps": weighted_f,
                "h": h,
            })

            inputs = {"eps_saw": spec.eps_saw, "delta": spec.delta, "delta_prime": spec.delta_prime, "h": h}
            self.record(
                f"g_lower_bound_eps_saw{spec.eps_saw:g}",
                "claim: the pointwise cutoff has Lipschitz constant at least 2/eps_saw",
                ratio_g,
                bound=LOWER_BOUND_FACTOR / spec.eps_saw,
                comparison=">=",
                inputs=inputs,
                extra={"weighted_ratio": weighted_g, "teeth": float(spec.tooth_count)},
            )
            self.record(
                f"f_eps_bounded_eps_saw{spec.eps_saw:g}",
                "claim: F_eps stays Lipschitz on rough pairs",
                ratio_f,
                bound=F_EPS_SPREAD * ratios_f[0],
                comparison="<=",
                tolerance=F_EPS_FLOOR,
                inputs=inputs,
                extra={"weighted_ratio": weighted_f, "reference": ratios_f[0]},
                detail="bound is twice the ratio at the coarsest sawtooth",
            )

        for previous, current, spec_prev, spec in zip(ratios_g, ratios_g[1:], self.specs, self.specs[1:]):
            self.record(
                f"g_growth_{spec_prev.eps_saw:g}_to_{spec.eps_saw:g}",
                "diagnostic: growth of the g ratio, linear in 1/eps_saw",
                current / previous,
                extra={"expected": spec_prev.eps_saw / spec.eps_saw},
            )


def suite_sawtooth_contrast(
    specs: Optional[Sequence[SawtoothSpec]],
    config: LabConfig,
    eta: Optional[float] = None,
    pair: Optional[PartitionPair] = None,
) -> ExperimentReport:
    """Compare g and F_eps on sawtooth pairs; specs default to the configured list."""
    return SawtoothSuite(config, specs, eta, pair).run()
