"""
Scaling laws of the modified nonlinearity F_eps(u) = chi_eps(u)^2.

For each epsilon the suite estimates the size delta_0(eps) of F_eps and its
Lipschitz ratio delta_1(eps) as sampled maxima, then fits both against eps
on a log-log scale. The population is fixed: every shape of the families is
taken at every amplitude of a geometric ladder running from eps_min / 8 to
128 eps_max, so the maxima only shrink with eps when the cut-off saturates.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import MIN_EPSILON_COUNT, MIN_EPSILON_SPAN, FamilyConfig, LabConfig
from ..cutoff import CutoffConfig
from ..exceptions import ConfigurationError
from ..grid import GridFunction
from ..nonlin import f_eps, product_lipschitz_bound
from ..norms import WeightedNormSpec, uniform_norm, weighted_norm
from ..partition import PartitionPair
from ..reporter import ExperimentReport
from .base_suite import BaseSuite

logger = logging.getLogger(__name__)

# Amplitude ladder eps_min / LADDER_BELOW * 2^(k / RUNGS_PER_OCTAVE) up to LADDER_ABOVE * eps_max.
LADDER_BELOW = 8.0
LADDER_ABOVE = 128.0
RUNGS_PER_OCTAVE = 2
# Perturbations are this fraction of eps_min, small against every epsilon.
PERTURBATION = 0.01
CONSISTENCY_SPREAD = 1.5


def amplitude_ladder(eps_min: float, eps_max: float) -> List[float]:
    """Geometric amplitudes covering [eps_min / 8, 128 eps_max]."""
    base = eps_min / LADDER_BELOW
    top = eps_max * LADDER_ABOVE * (1.0 + 1e-12)
    rungs = []
    k = 0
    while True:
        octave, step = divmod(k, RUNGS_PER_OCTAVE)
        # powers of two kept separate so that rung / eps is exact for eps = 2^-j
        amplitude = base * 2.0**octave * 2.0 ** (step / RUNGS_PER_OCTAVE)
        if amplitude > top:
            return rungs
        rungs.append(amplitude)
        k += 1


class ScalingSuite(BaseSuite):
    name = "h2"

    def __init__(
        self,
        config: LabConfig,
        eps_list: Optional[Sequence[float]] = None,
        families: Optional[Sequence[FamilyConfig]] = None,
        eta: Optional[float] = None,
        pair: Optional[PartitionPair] = None,
    ):
        super().__init__(config, pair)
        self.eps_list = sorted(config.epsilon_list if eps_list is None else eps_list, reverse=True)
        if (
            len(self.eps_list) < MIN_EPSILON_COUNT
            or self.eps_list[-1] <= 0
            or self.eps_list[0] / self.eps_list[-1] < MIN_EPSILON_SPAN
        ):
            raise ConfigurationError(
                f"Scaling fits need at least {MIN_EPSILON_COUNT} positive epsilons with max/min >= "
                f"{MIN_EPSILON_SPAN:g}, got {self.eps_list}"
            )
        self.families = list(config.families if families is None else families)
        if not self.families:
            raise ConfigurationError("Scaling suite needs at least one sample family")
        self.norm = WeightedNormSpec(config.eta if eta is None else eta, config.eta_max)
        self.ladder = amplitude_ladder(self.eps_list[-1], self.eps_list[0])

    def shapes(self) -> List[Tuple[GridFunction, GridFunction]]:
        """
        Unit shapes and their perturbations, shared by every epsilon.

        Each shape has uniform norm 1; the perturbation d is absolute, with
        max |d| = PERTURBATION * eps_min.
        """
        per_family = math.ceil(self.config.settings.scaling_shapes / len(self.families))
        perturbation = PERTURBATION * self.eps_list[-1]
        result = []
        for spec in self.families:
            family = self.family(spec)
            family.count = per_family
            for u, v in family.pairs(self.config.L, self.config.h, perturbation):
                result.append((u / uniform_norm(u), v - u))
        return result[: self.config.settings.scaling_shapes]

    def execute(self) -> None:
        shapes = self.shapes()
        census = len(shapes) * len(self.ladder)
        logger.info(
            "Scaling suite: %d shapes x %d amplitudes = %d samples per epsilon",
            len(shapes), len(self.ladder), census,
        )

        delta0, delta1, product = [], [], []
        for eps in self.eps_list:
            cfg = CutoffConfig(pair=self.pair, epsilon=eps)
            size, lip, prod, argmax = 0.0, 0.0, 0.0, 0.0
            nearest = min(self.ladder, key=lambda a: abs(math.log(a / eps)))
            for shape, d in shapes:
                for amplitude in self.ladder:
                    u = shape * amplitude
                    v = u + d
                    fu, fv = f_eps(u, cfg), f_eps(v, cfg)
                    value = weighted_norm(fu, self.norm)
                    if value > size:
                        size, argmax = value, amplitude
                    difference = weighted_norm(fu - fv, self.norm)
                    lip = max(lip, difference / weighted_norm(d, self.norm))
                    if amplitude == nearest:
                        bound = product_lipschitz_bound(u, v, cfg, self.norm)
                        if bound > 0.0:
                            prod = max(prod, difference / bound)
            delta0.append(size)
            delta1.append(lip)
            product.append(prod)
            self.table.append({
                "epsilon": eps,
                "delta0": size,
                "delta1": lip,
                "c1": size / (lip * eps) if lip > 0 else float("nan"),
                "argmax_amplitude_ratio": argmax / eps,
                "product_constant": prod,
                "samples": float(census),
            })
            logger.info("eps=%g: delta0=%.6g delta1=%.6g", eps, size, lip)

        fit0 = self.fit_power_law("delta0", self.eps_list, delta0, target=2.0, tolerance=0.1)
        fit1 = self.fit_power_law("delta1", self.eps_list, delta1, target=1.0, tolerance=0.2)
        inputs = {
            "eps": self.eps_list,
            "ladder": self.ladder,
            "families": [vars(spec) for spec in self.families],
            "shapes": self.config.settings.scaling_shapes,
        }
        for fit in (fit0, fit1):
            self.record(
                f"r_squared_{fit.quantity}",
                "derived: power-law fit must not be degenerate",
                fit.r_squared,
                bound=0.9,
                comparison=">=",
                inputs=inputs,
                extra={"exponent": fit.exponent},
            )

        self.record(
            "census",
            "derived: maxima are taken over at least 200 samples per epsilon",
            census,
            bound=200,
            comparison=">=",
            inputs=inputs,
        )

        consistency = [row["c1"] for row in self.table]
        spread = max(consistency) / min(consistency) if min(consistency) > 0 else float("inf")
        self.record(
            "consistency_c1",
            "claim: the size bound follows from the Lipschitz bound and F_eps(0) = 0",
            spread,
            bound=CONSISTENCY_SPREAD,
            comparison="<=",
            inputs=inputs,
            extra={"c1_min": min(consistency), "c1_max": max(consistency)},
            detail="value is max/min over eps of delta0 / (delta1 * eps)",
        )
        self.record(
            "product_constant",
            "diagnostic: |F_eps(u) - F_eps(v)| relative to the product estimate",
            float(np.max(product)),
            inputs=inputs,
            extra={"pairs_per_eps": float(len(shapes))},
        )


def suite_h2_scaling(
    config: LabConfig,
    eps_list: Optional[Sequence[float]] = None,
    families: Optional[Sequence[FamilyConfig]] = None,
    eta: Optional[float] = None,
    pair: Optional[PartitionPair] = None,
) -> ExperimentReport:
    """Fit delta_0(eps) and delta_1(eps) over the epsilon list."""
    return ScalingSuite(config, eps_list, families, eta, pair).run()
