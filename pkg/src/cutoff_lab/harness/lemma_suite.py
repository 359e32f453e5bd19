"""
Property suite for the cut-off operator.

Checks, on seeded samples, that the cut-off commutes with grid translations,
is the identity on the small ball, maps everything into the ball of radius 8
epsilon in the uniformly local norm, is well defined on exponentially growing
functions, and keeps its Lipschitz ratio bounded when the samples get rough
(while the pointwise cutoff does not).
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..config import FamilyConfig, LabConfig
from ..cutoff import CutoffConfig, apply_cutoff, local_bound_profile, multiplier, rho_field
from ..grid import GridFunction, sample, translate
from ..nonlin import PointwiseCutoffSpec, lipschitz_ratio, pointwise_cutoff_g, quadratic
from ..norms import WeightedNormSpec, estimate_product_constant, uniform_norm, weight_sum, weighted_norm
from ..partition import PartitionPair
from ..reporter import ExperimentReport
from .base_suite import BaseSuite
from .samples import SampleFamily

logger = logging.getLogger(__name__)

EQUIVARIANCE_TOL = 1e-8
SMALL_BALL_TOL = 1e-10
SMALL_BALL_RADIUS = 0.3
UNIFORM_BOUND = 8.0
RHO_FACTOR = 3.0
LIPSCHITZ_PERTURBATION = 0.05


class LemmaSuite(BaseSuite):
    name = "lemma"

    def __init__(
        self,
        config: LabConfig,
        families: Optional[Sequence[FamilyConfig]] = None,
        eta: Optional[float] = None,
        pair: Optional[PartitionPair] = None,
    ):
        super().__init__(config, pair)
        self.families = list(config.families if families is None else families)
        self.norm = WeightedNormSpec(config.eta if eta is None else eta, config.eta_max)

    def cutoff(self, epsilon: float = 1.0) -> CutoffConfig:
        return CutoffConfig(pair=self.pair, epsilon=epsilon)

    def execute(self) -> None:
        self.require_certified()
        self.check_equivariance()
        self.check_small_ball()
        self.check_uniform_bound()
        self.check_rho_bound()
        self.check_exp_growth()
        self.check_roughness_contrast()
        self.check_family_lipschitz()
        self.check_product_estimate()

    def check_equivariance(self) -> None:
        s = self.config.settings
        family = SampleFamily("rough-random", amplitude=1.5, roughness=3.0, seed=self.config.seed,
                              count=s.equivariance_samples)
        samples = family.generate(self.config.L, self.config.h)
        cfg = self.cutoff()
        images = [apply_cutoff(u, cfg) for u in samples]

        for k in s.shifts:
            worst = 0.0
            for u, image in zip(samples, images):
                shifted_first = apply_cutoff(translate(u, k), cfg)
                shifted_after = translate(image, k)
                scale = weighted_norm(image, self.norm)
                if scale > 0.0:
                    worst = max(worst, weighted_norm(shifted_first - shifted_after, self.norm) / scale)
            self.record(
                f"equivariance_k{k}",
                "claim: the cut-off commutes with translations",
                worst,
                bound=EQUIVARIANCE_TOL,
                comparison="<=",
                inputs={"family": "rough-random", "count": len(samples), "k": k},
                extra={"samples": len(samples)},
            )

    def check_small_ball(self) -> None:
        s = self.config.settings
        for eps in s.scale_list:
            family = SampleFamily("small-ball", amplitude=SMALL_BALL_RADIUS * eps, seed=self.config.seed,
                                  count=s.small_ball_samples)
            cfg = self.cutoff(eps)
            worst = 0.0
            largest = 0.0
            for u in family.generate(self.config.L, self.config.h):
                largest = max(largest, uniform_norm(u))
                worst = max(worst, (apply_cutoff(u, cfg) - u).max_abs())
            self.record(
                f"small_ball_eps{eps:g}",
                "claim: the scaled cut-off is the identity below radius epsilon/3",
                worst,
                bound=SMALL_BALL_TOL,
                comparison="<=",
                inputs={"family": "small-ball", "eps": eps, "count": s.small_ball_samples},
                extra={"max_uniform_norm": largest, "radius": SMALL_BALL_RADIUS * eps},
            )

    def _bound_samples(self, eps: float) -> List[GridFunction]:
        count = self.config.settings.uniform_bound_samples
        smooth = SampleFamily("smooth-random", amplitude=eps, roughness=2.0 * eps, seed=self.config.seed,
                              count=count - count // 2, amplitude_decades=2.0)
        rough = SampleFamily("rough-random", amplitude=eps, roughness=20.0 * eps, seed=self.config.seed,
                             count=count // 2, amplitude_decades=2.0)
        L, h = self.config.L, self.config.h
        return smooth.generate(L, h) + rough.generate(L, h)

    def check_uniform_bound(self) -> None:
        for eps in self.config.settings.scale_list:
            cfg = self.cutoff(eps)
            samples = self._bound_samples(eps)
            norms = np.array([uniform_norm(apply_cutoff(u, cfg)) for u in samples])
            self.record(
                f"uniform_bound_eps{eps:g}",
                "claim: uniform norm of the scaled cut-off is at most 8 epsilon",
                float(norms.max() / eps),
                bound=UNIFORM_BOUND,
                comparison="<=",
                inputs={"eps": eps, "samples": samples},
                extra={"violations": float(np.sum(norms > UNIFORM_BOUND * eps)), "samples": len(samples)},
                detail="value is max uniform_norm / epsilon",
            )

        # multiplier range on the unscaled samples
        cfg = self.cutoff()
        low, high = 1.0, 0.0
        for u in self._bound_samples(1.0):
            w = multiplier(u, cfg).samples
            low, high = min(low, float(w.min())), max(high, float(w.max()))
        self.record(
            "multiplier_lower",
            "claim: 0 <= w <= 1",
            low,
            bound=0.0,
            comparison=">=",
            tolerance=1e-12,
            inputs={"eps": 1.0, "count": self.config.settings.uniform_bound_samples},
        )
        self.record(
            "multiplier_upper",
            "claim: 0 <= w <= 1",
            high,
            bound=1.0,
            comparison="<=",
            tolerance=1e-12,
            inputs={"eps": 1.0, "count": self.config.settings.uniform_bound_samples},
        )

    def check_rho_bound(self) -> None:
        family = SampleFamily("smooth-random", amplitude=1.0, roughness=1.0, seed=self.config.seed,
                              count=self.config.settings.rho_bound_samples)
        cfg = self.cutoff()
        worst = 0.0
        for u in family.generate(self.config.L, self.config.h):
            worst = max(worst, float(rho_field(u, cfg).values.max()) / uniform_norm(u))
        self.record(
            "rho_vs_uniform_norm",
            "claim: windowed norms are at most 3 times the uniform norm",
            worst,
            bound=RHO_FACTOR,
            comparison="<=",
            inputs={"family": "smooth-random", "count": family.count},
        )

    def check_exp_growth(self) -> None:
        eta = self.norm.eta
        amplitude = self.config.settings.growth_amplitude
        cfg = self.cutoff()
        half = max(1, self.config.L // 2)
        lengths = [half, self.config.L, 2 * self.config.L]

        chi_norms, square_norms, local_peaks = [], [], []
        for L in lengths:
            u = sample({"kind": "exp_growth", "eta": eta, "amplitude": amplitude}, L, self.config.h)
            chi_norms.append(weighted_norm(apply_cutoff(u, cfg), self.norm))
            square_norms.append(weighted_norm(quadratic(u), self.norm))
            local_peaks.append(float(local_bound_profile(u, cfg, self.norm).max()))

        inputs = {"amplitude": amplitude, "eta": eta, "lengths": lengths}
        self.record(
            "exp_growth_chi_stable",
            "claim: the cut-off is defined on exponentially growing functions",
            abs(chi_norms[2] - chi_norms[1]) / chi_norms[1],
            bound=1e-6,
            comparison="<=",
            inputs=inputs,
            extra={f"chi_norm_L{L}": value for L, value in zip(lengths, chi_norms)},
        )
        self.record(
            "exp_growth_square_grows",
            "claim: u -> u^2 is not defined on exponentially growing functions",
            square_norms[2] / square_norms[0],
            bound=1.3,
            comparison=">=",
            inputs=inputs,
            extra={f"square_norm_L{L}": value for L, value in zip(lengths, square_norms)},
        )
        self.record(
            "exp_growth_local_profile",
            "diagnostic: largest weighted window norm of the cut-off image",
            max(local_peaks),
            inputs=inputs,
        )

    def _max_ratios(self, roughness: float) -> Tuple[float, float]:
        s = self.config.settings
        family = SampleFamily("rough-random", amplitude=s.rough_amplitude, roughness=roughness,
                              seed=self.config.seed, count=s.lipschitz_pairs)
        cfg = self.cutoff()
        g_spec = PointwiseCutoffSpec(delta=2.0 * s.rough_amplitude)
        chi_ratio, g_ratio = 0.0, 0.0
        for u, v in family.pairs(self.config.L, self.config.h, LIPSCHITZ_PERTURBATION):
            chi_ratio = max(chi_ratio, lipschitz_ratio(lambda f: apply_cutoff(f, cfg), u, v, self.norm))
            g_ratio = max(g_ratio, lipschitz_ratio(lambda f: pointwise_cutoff_g(f, g_spec), u, v, self.norm))
        return chi_ratio, g_ratio

    def check_roughness_contrast(self) -> None:
        levels = sorted(self.config.settings.roughness_levels)
        smooth_level, rough_level = levels[0], levels[-1]
        chi_smooth, g_smooth = self._max_ratios(smooth_level)
        chi_rough, g_rough = self._max_ratios(rough_level)
        inputs = {
            "amplitude": self.config.settings.rough_amplitude,
            "levels": [smooth_level, rough_level],
            "pairs": self.config.settings.lipschitz_pairs,
        }

        self.record(
            "lipschitz_roughness_chi",
            "claim: the Lipschitz ratio of the cut-off does not grow with roughness",
            chi_rough / chi_smooth if chi_smooth > 0 else 0.0,
            bound=2.0,
            comparison="<=",
            inputs=inputs,
            extra={"ratio_smooth": chi_smooth, "ratio_rough": chi_rough},
            detail="sampled maxima, not suprema",
        )
        self.record(
            "lipschitz_roughness_g",
            "claim: the pointwise cutoff's Lipschitz ratio grows with roughness",
            g_rough / g_smooth,
            bound=50.0,
            comparison=">=",
            inputs=inputs,
            extra={"ratio_smooth": g_smooth, "ratio_rough": g_rough},
            detail="sampled maxima, not suprema",
        )

    def check_family_lipschitz(self) -> None:
        cfg = self.cutoff()
        count = self.config.settings.lipschitz_pairs
        for spec in self.families:
            family = self.family(spec)
            family.count = min(family.count, count)
            ratios = [
                lipschitz_ratio(lambda f: apply_cutoff(f, cfg), u, v, self.norm)
                for u, v in family.pairs(self.config.L, self.config.h, LIPSCHITZ_PERTURBATION * spec.amplitude)
            ]
            self.record(
                f"lipschitz_{spec.kind}",
                "diagnostic: sampled Lipschitz ratio of the cut-off",
                max(ratios),
                inputs={"family": spec.kind, "amplitude": spec.amplitude, "count": family.count},
                extra={"mean": float(np.mean(ratios)), "pairs": len(ratios)},
            )

    def check_product_estimate(self) -> None:
        family = SampleFamily("smooth-random", amplitude=1.0, roughness=2.0, seed=self.config.seed,
                              count=2 * self.config.settings.product_pairs, amplitude_decades=1.0)
        samples = family.generate(self.config.L, self.config.h)
        pairs = list(zip(samples[::2], samples[1::2]))
        constant = estimate_product_constant(pairs, self.norm)
        self.record(
            "product_constant",
            "diagnostic: measured constant of |uv| <= C |u|_u |v|_{-eta}",
            constant,
            inputs={"family": "smooth-random", "pairs": len(pairs)},
            extra={"pairs": len(pairs)},
        )

        inclusion = np.sqrt(weight_sum(self.config.L, self.norm.eta))
        worst = max(weighted_norm(u, self.norm) / (uniform_norm(u) * inclusion) for u in samples)
        self.record(
            "inclusion_bound",
            "derived: weighted norm <= uniform norm * sqrt(sum of weights)",
            worst,
            bound=1.0,
            comparison="<=",
            tolerance=1e-12,
            inputs={"family": "smooth-random", "count": len(samples)},
        )


def suite_lemma_properties(
    config: LabConfig,
    families: Optional[Sequence[FamilyConfig]] = None,
    eta: Optional[float] = None,
    pair: Optional[PartitionPair] = None,
) -> ExperimentReport:
    """
    Run the property checks of the cut-off.

    Raises:
        CertificationError: if the partition pair is not certified
    """
    return LemmaSuite(config, families, eta, pair).run()
