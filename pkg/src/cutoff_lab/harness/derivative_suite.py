"""
Derivative checks for F(u) = chi(u)^2.

The candidate derivative L(u) v = 2 chi(u) chi_1(u) v is tested against
finite differences of F (Gateaux remainder), at the origin, for boundedness
of chi_1(u) as an operator, and for continuity in u along a shrinking
perturbation sequence.
"""

import logging
from typing import List, Optional

import numpy as np

from ..config import FamilyConfig, LabConfig
from ..cutoff import CutoffConfig, chi_one, chi_one_operator_estimate, derivative_candidate_L, rho_field
from ..exceptions import ConfigurationError
from ..grid import GridFunction, sample, zeros
from ..nonlin import f_eps
from ..norms import WeightedNormSpec, weighted_norm
from ..partition import PartitionPair
from ..reporter import ExperimentReport
from .base_suite import BaseSuite
from .samples import SampleFamily

logger = logging.getLogger(__name__)

NULL_TOL = 1e-12
GATEAUX_FACTOR = 0.1
CONJUGATION_PAIRS = 5
CONJUGATION_EPS = 0.25
RHO_RANGE_MAX = 3.0
CHI_ONE_SPREAD_TARGET = 1.1
# candidates drawn per chi_1 sample before filtering on the rho range
CHI_ONE_CANDIDATES = 4


def default_u_family() -> FamilyConfig:
    """Base points from deep inside the small ball up to well past the cut."""
    return FamilyConfig("smooth-random", amplitude=0.05, roughness=0.1, count=20, amplitude_decades=2.0)


def default_v_family() -> FamilyConfig:
    return FamilyConfig("smooth-random", amplitude=1.0, roughness=1.0, count=20)


class DerivativeSuite(BaseSuite):
    name = "derivative"

    def __init__(
        self,
        config: LabConfig,
        u_family: Optional[FamilyConfig] = None,
        v_family: Optional[FamilyConfig] = None,
        zeta: Optional[float] = None,
        eta: Optional[float] = None,
        pair: Optional[PartitionPair] = None,
    ):
        super().__init__(config, pair)
        self.zeta = config.zeta if zeta is None else zeta
        eta = config.eta if eta is None else eta
        if not 0.0 < self.zeta < eta:
            raise ConfigurationError(f"Derivative checks need 0 < zeta < eta, got zeta={self.zeta}, eta={eta}")
        self.norm = WeightedNormSpec(eta, config.eta_max)
        self.u_family = u_family or default_u_family()
        self.v_family = v_family or default_v_family()
        self.cfg = CutoffConfig(pair=self.pair, epsilon=1.0)

    def _draw(self, spec: FamilyConfig, count: int, stream_seed: int = 0) -> List[GridFunction]:
        family = self.family(spec)
        family.seed = self.config.seed + stream_seed
        family.count = count
        return family.generate(self.config.L, self.config.h)

    def execute(self) -> None:
        s = self.config.settings
        count = max(s.gateaux_pairs, s.null_samples, s.chi_one_samples, s.chi_one_directions)
        us = self._draw(self.u_family, count)
        vs = self._draw(self.v_family, count, stream_seed=1)

        self.check_null(vs[: s.null_samples])
        self.check_gateaux(us[: s.gateaux_pairs], vs[: s.gateaux_pairs])
        self.check_conjugated(us[:CONJUGATION_PAIRS], vs[:CONJUGATION_PAIRS])
        candidates = self._draw(self.u_family, CHI_ONE_CANDIDATES * s.chi_one_samples, stream_seed=2)
        self.check_chi_one(candidates, vs[: s.chi_one_directions])
        self.check_continuity(vs[0])

    def check_null(self, directions: List[GridFunction]) -> None:
        origin = zeros(self.config.L, self.config.h)
        worst = max(weighted_norm(derivative_candidate_L(origin, v, self.cfg), self.norm) for v in directions)
        self.record(
            "null_derivative",
            "claim: L(0) = 0",
            worst,
            bound=NULL_TOL,
            comparison="<=",
            inputs={"directions": directions},
        )

        identity = max(
            weighted_norm(chi_one(origin, v, self.cfg) - v, self.norm) / weighted_norm(v, self.norm)
            for v in directions
        )
        self.record(
            "chi_one_at_origin",
            "derived: chi_1(0) is the identity",
            identity,
            bound=NULL_TOL,
            comparison="<=",
            inputs={"directions": directions},
        )

    def remainders(self, u: GridFunction, v: GridFunction, cfg: CutoffConfig) -> List[float]:
        """r(tau) / tau for every configured tau."""
        base = f_eps(u, cfg)
        linear = derivative_candidate_L(u, v, cfg)
        result = []
        for tau in self.config.settings.taus:
            remainder = f_eps(u + v * tau, cfg) - base - linear * tau
            result.append(weighted_norm(remainder, self.norm) / tau)
        return result

    def check_gateaux(self, us: List[GridFunction], vs: List[GridFunction]) -> None:
        taus = self.config.settings.taus
        worst = 0.0
        for index, (u, v) in enumerate(zip(us, vs)):
            q = self.remainders(u, v, self.cfg)
            decay = q[-1] / q[0] if q[0] > 0 else 0.0
            worst = max(worst, decay)
            self.table.append({"pair": float(index), "amplitude": u.max_abs(),
                               **{f"q_tau{tau:g}": value for tau, value in zip(taus, q)}})
        self.record(
            "gateaux_remainder",
            "claim: F(u + tau v) - F(u) - tau L(u) v = o(tau)",
            worst,
            bound=GATEAUX_FACTOR,
            comparison="<=",
            inputs={"u": us, "v": vs, "taus": taus},
            extra={"pairs": len(us)},
            detail="value is the largest q(tau_min) / q(tau_max), q(tau) = r(tau) / tau",
        )

    def check_conjugated(self, us: List[GridFunction], vs: List[GridFunction]) -> None:
        cfg = CutoffConfig(pair=self.pair, epsilon=CONJUGATION_EPS)
        worst = 0.0
        for u, v in zip(us, vs):
            q = self.remainders(u * CONJUGATION_EPS, v, cfg)
            worst = max(worst, q[-1] / q[0] if q[0] > 0 else 0.0)
        self.record(
            "gateaux_remainder_scaled",
            "derived: the conjugated candidate differentiates F_eps",
            worst,
            bound=GATEAUX_FACTOR,
            comparison="<=",
            inputs={"eps": CONJUGATION_EPS, "u": us, "v": vs},
        )

    def outside_direction(self) -> GridFunction:
        """A bump on [L - 2.5, L - 0.5], clear of the support of the random samples."""
        start = self.config.L - 2.5

        def bump(x: np.ndarray) -> np.ndarray:
            inside = (x >= start) & (x <= start + 2.0)
            return np.where(inside, np.sin(0.5 * np.pi * (x - start)) ** 2, 0.0)

        return sample(bump, self.config.L, self.config.h)

    def select_chi_one_samples(self, candidates: List[GridFunction]) -> List[GridFunction]:
        """The first chi_one_samples candidates whose rho_y all lie in [0, RHO_RANGE_MAX]."""
        kept = [u for u in candidates if float(np.max(rho_field(u, self.cfg).values)) <= RHO_RANGE_MAX]
        return kept[: self.config.settings.chi_one_samples]

    def check_chi_one(self, candidates: List[GridFunction], directions: List[GridFunction]) -> None:
        us = self.select_chi_one_samples(candidates)
        directions = list(directions) + [self.outside_direction()]
        if us:
            estimates = np.array([chi_one_operator_estimate(u, directions, self.cfg, self.norm) for u in us])
        else:
            logger.warning("No u with rho_y <= %g among %d candidates", RHO_RANGE_MAX, len(candidates))
            estimates = np.array([float("nan")])
        inputs = {"u": us, "directions": directions}

        self.record(
            "chi_one_bounded",
            "claim: the operator norm of chi_1(u) is bounded independently of u",
            float(estimates.max()),
            bound=self.config.settings.chi_one_ceiling,
            comparison="<=",
            inputs=inputs,
            extra={"min": float(estimates.min()), "samples": len(us)},
        )
        self.record(
            "chi_one_spread",
            "diagnostic: max/min of the chi_1(u) estimates over u with rho_y in [0, 3]",
            float(estimates.max() / estimates.min()),
            bound=CHI_ONE_SPREAD_TARGET,
            inputs=inputs,
            detail=f"target {CHI_ONE_SPREAD_TARGET:g} is reported, not asserted",
        )

    def check_continuity(self, v: GridFunction) -> None:
        base = SampleFamily("smooth-random", amplitude=0.6, roughness=0.6, seed=self.config.seed, count=2)
        u, d = base.generate(self.config.L, self.config.h)
        reference = derivative_candidate_L(u, v, self.cfg)
        zeta = WeightedNormSpec(self.zeta, self.norm.eta_max)

        steps = self.config.settings.holder_steps
        sizes, differences = [], []
        for step in steps:
            u2 = u + d * step
            sizes.append(weighted_norm(u2 - u, zeta))
            differences.append(weighted_norm(derivative_candidate_L(u2, v, self.cfg) - reference, self.norm))

        decrease = max(
            (later / earlier if earlier > 0 else 0.0) for earlier, later in zip(differences, differences[1:])
        )
        self.record(
            "continuity",
            "claim: L is continuous from the zeta-weighted space",
            decrease,
            bound=1.0,
            comparison="<=",
            inputs={"u": u, "d": d, "v": v, "steps": steps},
            extra={f"difference_step{step:g}": value for step, value in zip(steps, differences)},
            detail="value is the largest ratio of consecutive differences",
        )
        self.fit_power_law("holder", sizes, differences)


def suite_derivative(
    u_family: Optional[FamilyConfig],
    v_family: Optional[FamilyConfig],
    config: LabConfig,
    zeta: Optional[float] = None,
    eta: Optional[float] = None,
    pair: Optional[PartitionPair] = None,
) -> ExperimentReport:
    """Gateaux, null, boundedness and continuity checks of L(u)."""
    return DerivativeSuite(config, u_family, v_family, zeta, eta, pair).run()
