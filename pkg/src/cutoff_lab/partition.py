"""
Smooth cut bump and partition-of-unity generator.

Both profiles are built from the quintic smoothstep S(t) = 6t^5 - 15t^4 + 10t^3
(C2, S(0) = 0, S(1) = 1, S'(t) = 30 t^2 (1 - t)^2 with maximum 15/8 at t = 1/2):

- chi_bar(x) = 1 for |x| <= 1, 0 for |x| >= 2, 1 - S(|x| - 1) in between;
- theta(x) = R(x) - R(x - 1) with the ramp R(x) = S(2 (x + 1/4)) clipped to [0, 1].

The integer translates of theta telescope to one, and theta vanishes outside
(-1/4, 5/4).
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from .exceptions import CertificationError, ConfigurationError

logger = logging.getLogger(__name__)

ScalarFn = Callable[[np.ndarray], np.ndarray]

SLOPE_BOUND = 2.0
PARTITION_TOL = 1e-12
MAX_CERT_SPACING = 1e-4


def smoothstep(t: np.ndarray) -> np.ndarray:
    """Quintic smoothstep, clipped to [0, 1] outside the unit interval."""
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def smoothstep_prime(t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = (t > 0.0) & (t < 1.0)
    return np.where(inside, 30.0 * t * t * (1.0 - t) ** 2, 0.0)


def smooth_transition(t: np.ndarray) -> np.ndarray:
    """1 on [0, 1], 0 on [2, inf), 1 - S(t - 1) in between; nonincreasing."""
    return 1.0 - smoothstep(np.asarray(t, dtype=float) - 1.0)


def build_chi_bar() -> ScalarFn:
    """Smooth version of the characteristic function of [-1, 1]."""

    def chi_bar(x: np.ndarray) -> np.ndarray:
        return smooth_transition(np.abs(np.asarray(x, dtype=float)))

    return chi_bar


def _chi_bar_prime(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return -np.sign(x) * smoothstep_prime(np.abs(x) - 1.0)


def _ramp(x: np.ndarray) -> np.ndarray:
    return smoothstep(2.0 * (np.asarray(x, dtype=float) + 0.25))


def _ramp_prime(x: np.ndarray) -> np.ndarray:
    return 2.0 * smoothstep_prime(2.0 * (np.asarray(x, dtype=float) + 0.25))


def build_theta() -> ScalarFn:
    """Generator of the Z-invariant partition of unity."""

    def theta(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return _ramp(x) - _ramp(x - 1.0)

    return theta


def _theta_prime(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return _ramp_prime(x) - _ramp_prime(x - 1.0)


@dataclass(frozen=True)
class PartitionPair:
    """The bump chi_bar and the generator theta, with derivatives in closed form."""

    chi_bar: ScalarFn
    theta: ScalarFn
    chi_bar_prime: ScalarFn
    theta_prime: ScalarFn
    chi_bar_slope_max: float
    theta_support: Tuple[float, float] = (-0.25, 1.25)
    name: str = "quintic"


def build_partition_pair() -> PartitionPair:
    """Default pair: quintic bump and quintic-ramp generator."""
    dense = np.linspace(-3.0, 3.0, 60001)
    slope = float(np.max(np.abs(_chi_bar_prime(dense))))
    return PartitionPair(
        chi_bar=build_chi_bar(),
        theta=build_theta(),
        chi_bar_prime=_chi_bar_prime,
        theta_prime=_theta_prime,
        chi_bar_slope_max=slope,
    )


def indicator_pair() -> PartitionPair:
    """Pair whose bump is the sharp indicator of [-1, 1]; fails certification."""
    base = build_partition_pair()

    def indicator(x: np.ndarray) -> np.ndarray:
        return (np.abs(np.asarray(x, dtype=float)) <= 1.0).astype(float)

    return PartitionPair(
        chi_bar=indicator,
        theta=base.theta,
        chi_bar_prime=lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        theta_prime=base.theta_prime,
        chi_bar_slope_max=float("inf"),
        name="indicator",
    )


def zero_theta_pair() -> PartitionPair:
    """Pair with theta identically zero; fails certification."""
    base = build_partition_pair()

    def zero(x: np.ndarray) -> np.ndarray:
        return np.zeros_like(np.asarray(x, dtype=float))

    return PartitionPair(
        chi_bar=base.chi_bar,
        theta=zero,
        chi_bar_prime=base.chi_bar_prime,
        theta_prime=zero,
        chi_bar_slope_max=base.chi_bar_slope_max,
        name="zero-theta",
    )


class CertificationRecord(BaseModel):
    """Measured constants of a partition pair."""

    slope_max: float = Field(..., description="max |chi_bar'| on the dense grid")
    partition_defect: float = Field(..., description="max |sum_j theta(x - j) - 1|")
    theta_min_on_unit: float = Field(..., description="min of theta on [0, 1]")
    theta_max_on_unit: float = Field(..., description="max of theta on [0, 1]")
    symmetry_defect: float = Field(0.0, description="max asymmetry of chi_bar and theta")
    h_cert: float = Field(..., description="sampling resolution")
    passed: bool = Field(True, description="all bounds hold")


def _dense(a: float, b: float, h_cert: float) -> np.ndarray:
    count = int(round((b - a) / h_cert)) + 1
    return np.linspace(a, b, count)


def certify(pair: PartitionPair, h_cert: float = MAX_CERT_SPACING) -> CertificationRecord:
    """
    Certify a partition pair by dense sampling.

    Args:
        pair: The pair to check
        h_cert: Sampling resolution, at most 1e-4

    Returns:
        CertificationRecord with the measured constants

    Raises:
        CertificationError: naming the first violated bound
    """
    if not 0 < h_cert <= MAX_CERT_SPACING:
        raise ConfigurationError(f"h_cert must be in (0, {MAX_CERT_SPACING}], got {h_cert}")

    x = _dense(-3.0, 3.0, h_cert)
    chi = np.asarray(pair.chi_bar(x), dtype=float)
    secant = np.abs(np.diff(chi)) / np.diff(x)
    slope_max = float(max(np.max(secant), np.max(np.abs(pair.chi_bar_prime(x)))))

    xp = _dense(-0.5, 1.5, h_cert)
    shifts = np.arange(-3, 4)
    partition_sum = np.sum(pair.theta(xp[:, None] - shifts[None, :]), axis=1)
    partition_defect = float(np.max(np.abs(partition_sum - 1.0)))

    unit = _dense(0.0, 1.0, h_cert)
    theta_unit = np.asarray(pair.theta(unit), dtype=float)

    symmetry_defect = float(
        max(
            np.max(np.abs(chi - pair.chi_bar(-x))),
            np.max(np.abs(theta_unit - pair.theta(1.0 - unit))),
        )
    )

    record = {
        "slope_max": slope_max,
        "partition_defect": partition_defect,
        "theta_min_on_unit": float(theta_unit.min()),
        "theta_max_on_unit": float(theta_unit.max()),
        "symmetry_defect": symmetry_defect,
        "h_cert": float(h_cert),
    }

    abs_x = np.abs(x)
    xt = _dense(-1.0, 2.0, h_cert)
    theta_wide = np.asarray(pair.theta(xt), dtype=float)
    low, high = pair.theta_support
    outside = (xt <= low) | (xt >= high)

    checks = [
        (np.all(np.abs(chi[abs_x < 1.0] - 1.0) <= PARTITION_TOL), "chi_bar = 1 on |x| < 1"),
        (np.all(np.abs(chi[abs_x > 2.0]) <= PARTITION_TOL), "chi_bar = 0 on |x| > 2"),
        (np.all((chi >= -PARTITION_TOL) & (chi <= 1.0 + PARTITION_TOL)), "0 <= chi_bar <= 1"),
        (slope_max <= SLOPE_BOUND, f"|chi_bar'| <= {SLOPE_BOUND} (measured {slope_max:.6g})"),
        (partition_defect <= PARTITION_TOL, f"partition of unity (defect {partition_defect:.3g})"),
        (np.all(theta_wide >= -PARTITION_TOL), "theta >= 0"),
        (low >= -0.25 and high <= 1.25, "supp theta inside (-1/4, 5/4)"),
        (np.all(np.abs(theta_wide[outside]) <= PARTITION_TOL), "theta = 0 outside its support"),
        (
            record["theta_min_on_unit"] >= 0.5 - PARTITION_TOL
            and record["theta_max_on_unit"] <= 1.0 + PARTITION_TOL,
            "theta([0, 1]) inside [1/2, 1]",
        ),
    ]
    for ok, bound in checks:
        if not ok:
            logger.debug("Certification of %s failed: %s", pair.name, bound)
            raise CertificationError(f"Partition pair '{pair.name}' violates {bound}", record)

    return CertificationRecord(passed=True, **record)


def certified_default_pair(h_cert: float = MAX_CERT_SPACING) -> Tuple[PartitionPair, CertificationRecord]:
    """Build and certify the default pair."""
    pair = build_partition_pair()
    return pair, certify(pair, h_cert)


def is_certified(pair: PartitionPair, h_cert: Optional[float] = None) -> bool:
    try:
        certify(pair, h_cert or MAX_CERT_SPACING)
    except CertificationError:
        return False
    return True
