"""
Superposition nonlinearities and the sawtooth counterexample.

Three ways of taming u -> u^2 are compared:

- quadratic(u) = u^2, which does not even map H1_{-eta} to itself;
- pointwise_cutoff_g(u) = u^2 T(|u| / delta), truncating by the pointwise
  size of u; its H1 Lipschitz constant blows up on rough functions;
- f_eps(u) = chi_eps(u)^2, the square of the partition-of-unity cut-off.

The sawtooth pair (u, v = u + delta' on [0, 1]) witnesses the blow-up.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from .cutoff import CutoffConfig, apply_cutoff
from .exceptions import ConfigurationError, DegenerateRatioError
from .grid import GridFunction, Window, check_half_length, grid_resolution
from .norms import EtaLike, _eta_value, h1_norm_window, uniform_norm, weighted_norm
from .partition import smooth_transition, smoothstep

logger = logging.getLogger(__name__)

Operator = Callable[[GridFunction], GridFunction]


@dataclass(frozen=True)
class PointwiseCutoffSpec:
    """Threshold delta and C1 transition profile of the pointwise cutoff g."""

    delta: float
    transition: Callable[[np.ndarray], np.ndarray] = field(default=smooth_transition)

    def __post_init__(self):
        if not self.delta > 0:
            raise ConfigurationError(f"delta must be positive, got {self.delta}")


@dataclass(frozen=True)
class SawtoothSpec:
    """Counterexample data: inverse slope eps_saw, amplitude delta/2, shift delta'."""

    eps_saw: float
    delta: float
    delta_prime: float

    def __post_init__(self):
        if self.eps_saw <= 0 or self.delta <= 0 or self.delta_prime <= 0:
            raise ConfigurationError("eps_saw, delta and delta_prime must be positive")
        if not self.delta_prime < self.delta / 2:
            raise ConfigurationError(
                f"delta_prime must be below delta/2, got {self.delta_prime} >= {self.delta / 2}"
            )
        count = 1.0 / (self.delta * self.eps_saw)
        if abs(count - round(count)) > 1e-9 * count or round(count) < 1:
            raise ConfigurationError(
                f"Teeth must fit in [0, 1]: 1/(delta*eps_saw) = {count} is not a positive integer"
            )

    @property
    def tooth_count(self) -> int:
        return int(round(1.0 / (self.delta * self.eps_saw)))

    @property
    def tooth_width(self) -> float:
        return 1.0 / self.tooth_count


def identity(u: GridFunction) -> GridFunction:
    return u


def quadratic(u: GridFunction) -> GridFunction:
    """Componentwise square."""
    return u.with_samples(u.samples**2)


def f_eps(u: GridFunction, cfg: CutoffConfig) -> GridFunction:
    """Modified nonlinearity F_eps(u) = chi_eps(u)^2."""
    return quadratic(apply_cutoff(u, cfg))


def pointwise_cutoff_g(u: GridFunction, spec: PointwiseCutoffSpec) -> GridFunction:
    """g(u) = u^2 for |u| < delta, 0 for |u| > 2 delta, smooth in between."""
    values = u.samples
    return u.with_samples(values**2 * spec.transition(np.abs(values) / spec.delta))


def sawtooth_grid(spec: SawtoothSpec, points_per_half_tooth: int = 32, L: int = 2) -> Tuple[int, float]:
    """
    Grid parameters placing every tooth tip of the sawtooth on a grid point.

    Args:
        spec: Sawtooth data
        points_per_half_tooth: Grid intervals per rising (or falling) flank
        L: Domain half length

    Returns:
        Tuple (L, h) with h = tooth_width / (2 * points_per_half_tooth)
    """
    if points_per_half_tooth < 4:
        raise ConfigurationError("At least 4 grid intervals per half tooth are needed")
    m = 2 * points_per_half_tooth * spec.tooth_count
    return check_half_length(L), 1.0 / m


def sawtooth(spec: SawtoothSpec, L: int, h: float) -> Tuple[GridFunction, GridFunction]:
    """
    Sawtooth pair on [0, 1].

    u is the triangular wave with slopes +-1/eps_saw and peaks delta/2, zero
    outside [0, 1]; v = u + delta' p with p a C1 plateau equal to 1 on
    [2h, 1 - 2h] and ramps of width 2h, so v - u is supported on [0, 1].

    Args:
        spec: Sawtooth data
        L: Domain half length
        h: Grid spacing, at most delta * eps_saw / 8

    Returns:
        Tuple (u, v)
    """
    L = check_half_length(L)
    m = grid_resolution(h)
    h = 1.0 / m
    if h > spec.delta * spec.eps_saw / 8.0 * (1.0 + 1e-12):
        raise ConfigurationError(
            f"Grid too coarse for the sawtooth: h={h} > delta*eps_saw/8={spec.delta * spec.eps_saw / 8}"
        )

    index = np.arange(2 * L * m + 1) - L * m
    x = index / m
    inside = (index >= 0) & (index <= m)

    # position in half teeth, exact at the tips when they sit on grid points
    half_teeth = index * (2.0 * spec.tooth_count) / m
    phase = np.mod(half_teeth, 2.0)
    tooth = 0.5 * spec.delta * (1.0 - np.abs(phase - 1.0))
    u_values = np.where(inside, tooth, 0.0)

    ramp = 2.0 * h
    plateau = np.where(
        inside,
        np.minimum(smoothstep(x / ramp), smoothstep((1.0 - x) / ramp)),
        0.0,
    )
    v_values = u_values + spec.delta_prime * plateau

    logger.debug(
        "Sawtooth with %d teeth on L=%d, 1/h=%d", spec.tooth_count, L, m
    )
    return GridFunction(L, h, u_values), GridFunction(L, h, v_values)


def interior_window(h: float, margin_points: int = 4) -> Window:
    """The window [k h, 1 - k h] on which v - u is exactly delta'."""
    return Window(margin_points * h, 1.0 - margin_points * h)


def lipschitz_ratio(
    F: Operator,
    u: GridFunction,
    v: GridFunction,
    eta: EtaLike,
    window: Optional[Window] = None,
) -> float:
    """
    Difference quotient |F(u) - F(v)| / |u - v|.

    Args:
        F: Operator on grid functions
        u, v: Distinct arguments on the same grid
        eta: Weight exponent of the H1_{-eta} norm
        window: If given, both norms are H1 norms over this window instead

    Returns:
        The ratio

    Raises:
        DegenerateRatioError: if u and v coincide (on the window)
    """
    difference = u - v
    if not np.any(difference.samples):
        raise DegenerateRatioError("lipschitz_ratio needs u != v")

    if window is None:
        weight = _eta_value(eta)
        denominator = weighted_norm(difference, weight)
        numerator_fn = lambda f: weighted_norm(f, weight)  # noqa: E731
    else:
        denominator = h1_norm_window(difference, window)
        numerator_fn = lambda f: h1_norm_window(f, window)  # noqa: E731

    if denominator == 0.0:
        raise DegenerateRatioError("u - v vanishes on the measuring window")
    return numerator_fn(F(u) - F(v)) / denominator


def product_lipschitz_bound(
    u: GridFunction, v: GridFunction, cfg: CutoffConfig, eta: EtaLike, c_prod: float = 1.0
) -> float:
    """
    Bound C_prod |chi_eps u + chi_eps v|_u |chi_eps u - chi_eps v|_{-eta} on
    |F_eps(u) - F_eps(v)|_{-eta}.
    """
    cu = apply_cutoff(u, cfg)
    cv = apply_cutoff(v, cfg)
    return c_prod * uniform_norm(cu + cv) * weighted_norm(cu - cv, _eta_value(eta))
