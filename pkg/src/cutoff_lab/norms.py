"""
Sobolev norms on grid functions.

All integrals use the trapezoid rule on the grid and all derivatives the
finite differences of grid.derivative. The weighted norm is defined as the
l2 sum over unit windows

    |u|_{-eta}^2 = sum_{j=-L}^{L-1} exp(-2 eta |j|) |u|_{H1[j, j+1]}^2

and the uniformly local norm as the largest H1 norm over windows [y, y+1]
with y running over all grid points in [-L, L-1].
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np

from .exceptions import ConfigurationError, GridMismatchError
from .grid import GridFunction, Window, derivative

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WeightedNormSpec:
    """Decay-tolerance exponent eta of the weighted space H1_{-eta}."""

    eta: float
    eta_max: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.eta < self.eta_max:
            raise ConfigurationError(
                f"eta must satisfy 0 <= eta < eta_max={self.eta_max}, got {self.eta}"
            )


EtaLike = Union[float, WeightedNormSpec]


def _eta_value(spec: EtaLike) -> float:
    if isinstance(spec, WeightedNormSpec):
        return spec.eta
    return WeightedNormSpec(float(spec), eta_max=np.inf).eta


def _density(u: GridFunction) -> np.ndarray:
    """|u|^2 + |u'|^2 at every grid point, summed over components."""
    du = derivative(u).samples
    return np.sum(u.samples**2 + du**2, axis=1)


def _pairing_density(u: GridFunction, v: GridFunction) -> np.ndarray:
    du = derivative(u).samples
    dv = derivative(v).samples
    return np.sum(u.samples * v.samples + du * dv, axis=1)


def _trapezoid(values: np.ndarray, h: float) -> float:
    if values.size < 2:
        return 0.0
    return float(h * (values.sum() - 0.5 * (values[0] + values[-1])))


def _cumulative_trapezoid(values: np.ndarray, h: float) -> np.ndarray:
    out = np.zeros_like(values)
    out[1:] = np.cumsum(0.5 * h * (values[1:] + values[:-1]))
    return out


def _unit_window_integrals(values: np.ndarray, L: int, m: int, h: float) -> np.ndarray:
    """Trapezoid integrals of values over the 2L unit windows, left to right."""
    starts = values[:-1:m][: 2 * L]
    ends = values[m::m]
    segment_sums = values[:-1].reshape(2 * L, m).sum(axis=1)
    return h * (segment_sums - 0.5 * starts + 0.5 * ends)


def h1_norm_window(u: GridFunction, window: Window) -> float:
    """
    H1 norm of u over a grid-aligned window.

    Args:
        u: Grid function
        window: Window [a, b] inside [-L, L]

    Returns:
        sqrt of the trapezoid integral of |u|^2 + |u'|^2 over the window
    """
    ia, ib = window.indices(u)
    return float(np.sqrt(max(_trapezoid(_density(u)[ia : ib + 1], u.spacing), 0.0)))


def h1_inner(u: GridFunction, v: GridFunction, window: Window) -> float:
    """H1 inner product of u and v over a grid-aligned window."""
    if not u.same_grid(v) or u.components != v.components:
        raise GridMismatchError("h1_inner needs both functions on the same grid")
    ia, ib = window.indices(u)
    return _trapezoid(_pairing_density(u, v)[ia : ib + 1], u.spacing)


def unit_window_norms(u: GridFunction) -> np.ndarray:
    """H1 norms over [j, j+1] for j = -L .. L-1."""
    squares = _unit_window_integrals(
        _density(u), u.domain_half_length, u.resolution, u.spacing
    )
    return np.sqrt(np.clip(squares, 0.0, None))


def weight_sum(L: int, eta: float) -> float:
    """Sum of exp(-2 eta |j|) over j = -L .. L-1."""
    j = np.arange(-L, L)
    return float(np.sum(np.exp(-2.0 * eta * np.abs(j))))


def weighted_norm(u: GridFunction, spec: EtaLike) -> float:
    """
    Norm of u in H1_{-eta}, truncated to the domain.

    Args:
        u: Grid function
        spec: WeightedNormSpec or a bare eta

    Returns:
        sqrt(sum_j exp(-2 eta |j|) |u|_{H1[j,j+1]}^2)
    """
    eta = _eta_value(spec)
    L = u.domain_half_length
    squares = _unit_window_integrals(_density(u), L, u.resolution, u.spacing)
    weights = np.exp(-2.0 * eta * np.abs(np.arange(-L, L)))
    return float(np.sqrt(max(float(np.dot(weights, squares)), 0.0)))


def h1_local_profile(u: GridFunction) -> Tuple[np.ndarray, np.ndarray]:
    """
    H1 norms over every window [y, y+1], y on the grid in [-L, L-1].

    Returns:
        Tuple of (offsets y, window norms)
    """
    m = u.resolution
    cumulative = _cumulative_trapezoid(_density(u), u.spacing)
    squares = cumulative[m:] - cumulative[:-m]
    return u.x[:-m], np.sqrt(np.clip(squares, 0.0, None))


def uniform_norm(u: GridFunction) -> float:
    """Norm of u in the uniformly local space H1_u (sup over unit windows)."""
    _, profile = h1_local_profile(u)
    return float(profile.max()) if profile.size else 0.0


def product(u: GridFunction, v: GridFunction) -> GridFunction:
    """Componentwise product u * v."""
    if not u.same_grid(v) or u.components != v.components:
        raise GridMismatchError("product needs both functions on the same grid")
    return u.with_samples(u.samples * v.samples)


def estimate_product_constant(
    pairs: Iterable[Tuple[GridFunction, GridFunction]], spec: EtaLike
) -> float:
    """
    Measured constant of the product estimate |uv|_{-eta} <= C |u|_u |v|_{-eta}.

    Args:
        pairs: Sample pairs (u, v)
        spec: Weight exponent

    Returns:
        Largest observed ratio |uv|_{-eta} / (|u|_u |v|_{-eta})
    """
    eta = _eta_value(spec)
    worst = 0.0
    count = 0
    for u, v in pairs:
        denominator = uniform_norm(u) * weighted_norm(v, eta)
        if denominator == 0.0:
            continue
        worst = max(worst, weighted_norm(product(u, v), eta) / denominator)
        count += 1
    logger.debug("Product constant %.6g over %d pairs", worst, count)
    return worst
