"""
Partition-of-unity cut-off operator.

For u on the grid the operator is evaluated in factored form

    chi(u)(x) = w(x) u(x),   w(x) = int chi_bar(rho_y(u)) theta(x - y) dy,
    rho_y(u)  = |theta(. - y) u|_{H1},

and the scaled version is chi_eps(u) = eps * chi(u / eps). The offsets y run
over a grid of spacing h_y (a multiple of h) covering [-L-2, L+2], so x - y is
always a whole number of grid steps and both the rho field and the y-integral
reduce to correlations of grid data with fixed theta kernels.

The module also provides the derivative machinery chi_1(u) and the candidate
L(u) v = 2 chi(u) chi_1(u) v for the superposition operator u -> chi(u)^2.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np
from scipy.signal import correlate

from .exceptions import ConfigurationError, GridMismatchError
from .grid import GridFunction, derivative, grid_resolution, pointwise_multiply
from .norms import EtaLike, _eta_value, unit_window_norms, weighted_norm
from .partition import PartitionPair, build_partition_pair

logger = logging.getLogger(__name__)

# Above this many multiply-adds a correlation switches to the FFT method.
_DIRECT_LIMIT = 5e7
# Offsets are taken on [-L - Y_MARGIN, L + Y_MARGIN].
Y_MARGIN = 2


@dataclass(frozen=True)
class CutoffConfig:
    """Scale and quadrature settings of the cut-off operator."""

    pair: PartitionPair = field(default_factory=build_partition_pair)
    epsilon: float = 1.0
    y_spacing: Optional[float] = None

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ConfigurationError(f"epsilon must be positive, got {self.epsilon}")
        if self.y_spacing is not None:
            if not 0 < self.y_spacing <= 0.25:
                raise ConfigurationError(
                    f"y_spacing must lie in (0, 1/4] to resolve supp theta, got {self.y_spacing}"
                )
            grid_resolution(self.y_spacing)

    def unscaled(self) -> "CutoffConfig":
        return replace(self, epsilon=1.0)

    def stride(self, u: GridFunction) -> int:
        """Number of grid steps between consecutive offsets y."""
        if self.y_spacing is None:
            return 1
        ratio = self.y_spacing / u.spacing
        stride = int(round(ratio))
        if stride < 1 or abs(ratio - stride) > 1e-9 * ratio:
            raise ConfigurationError(
                f"y_spacing={self.y_spacing} must be a whole multiple of h={u.spacing}"
            )
        return stride


@dataclass(frozen=True)
class RhoField:
    """Values of rho_y(u) on the offset grid."""

    y_grid: np.ndarray
    values: np.ndarray
    stride: int = 1

    @property
    def active(self) -> np.ndarray:
        """Mask of the offsets used by the y-quadrature."""
        mask = np.zeros(self.values.shape, dtype=bool)
        mask[:: self.stride] = True
        return mask


@dataclass(frozen=True)
class _ThetaKernels:
    """theta and theta' sampled at offsets k*h, k = k0 .. k1."""

    k0: int
    k1: int
    theta: np.ndarray
    theta_prime: np.ndarray

    @property
    def mass(self) -> np.ndarray:
        return self.theta**2 + self.theta_prime**2

    @property
    def cross(self) -> np.ndarray:
        return self.theta * self.theta_prime

    @property
    def square(self) -> np.ndarray:
        return self.theta**2


@lru_cache(maxsize=32)
def _kernels(pair: PartitionPair, m: int) -> _ThetaKernels:
    low, high = pair.theta_support
    k0 = int(np.floor(low * m))
    k1 = int(np.ceil(high * m))
    s = np.arange(k0, k1 + 1) / m
    return _ThetaKernels(
        k0=k0,
        k1=k1,
        theta=np.asarray(pair.theta(s), dtype=float),
        theta_prime=np.asarray(pair.theta_prime(s), dtype=float),
    )


def _windowed_correlate(signal: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Valid-mode correlation; windows over identically zero data give exact zeros."""
    method = "direct" if signal.size * kernel.size <= _DIRECT_LIMIT else "fft"
    out = correlate(signal, kernel, mode="valid", method=method)
    if method == "fft":
        occupied = np.concatenate([[0], np.cumsum(signal != 0)])
        width = kernel.size
        out[(occupied[width:] - occupied[:-width]) == 0] = 0.0
    return out


def _padded(values: np.ndarray, m: int, kernels: _ThetaKernels) -> np.ndarray:
    """Zero-extend grid data so that every offset window fits."""
    left = Y_MARGIN * m - kernels.k0
    right = Y_MARGIN * m + kernels.k1
    return np.concatenate([np.zeros(left), values, np.zeros(right)])


def _offset_quadrature(
    q_mass: np.ndarray, q_cross: np.ndarray, q_square: np.ndarray, m: int, h: float,
    kernels: _ThetaKernels,
) -> np.ndarray:
    """
    h * sum_k [mass_k q_mass + cross_k q_cross + square_k q_square](y + k h) for every offset y.

    The three densities are grid data (length N); the result has one entry per
    offset y = -L - 2 + j h.
    """
    total = _windowed_correlate(_padded(q_mass, m, kernels), kernels.mass)
    total += _windowed_correlate(_padded(q_cross, m, kernels), kernels.cross)
    total += _windowed_correlate(_padded(q_square, m, kernels), kernels.square)
    return h * total


def _offset_grid(u: GridFunction) -> np.ndarray:
    m = u.resolution
    L = u.domain_half_length
    count = u.size + 2 * Y_MARGIN * m
    return (np.arange(count) - (L + Y_MARGIN) * m) / m


def rho_field(u: GridFunction, cfg: CutoffConfig) -> RhoField:
    """
    Windowed norms rho_y(u) = |theta(. - y) u|_{H1} for y on [-L-2, L+2].

    The derivative of theta(. - y) u uses the product rule with closed-form
    theta' and the finite-difference derivative of u.

    Args:
        u: Grid function (any number of components)
        cfg: Cut-off configuration

    Returns:
        RhoField on the fine offset grid; cfg.y_spacing selects the stride
    """
    m = u.resolution
    kernels = _kernels(cfg.pair, m)
    du = derivative(u).samples
    squares = _offset_quadrature(
        np.sum(u.samples**2, axis=1),
        2.0 * np.sum(u.samples * du, axis=1),
        np.sum(du**2, axis=1),
        m,
        u.spacing,
        kernels,
    )
    values = np.sqrt(np.clip(squares, 0.0, None))
    return RhoField(y_grid=_offset_grid(u), values=values, stride=cfg.stride(u))


def _y_integral(weights: np.ndarray, u: GridFunction, cfg: CutoffConfig, stride: int) -> np.ndarray:
    """
    h_y * sum_y weights(y) theta(x - y) at every grid point x.

    weights lives on the fine offset grid; only every stride-th entry is used.
    """
    m = u.resolution
    kernels = _kernels(cfg.pair, m)
    active = np.zeros_like(weights)
    active[::stride] = weights[::stride]
    flipped = kernels.theta[::-1]
    full = _windowed_correlate(active, flipped)
    start = Y_MARGIN * m - kernels.k1
    return stride * u.spacing * full[start : start + u.size]


def multiplier(u: GridFunction, cfg: CutoffConfig) -> GridFunction:
    """
    Scalar multiplier w(x) = int chi_bar(rho_y(u)) theta(x - y) dy.

    Args:
        u: Grid function
        cfg: Cut-off configuration

    Returns:
        Scalar GridFunction with values in [0, 1]
    """
    rho = rho_field(u, cfg)
    cut = np.asarray(cfg.pair.chi_bar(rho.values), dtype=float)
    w = _y_integral(cut, u, cfg, rho.stride)
    return GridFunction(u.domain_half_length, u.spacing, w)


def apply_cutoff(u: GridFunction, cfg: CutoffConfig) -> GridFunction:
    """
    Scaled cut-off chi_eps(u) = eps * chi(u / eps).

    Args:
        u: Grid function
        cfg: Cut-off configuration (epsilon = 1 gives chi itself)

    Returns:
        The cut-off image of u
    """
    eps = cfg.epsilon
    scaled = u / eps
    return pointwise_multiply(scaled, multiplier(scaled, cfg)) * eps


def _check_pair(u: GridFunction, v: GridFunction) -> None:
    if not u.same_grid(v) or u.components != v.components:
        raise GridMismatchError("u and v must live on the same grid with the same components")


def chi_one(u: GridFunction, v: GridFunction, cfg: CutoffConfig) -> GridFunction:
    """
    Apply chi_1(u) to a direction v.

    [chi_1(u) v](x) = (int chi_bar'(rho_y) D rho_y v theta(x - y) dy) u(x)
                      + (int chi_bar(rho_y) theta(x - y) dy) v(x),

    with D rho_y v = <theta(. - y) u / rho_y, theta(. - y) v>_{H1}. The first
    integrand is zero wherever chi_bar'(rho_y) vanishes, which covers rho_y = 0.

    Args:
        u: Base point
        v: Direction
        cfg: Cut-off configuration with epsilon = 1

    Returns:
        chi_1(u) v
    """
    _check_pair(u, v)
    if cfg.epsilon != 1.0:
        raise ConfigurationError("chi_one is defined for the unscaled operator (epsilon = 1)")

    m = u.resolution
    kernels = _kernels(cfg.pair, m)
    rho = rho_field(u, cfg)
    du = derivative(u).samples
    dv = derivative(v).samples
    inner = _offset_quadrature(
        np.sum(u.samples * v.samples, axis=1),
        np.sum(u.samples * dv + du * v.samples, axis=1),
        np.sum(du * dv, axis=1),
        m,
        u.spacing,
        kernels,
    )

    slope = np.asarray(cfg.pair.chi_bar_prime(rho.values), dtype=float)
    engaged = (slope != 0.0) & (rho.values > 0.0)
    first = np.zeros_like(rho.values)
    first[engaged] = slope[engaged] * inner[engaged] / rho.values[engaged]

    w_first = _y_integral(first, u, cfg, rho.stride)
    w_second = _y_integral(np.asarray(cfg.pair.chi_bar(rho.values), dtype=float), u, cfg, rho.stride)
    return u.with_samples(w_first[:, None] * u.samples + w_second[:, None] * v.samples)


def derivative_candidate_L(u: GridFunction, v: GridFunction, cfg: CutoffConfig) -> GridFunction:
    """
    Candidate derivative of F(u) = chi_eps(u)^2 in direction v.

    For epsilon = 1 this is L(u) v = 2 chi(u) chi_1(u) v, componentwise.
    Other scales are handled by conjugation: since F(u) = eps^2 chi(u/eps)^2,
    L_eps(u) v = 2 chi_eps(u) chi_1(u/eps) v.
    """
    _check_pair(u, v)
    unit = cfg.unscaled()
    direction = chi_one(u / cfg.epsilon, v, unit)
    image = apply_cutoff(u, cfg)
    return u.with_samples(2.0 * image.samples * direction.samples)


def chi_one_operator_estimate(
    u: GridFunction, directions: Iterable[GridFunction], cfg: CutoffConfig, spec: EtaLike
) -> float:
    """Largest |chi_1(u) v|_{-eta} / |v|_{-eta} over the given directions."""
    eta = _eta_value(spec)
    unit = cfg.unscaled()
    best = 0.0
    for v in directions:
        size = weighted_norm(v, eta)
        if size > 0.0:
            best = max(best, weighted_norm(chi_one(u, v, unit), eta) / size)
    return best


def local_bound_profile(u: GridFunction, cfg: CutoffConfig, spec: EtaLike) -> np.ndarray:
    """exp(-eta |j|) |chi_eps(u)|_{H1[j, j+1]} for every unit window j."""
    eta = _eta_value(spec)
    L = u.domain_half_length
    j = np.arange(-L, L)
    return np.exp(-eta * np.abs(j)) * unit_window_norms(apply_cutoff(u, cfg))


def theta_h1_norm(pair: PartitionPair, h: float) -> float:
    """Discrete H1 norm of theta on a grid of spacing h (the rho of u = 1)."""
    kernels = _kernels(pair, grid_resolution(h))
    return float(np.sqrt(h * np.sum(kernels.mass)))
