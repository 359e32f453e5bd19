"""
Grid functions on a truncated real line.

A GridFunction holds the samples of a map u: R -> R^n on the uniform grid
-L, -L + h, ..., L. Functions are identically zero outside [-L, L]. Unit
intervals [j, j+1] always start and end on grid points because both L and
1/h are integers.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple, Union

import numpy as np

from .exceptions import ConfigurationError, GridMismatchError, ShiftError

logger = logging.getLogger(__name__)

# Tolerance used when checking that 1/h is an integer.
_INTEGRALITY_TOL = 1e-9


def grid_resolution(h: float) -> int:
    """
    Return m = 1/h, checking that it is a positive integer.

    Args:
        h: Grid spacing

    Returns:
        Number of grid intervals per unit length
    """
    if h <= 0:
        raise ConfigurationError(f"Grid spacing must be positive, got h={h}")
    inverse = 1.0 / h
    m = int(round(inverse))
    if m < 1 or abs(inverse - m) > _INTEGRALITY_TOL * max(1.0, inverse):
        raise ConfigurationError(f"1/h must be a positive integer, got 1/h={inverse}")
    return m


def check_half_length(L: Any) -> int:
    """Return L as an int, raising ConfigurationError when it is not a positive integer."""
    if isinstance(L, bool) or not float(L).is_integer() or int(L) < 1:
        raise ConfigurationError(f"L must be a positive integer, got L={L}")
    return int(L)


@dataclass(frozen=True)
class GridFunction:
    """Samples of u: R -> R^n on the grid over [-L, L]."""

    domain_half_length: int
    spacing: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        L = check_half_length(self.domain_half_length)
        m = grid_resolution(self.spacing)
        values = np.array(self.samples, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        expected = 2 * L * m + 1
        if values.ndim != 2 or values.shape[0] != expected or values.shape[1] < 1:
            raise ConfigurationError(
                f"Samples must have shape ({expected}, n), got {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ConfigurationError("Grid function samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "domain_half_length", L)
        object.__setattr__(self, "spacing", 1.0 / m)
        object.__setattr__(self, "samples", values)

    @property
    def resolution(self) -> int:
        """Grid points per unit length (1/h)."""
        return int(round(1.0 / self.spacing))

    @property
    def components(self) -> int:
        return self.samples.shape[1]

    @property
    def size(self) -> int:
        return self.samples.shape[0]

    @property
    def x(self) -> np.ndarray:
        """Grid abscissae -L + i*h, computed exactly as rationals i/m - L."""
        m = self.resolution
        return (np.arange(self.size) - self.domain_half_length * m) / m

    def grid_params(self) -> Tuple[int, float]:
        return self.domain_half_length, self.spacing

    def same_grid(self, other: "GridFunction") -> bool:
        return (
            self.domain_half_length == other.domain_half_length
            and self.resolution == other.resolution
        )

    def with_samples(self, values: np.ndarray) -> "GridFunction":
        """New grid function on the same grid."""
        return GridFunction(self.domain_half_length, self.spacing, values)

    def index_of(self, x: float) -> int:
        """Index of the grid point x, which must lie on the grid."""
        m = self.resolution
        position = (x + self.domain_half_length) * m
        index = int(round(position))
        if abs(position - index) > 1e-7 or not 0 <= index < self.size:
            raise ConfigurationError(f"x={x} is not a grid point of this grid")
        return index

    def _check_compatible(self, other: "GridFunction") -> None:
        if not self.same_grid(other):
            raise GridMismatchError(
                f"Grid mismatch: (L={self.domain_half_length}, 1/h={self.resolution}) vs "
                f"(L={other.domain_half_length}, 1/h={other.resolution})"
            )

    def __add__(self, other: "GridFunction") -> "GridFunction":
        self._check_compatible(other)
        return self.with_samples(self.samples + other.samples)

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        self._check_compatible(other)
        return self.with_samples(self.samples - other.samples)

    def __neg__(self) -> "GridFunction":
        return self.with_samples(-self.samples)

    def __mul__(self, scalar: float) -> "GridFunction":
        return self.with_samples(self.samples * float(scalar))

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "GridFunction":
        return self.with_samples(self.samples / float(scalar))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.samples))) if self.size else 0.0

    def to_csv(self, path: Union[str, Path]) -> None:
        """Write the samples as CSV with header x,u1,...,un at 17 significant digits."""
        header = ",".join(["x"] + [f"u{i + 1}" for i in range(self.components)])
        table = np.column_stack([self.x, self.samples])
        np.savetxt(path, table, delimiter=",", header=header, comments="", fmt="%.17g")

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "GridFunction":
        """Read a grid function written by to_csv."""
        table = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        x = table[:, 0]
        if x.size < 3:
            raise ConfigurationError(f"Not enough grid points in {path}")
        L = check_half_length(round(-x[0], 9))
        h = (x[-1] - x[0]) / (x.size - 1)
        return cls(L, 1.0 / grid_resolution(h), table[:, 1:])


@dataclass(frozen=True)
class Window:
    """Closed interval [a, b] whose endpoints are grid points."""

    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ConfigurationError(f"Window needs a < b, got [{self.a}, {self.b}]")

    @classmethod
    def unit(cls, j: int) -> "Window":
        return cls(float(j), float(j + 1))

    def indices(self, u: GridFunction) -> Tuple[int, int]:
        """Grid indices of a and b; the window must be aligned and inside [-L, L]."""
        L = u.domain_half_length
        if self.a < -L - 1e-12 or self.b > L + 1e-12:
            raise ConfigurationError(f"Window [{self.a}, {self.b}] leaves [-{L}, {L}]")
        return u.index_of(self.a), u.index_of(self.b)


def unit_windows(L: int) -> List[Window]:
    """The 2L unit windows [j, j+1], j = -L .. L-1."""
    return [Window.unit(j) for j in range(-L, L)]


def _evaluate_description(description: Dict[str, Any], x: np.ndarray) -> np.ndarray:
    kind = description.get("kind")
    if kind == "zero":
        return np.zeros_like(x)
    if kind == "constant":
        return np.full_like(x, float(description.get("value", 1.0)))
    if kind == "linear":
        return float(description.get("slope", 1.0)) * x + float(description.get("offset", 0.0))
    if kind == "exp_growth":
        eta = float(description.get("eta", 0.5))
        return float(description.get("amplitude", 1.0)) * np.exp(eta * np.abs(x) / 2.0)
    if kind == "sawtooth":
        delta = float(description.get("delta", 0.1))
        teeth = 1.0 / (delta * float(description.get("eps_saw", 1.0 / 16)))
        phase = np.mod(2.0 * teeth * x, 2.0)
        tooth = 0.5 * delta * (1.0 - np.abs(phase - 1.0))
        return np.where((x >= 0.0) & (x <= 1.0), tooth, 0.0)
    raise ConfigurationError(f"Unknown closed-form description: {kind!r}")


def sample(
    f: Union[Callable[[np.ndarray], np.ndarray], Dict[str, Any]],
    L: int,
    h: float,
    n: int = 1,
) -> GridFunction:
    """
    Sample a closed-form function on the grid over [-L, L].

    Args:
        f: Callable taking the abscissae array, or a description dict
            ({"kind": "zero" | "constant" | "linear" | "exp_growth", ...})
        L: Domain half length (positive integer)
        h: Grid spacing with 1/h integer
        n: Codomain dimension

    Returns:
        The sampled GridFunction
    """
    L = check_half_length(L)
    m = grid_resolution(h)
    x = (np.arange(2 * L * m + 1) - L * m) / m

    if isinstance(f, dict):
        values = _evaluate_description(f, x)
    else:
        values = np.asarray(f(x), dtype=float)

    if values.ndim == 1:
        values = np.repeat(values[:, None], n, axis=1)
    elif values.shape[1] != n:
        raise ConfigurationError(f"Function returned {values.shape[1]} components, expected {n}")

    logger.debug("Sampled function on L=%d, 1/h=%d, n=%d", L, m, n)
    return GridFunction(L, 1.0 / m, values)


def zeros(L: int, h: float, n: int = 1) -> GridFunction:
    return sample({"kind": "zero"}, L, h, n)


def translate(u: GridFunction, k: int) -> GridFunction:
    """
    Shift u by k grid points: result(x) = u(x - k*h), zero-filled at the boundary.

    Args:
        u: Function to shift
        k: Integer shift count

    Returns:
        The translated function
    """
    k = int(k)
    if abs(k) * u.spacing >= 2 * u.domain_half_length:
        raise ShiftError(
            f"Shift of {k} points ({k * u.spacing}) leaves the domain [-{u.domain_half_length}, {u.domain_half_length}]"
        )
    shifted = np.zeros_like(u.samples)
    if k > 0:
        shifted[k:] = u.samples[:-k]
    elif k < 0:
        shifted[:k] = u.samples[-k:]
    else:
        shifted[:] = u.samples
    return u.with_samples(shifted)


def derivative(u: GridFunction) -> GridFunction:
    """Central differences inside, one-sided differences at the two boundary points."""
    return u.with_samples(np.gradient(u.samples, u.spacing, axis=0, edge_order=1))


def pointwise_multiply(u: GridFunction, w: GridFunction) -> GridFunction:
    """
    Multiply every component of u by the scalar field w.

    Args:
        u: Grid function with n components
        w: Scalar grid function (n = 1) on the same grid

    Returns:
        The product u(x) * w(x)
    """
    if not u.same_grid(w):
        raise GridMismatchError("pointwise_multiply needs both functions on the same grid")
    if w.components != 1:
        raise GridMismatchError(f"Multiplier must be scalar, got {w.components} components")
    return u.with_samples(u.samples * w.samples)
