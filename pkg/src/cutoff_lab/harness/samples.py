"""
Seeded sample families.

Each family draws its samples from numpy.random.default_rng([seed, index]),
so a sample depends only on (seed, index) and never on how many samples were
drawn before it.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..config import FAMILY_KINDS
from ..exceptions import ConfigurationError
from ..grid import GridFunction, check_half_length, derivative, grid_resolution
from ..nonlin import SawtoothSpec, sawtooth
from ..norms import uniform_norm
from ..partition import smoothstep

logger = logging.getLogger(__name__)

# Random samples are supported in [-L + SUPPORT_MARGIN, L - SUPPORT_MARGIN].
SUPPORT_MARGIN = 4
_MODES = 16
_TUNING_PASSES = 5


def taper(x: np.ndarray, L: int) -> np.ndarray:
    """Smooth window equal to 1 in the middle and 0 outside [-L+4, L-4]."""
    edge = L - SUPPORT_MARGIN
    width = min(2.0, edge / 2.0)
    return 1.0 - smoothstep((np.abs(x) - (edge - width)) / width)


@dataclass
class SampleFamily:
    """
    A seeded population of grid functions with declared scales.

    amplitude bounds max|u| and roughness bounds max|u'|; with
    amplitude_decades > 0 both are multiplied by the same factor 10^U(0, decades).
    """

    kind: str
    amplitude: float = 1.0
    roughness: float = 1.0
    seed: int = 42
    count: int = 10
    amplitude_decades: float = 0.0
    eta: float = 0.5

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ConfigurationError(
                f"Unknown family kind '{self.kind}', expected one of {', '.join(FAMILY_KINDS)}"
            )
        if self.amplitude <= 0 or self.roughness <= 0:
            raise ConfigurationError("Family amplitude and roughness must be positive")
        if self.count < 1:
            raise ConfigurationError("Family count must be at least 1")

    def rng(self, index: int, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, index, stream])

    def sample_amplitude(self, rng: np.random.Generator) -> float:
        return self.amplitude * 10.0 ** rng.uniform(0.0, self.amplitude_decades)

    def generate(self, L: int, h: float, n: int = 1) -> List[GridFunction]:
        """
        Draw the family's samples on the grid over [-L, L].

        Args:
            L: Domain half length
            h: Grid spacing
            n: Number of components

        Returns:
            List of count GridFunctions
        """
        return [self.draw(index, L, h, n) for index in range(self.count)]

    def draw(self, index: int, L: int, h: float, n: int = 1) -> GridFunction:
        L = check_half_length(L)
        m = grid_resolution(h)
        rng = self.rng(index)
        amplitude = self.sample_amplitude(rng)
        x = (np.arange(2 * L * m + 1) - L * m) / m

        if self.kind == "exponential-growth":
            values = amplitude * np.exp(self.eta * np.abs(x) / 2.0)
            return GridFunction(L, 1.0 / m, np.repeat(values[:, None], n, axis=1))

        if self.kind == "sawtooth":
            u, _ = self._sawtooth_pair(amplitude, L, 1.0 / m)
            return u

        if L <= SUPPORT_MARGIN:
            raise ConfigurationError(f"Random families need L > {SUPPORT_MARGIN}, got L={L}")

        if self.kind == "small-ball":
            shape = np.column_stack(
                [_random_profile(rng, x, L, m, 1.0, 1.0) for _ in range(n)]
            )
            u = GridFunction(L, 1.0 / m, shape)
            target = amplitude * rng.uniform(0.5, 1.0)
            return u * (target / uniform_norm(u))

        # roughness follows the drawn amplitude, so max|u'| / max|u| is fixed per family
        roughness = self.roughness * amplitude / self.amplitude
        values = np.column_stack(
            [_random_profile(rng, x, L, m, amplitude, roughness) for _ in range(n)]
        )
        return GridFunction(L, 1.0 / m, values)

    def pairs(
        self, L: int, h: float, perturbation: float, n: int = 1
    ) -> List[Tuple[GridFunction, GridFunction]]:
        """
        Pairs (u, u + d) with d an independent smooth sample of amplitude perturbation.

        Sawtooth families return the counterexample pairs instead.
        """
        result = []
        m = grid_resolution(h)
        x = (np.arange(2 * L * m + 1) - L * m) / m
        for index in range(self.count):
            if self.kind == "sawtooth":
                amplitude = self.sample_amplitude(self.rng(index))
                result.append(self._sawtooth_pair(amplitude, L, h))
                continue
            u = self.draw(index, L, h, n)
            rng = self.rng(index, stream=1)
            d = np.column_stack(
                [_random_profile(rng, x, L, m, perturbation, perturbation) for _ in range(n)]
            )
            result.append((u, u.with_samples(u.samples + d)))
        return result

    def _sawtooth_pair(self, amplitude: float, L: int, h: float) -> Tuple[GridFunction, GridFunction]:
        delta = 2.0 * amplitude
        # slope delta * teeth of the sawtooth is the roughness
        teeth = max(1, int(round(self.roughness / delta)))
        spec = SawtoothSpec(eps_saw=1.0 / (delta * teeth), delta=delta, delta_prime=delta / 10.0)
        return sawtooth(spec, L, h)


def _random_profile(
    rng: np.random.Generator, x: np.ndarray, L: int, m: int, amplitude: float, roughness: float
) -> np.ndarray:
    """
    Band-limited random carrier under a slowly modulated, tapered envelope.

    The carrier frequency is tuned so that max |u'| (finite differences) is
    close to roughness while max |u| equals amplitude.
    """
    ratios = rng.uniform(0.5, 1.0, _MODES)
    phases = rng.uniform(0.0, 2.0 * np.pi, _MODES)
    weights = rng.normal(size=_MODES)
    kappa = rng.uniform(0.2, 0.6)
    shift = rng.uniform(0.0, 2.0 * np.pi)
    envelope = taper(x, L) * (0.55 + 0.45 * np.sin(kappa * x + shift))

    omega_cap = 0.4 * np.pi * m
    omega = min(roughness / amplitude, omega_cap)
    values = np.zeros_like(x)
    for _ in range(_TUNING_PASSES):
        carrier = np.sin(np.outer(x, omega * ratios) + phases) @ weights
        shaped = envelope * carrier
        values = amplitude * shaped / np.max(np.abs(shaped))
        measured = np.max(np.abs(np.gradient(values, 1.0 / m)))
        omega = float(np.clip(omega * roughness / measured, 0.05, omega_cap))

    if omega >= omega_cap:
        logger.warning("Roughness %.3g is not resolvable at 1/h=%d; capped", roughness, m)
    return values


def derivative_envelope(u: GridFunction) -> float:
    """max |u'| of a sample, the quantity the roughness scale controls."""
    return float(np.max(np.abs(derivative(u).samples)))
