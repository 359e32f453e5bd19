"""
Cutoff Lab - numerical checks of a partition-of-unity cut-off operator.

The package evaluates the cut-off operator chi_eps on exponentially weighted
Sobolev spaces over a truncated grid and verifies its claimed properties,
including the failure of the pointwise cutoff it replaces.
"""

__version__ = "0.1.0"

from .cutoff import (
    CutoffConfig,
    RhoField,
    apply_cutoff,
    chi_one,
    derivative_candidate_L,
    multiplier,
    rho_field,
)
from .exceptions import (
    CertificationError,
    ConfigurationError,
    CutoffLabError,
    DegenerateRatioError,
    GridMismatchError,
    ShiftError,
)
from .grid import GridFunction, Window, derivative, pointwise_multiply, sample, translate
from .nonlin import (
    PointwiseCutoffSpec,
    SawtoothSpec,
    f_eps,
    lipschitz_ratio,
    pointwise_cutoff_g,
    quadratic,
    sawtooth,
)
from .norms import WeightedNormSpec, h1_inner, h1_norm_window, uniform_norm, weighted_norm
from .partition import PartitionPair, build_chi_bar, build_partition_pair, build_theta, certify

__all__ = [
    "CertificationError",
    "ConfigurationError",
    "CutoffConfig",
    "CutoffLabError",
    "DegenerateRatioError",
    "GridFunction",
    "GridMismatchError",
    "PartitionPair",
    "PointwiseCutoffSpec",
    "RhoField",
    "SawtoothSpec",
    "ShiftError",
    "WeightedNormSpec",
    "Window",
    "apply_cutoff",
    "build_chi_bar",
    "build_partition_pair",
    "build_theta",
    "certify",
    "chi_one",
    "derivative",
    "derivative_candidate_L",
    "f_eps",
    "h1_inner",
    "h1_norm_window",
    "lipschitz_ratio",
    "multiplier",
    "pointwise_cutoff_g",
    "pointwise_multiply",
    "quadratic",
    "rho_field",
    "sample",
    "sawtooth",
    "translate",
    "uniform_norm",
    "weighted_norm",
]
