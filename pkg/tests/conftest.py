"""
Shared fixtures for the cutoff-lab tests.

Tests run on reduced grids (L = 8, h = 1/64 unless a check needs more) so
the whole suite stays fast; the full acceptance run is the CLI `all` command.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import pytest

from cutoff_lab.config import FamilyConfig, LabConfig, SawtoothSettings, SuiteSettings
from cutoff_lab.cutoff import CutoffConfig
from cutoff_lab.harness.samples import SampleFamily
from cutoff_lab.partition import build_partition_pair

L_TEST = 8
H_TEST = 1 / 64


@pytest.fixture(scope="session")
def pair():
    return build_partition_pair()


@pytest.fixture
def unit_cfg(pair):
    return CutoffConfig(pair=pair, epsilon=1.0)


@pytest.fixture
def smooth_samples():
    """Five smooth samples of amplitude 1 on the test grid."""
    family = SampleFamily("smooth-random", amplitude=1.0, roughness=2.0, seed=7, count=5)
    return family.generate(L_TEST, H_TEST)


@pytest.fixture
def small_config():
    """Reduced configuration for running whole suites in tests."""
    return LabConfig(
        L=L_TEST,
        h=H_TEST,
        seed=42,
        epsilon_list=[2.0**-k for k in range(2, 8)],
        families=[
            FamilyConfig("smooth-random", amplitude=0.1, roughness=0.2, count=3, amplitude_decades=2.0),
            FamilyConfig("rough-random", amplitude=0.1, roughness=2.0, count=3, amplitude_decades=2.0),
        ],
        sawtooth=SawtoothSettings(eps_saw_list=[1 / 16, 1 / 64]),
        settings=SuiteSettings(
            small_ball_samples=5,
            equivariance_samples=3,
            shifts=[1, 17, 64],
            uniform_bound_samples=6,
            lipschitz_pairs=3,
            rho_bound_samples=3,
            null_samples=3,
            gateaux_pairs=4,
            chi_one_samples=3,
            chi_one_directions=3,
        ),
    )
