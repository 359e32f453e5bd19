"""
Tests for the cut bump, the partition generator and their certification.
"""

import numpy as np
import pytest

from cutoff_lab.exceptions import CertificationError, ConfigurationError
from cutoff_lab.partition import (
    SLOPE_BOUND,
    build_partition_pair,
    certified_default_pair,
    certify,
    indicator_pair,
    is_certified,
    smoothstep,
    smoothstep_prime,
    zero_theta_pair,
)


def test_smoothstep():
    """S(0) = 0, S(1/2) = 1/2, S(1) = 1 and S'(1/2) = 15/8."""
    assert smoothstep(np.array([0.0, 0.5, 1.0])).tolist() == [0.0, 0.5, 1.0]
    assert smoothstep(np.array([-1.0, 2.0])).tolist() == [0.0, 1.0]
    assert smoothstep_prime(np.array([0.5]))[0] == pytest.approx(1.875)
    assert smoothstep_prime(np.array([0.0, 1.0, 1.5])).tolist() == [0.0, 0.0, 0.0]


def test_chi_bar_values(pair):
    x = np.array([-2.5, -1.5, -1.0, 0.0, 0.7, 1.5, 2.0, 3.0])
    expected = np.array([0.0, 0.5, 1.0, 1.0, 1.0, 0.5, 0.0, 0.0])
    assert np.allclose(pair.chi_bar(x), expected, atol=1e-15)


def test_theta_values(pair):
    """theta is 1/2 at the window ends, 1 in the middle and 0 off its support."""
    x = np.array([-0.3, 0.0, 0.5, 1.0, 1.3])
    assert np.allclose(pair.theta(x), [0.0, 0.5, 1.0, 0.5, 0.0], atol=1e-15)


def test_partition_of_unity(pair):
    """Integer translates of theta sum to one everywhere."""
    x = np.random.default_rng(0).uniform(-3.0, 3.0, 10_000)
    shifts = np.arange(-6, 7)
    total = pair.theta(x[:, None] - shifts[None, :]).sum(axis=1)
    assert np.max(np.abs(total - 1.0)) <= 1e-12


def test_certify_default_pair():
    """The quintic pair passes with slope 15/8."""
    pair, record = certified_default_pair()
    assert record.passed
    assert record.slope_max == pytest.approx(1.875, abs=1e-6)
    assert record.slope_max <= SLOPE_BOUND
    assert record.partition_defect <= 1e-12
    assert record.theta_min_on_unit == pytest.approx(0.5, abs=1e-12)
    assert record.theta_max_on_unit == pytest.approx(1.0, abs=1e-12)
    assert record.symmetry_defect <= 1e-12
    assert pair.chi_bar_slope_max == pytest.approx(1.875, abs=1e-6)
    assert is_certified(pair)


def test_certify_rejects_indicator():
    """The sharp indicator has an unbounded secant slope."""
    with pytest.raises(CertificationError) as excinfo:
        certify(indicator_pair())
    assert "|chi_bar'|" in str(excinfo.value)
    assert excinfo.value.record["slope_max"] > SLOPE_BOUND
    assert not is_certified(indicator_pair())


def test_certify_rejects_zero_theta():
    """theta = 0 is no partition of unity."""
    with pytest.raises(CertificationError) as excinfo:
        certify(zero_theta_pair())
    assert "partition of unity" in str(excinfo.value)
    assert excinfo.value.record["partition_defect"] == pytest.approx(1.0)


def test_certify_spacing_limit():
    with pytest.raises(ConfigurationError):
        certify(build_partition_pair(), h_cert=1e-3)
