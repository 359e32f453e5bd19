"""
Tests for the seeded sample families.
"""

import numpy as np
import pytest

from cutoff_lab.exceptions import ConfigurationError
from cutoff_lab.harness.samples import SUPPORT_MARGIN, SampleFamily, derivative_envelope
from cutoff_lab.norms import uniform_norm

L, H = 8, 1 / 64


def test_family_is_deterministic():
    """A sample depends only on (seed, index)."""
    family = SampleFamily("smooth-random", amplitude=1.0, roughness=2.0, seed=3, count=4)
    first = family.generate(L, H)
    second = family.generate(L, H)
    for u, v in zip(first, second):
        assert np.array_equal(u.samples, v.samples)
    assert np.array_equal(family.draw(2, L, H).samples, first[2].samples)

    other = SampleFamily("smooth-random", amplitude=1.0, roughness=2.0, seed=4, count=4)
    assert not np.array_equal(other.draw(0, L, H).samples, first[0].samples)


def test_rough_family_scales():
    """max |u| is the amplitude and max |u'| lands near the roughness."""
    family = SampleFamily("rough-random", amplitude=0.5, roughness=5.0, seed=11, count=5)
    for u in family.generate(L, H):
        assert u.max_abs() == pytest.approx(0.5, rel=1e-12)
        assert derivative_envelope(u) == pytest.approx(5.0, rel=0.1)


def test_amplitude_decades():
    """Drawn amplitudes spread over the requested decades."""
    family = SampleFamily("smooth-random", amplitude=0.1, roughness=0.2, count=20, amplitude_decades=2.0)
    amplitudes = [u.max_abs() for u in family.generate(L, H)]
    assert min(amplitudes) >= 0.1 * (1 - 1e-12)
    assert max(amplitudes) <= 10.0 * (1 + 1e-12)
    assert max(amplitudes) / min(amplitudes) > 5.0


def test_random_samples_are_supported_inside():
    family = SampleFamily("smooth-random", count=3)
    for u in family.generate(L, H, n=2):
        assert u.components == 2
        outside = np.abs(u.x) >= L - SUPPORT_MARGIN
        assert np.allclose(u.samples[outside], 0.0, atol=1e-15)


def test_small_ball_family():
    """Small-ball samples have uniform norm between A/2 and A."""
    family = SampleFamily("small-ball", amplitude=0.2, count=5)
    for u in family.generate(L, H):
        assert 0.1 - 1e-12 <= uniform_norm(u) <= 0.2 + 1e-12


def test_exponential_growth_family():
    family = SampleFamily("exponential-growth", amplitude=0.1, count=2, eta=0.5)
    u = family.draw(0, L, H)
    assert np.allclose(u.samples[:, 0], 0.1 * np.exp(0.25 * np.abs(u.x)), rtol=1e-14)


def test_sawtooth_family():
    """Sawtooth families return the counterexample pair with delta = 2 amplitude."""
    family = SampleFamily("sawtooth", amplitude=0.05, roughness=0.5, count=1)
    u, v = family.pairs(2, 1 / 1600, perturbation=0.0)[0]
    assert u.max_abs() == pytest.approx(0.05, rel=1e-12)
    assert np.max((v - u).samples) == pytest.approx(0.01, rel=1e-12)


def test_pairs():
    """Pairs (u, u + d) with |d| bounded by the perturbation."""
    family = SampleFamily("smooth-random", count=3)
    pairs = family.pairs(L, H, perturbation=0.05)
    assert len(pairs) == 3
    for index, (u, v) in enumerate(pairs):
        assert np.array_equal(u.samples, family.draw(index, L, H).samples)
        assert (v - u).max_abs() == pytest.approx(0.05, rel=1e-12)


def test_family_errors():
    with pytest.raises(ConfigurationError):
        SampleFamily("brownian")
    with pytest.raises(ConfigurationError):
        SampleFamily("smooth-random", amplitude=0.0)
    with pytest.raises(ConfigurationError):
        SampleFamily("smooth-random", count=0)
    with pytest.raises(ConfigurationError):
        SampleFamily("smooth-random").draw(0, SUPPORT_MARGIN, H)
