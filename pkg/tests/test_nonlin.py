"""
Tests for the superposition nonlinearities, the sawtooth pair and the
Lipschitz difference quotients.
"""

import numpy as np
import pytest

from cutoff_lab.cutoff import CutoffConfig
from cutoff_lab.exceptions import ConfigurationError, DegenerateRatioError
from cutoff_lab.grid import Window, derivative, sample, zeros
from cutoff_lab.nonlin import (
    PointwiseCutoffSpec,
    SawtoothSpec,
    f_eps,
    identity,
    interior_window,
    lipschitz_ratio,
    pointwise_cutoff_g,
    product_lipschitz_bound,
    quadratic,
    sawtooth,
    sawtooth_grid,
)
from cutoff_lab.norms import h1_norm_window

SPEC = SawtoothSpec(eps_saw=1 / 16, delta=0.1, delta_prime=0.02)


@pytest.fixture(scope="module")
def saw_pair():
    L, h = sawtooth_grid(SPEC)
    u, v = sawtooth(SPEC, L, h)
    return u, v, h


def test_quadratic():
    u = sample({"kind": "linear", "slope": 2.0}, 2, 1 / 8)
    assert np.array_equal(quadratic(u).samples[:, 0], (2.0 * u.x) ** 2)


def test_f_eps_small_ball(pair, smooth_samples):
    """F_eps(0) = 0 and F_eps(u) = u^2 on the small ball."""
    cfg = CutoffConfig(pair=pair, epsilon=0.25)
    assert not np.any(f_eps(zeros(8, 1 / 64), cfg).samples)
    u = smooth_samples[0] * 0.01
    assert np.allclose(f_eps(u, cfg).samples, u.samples**2, atol=1e-15)


def test_pointwise_cutoff_g():
    """g = u^2 below delta, 0 above 2 delta."""
    spec = PointwiseCutoffSpec(delta=0.5)
    u = sample({"kind": "linear"}, 2, 1 / 16)
    g = pointwise_cutoff_g(u, spec).samples[:, 0]
    small = np.abs(u.x) <= 0.5
    assert np.array_equal(g[small], u.x[small] ** 2)
    assert not np.any(g[np.abs(u.x) >= 1.0])

    with pytest.raises(ConfigurationError):
        PointwiseCutoffSpec(delta=0.0)


def test_sawtooth_spec_validation():
    with pytest.raises(ConfigurationError):
        SawtoothSpec(eps_saw=1 / 16, delta=0.1, delta_prime=0.05)
    with pytest.raises(ConfigurationError):
        SawtoothSpec(eps_saw=0.3, delta=0.1, delta_prime=0.02)
    with pytest.raises(ConfigurationError):
        SawtoothSpec(eps_saw=1 / 16, delta=-0.1, delta_prime=0.02)
    assert SPEC.tooth_count == 160
    assert SPEC.tooth_width == pytest.approx(1 / 160)


def test_sawtooth_grid_puts_tips_on_grid_points():
    L, h = sawtooth_grid(SPEC)
    assert (L, h) == (2, 1 / (64 * 160))
    with pytest.raises(ConfigurationError):
        sawtooth_grid(SPEC, points_per_half_tooth=3)


def test_sawtooth_shape(saw_pair):
    """Peaks delta/2, slopes +-1/eps_saw, zero off [0, 1]."""
    u, v, h = saw_pair
    assert u.max_abs() == pytest.approx(0.05, rel=1e-12)
    assert not np.any(u.samples[(u.x < 0) | (u.x > 1)])
    slopes = np.abs(derivative(u).samples[:, 0])
    assert slopes.max() == pytest.approx(16.0, rel=1e-9)
    assert not np.any((v - u).samples[(u.x < 0) | (u.x > 1)])


def test_sawtooth_rejects_coarse_grid():
    with pytest.raises(ConfigurationError):
        sawtooth(SPEC, 2, 1 / 640)


def test_shift_is_constant_on_interior_window(saw_pair):
    """v - u = delta' on [4h, 1 - 4h]."""
    u, v, h = saw_pair
    window = interior_window(h)
    expected = SPEC.delta_prime * np.sqrt(1.0 - 8.0 * h)
    assert h1_norm_window(v - u, window) == pytest.approx(expected, rel=1e-9)


def test_pointwise_cutoff_ratio_blows_up(saw_pair):
    """The g quotient on the sawtooth pair is at least about 2 / eps_saw."""
    u, v, h = saw_pair
    spec = PointwiseCutoffSpec(delta=SPEC.delta)
    ratio = lipschitz_ratio(lambda f: pointwise_cutoff_g(f, spec), u, v, 0.5, window=interior_window(h))
    assert ratio >= 1.9 / SPEC.eps_saw


def test_identity_ratio(smooth_samples):
    u, v = smooth_samples[0], smooth_samples[1]
    assert lipschitz_ratio(identity, u, v, 0.5) == pytest.approx(1.0, rel=1e-12)
    assert lipschitz_ratio(identity, u, v, 0.5, window=Window(0.0, 1.0)) == pytest.approx(1.0, rel=1e-12)


def test_degenerate_ratio(smooth_samples, saw_pair):
    u = smooth_samples[0]
    with pytest.raises(DegenerateRatioError):
        lipschitz_ratio(quadratic, u, u, 0.5)

    s, t, _ = saw_pair
    with pytest.raises(DegenerateRatioError):
        lipschitz_ratio(quadratic, s, t, 0.5, window=Window(-2.0, -1.0))


def test_product_lipschitz_bound(pair, smooth_samples):
    cfg = CutoffConfig(pair=pair, epsilon=0.25)
    u, v = smooth_samples[0], smooth_samples[1]
    assert product_lipschitz_bound(u, u, cfg, 0.5) == 0.0
    assert product_lipschitz_bound(u, v, cfg, 0.5, c_prod=2.0) == pytest.approx(
        2.0 * product_lipschitz_bound(u, v, cfg, 0.5), rel=1e-12
    )
