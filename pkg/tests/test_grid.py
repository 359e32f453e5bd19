"""
Tests for grid functions, windows and the basic grid operations.
"""

import numpy as np
import pytest

from cutoff_lab.exceptions import ConfigurationError, GridMismatchError, ShiftError
from cutoff_lab.grid import (
    GridFunction,
    Window,
    derivative,
    pointwise_multiply,
    sample,
    translate,
    unit_windows,
    zeros,
)

L, H = 8, 1 / 64


def test_sample_zero():
    """The zero description samples to an all-zero function."""
    u = sample({"kind": "zero"}, 4, 1 / 64)
    assert u.size == 2 * 4 * 64 + 1
    assert u.components == 1
    assert not np.any(u.samples)


def test_sample_exp_growth_symmetric():
    """exp(eta |x| / 2) is positive and symmetric on the grid."""
    u = sample({"kind": "exp_growth", "eta": 0.5}, L, H)
    assert np.all(u.samples > 0)
    assert np.array_equal(u.samples, u.samples[::-1])
    assert u.samples[u.index_of(0.0), 0] == 1.0


def test_sample_sawtooth_description():
    """A closed-form sawtooth peaks at delta / 2 when its tips are grid points."""
    u = sample({"kind": "sawtooth", "delta": 0.1, "eps_saw": 1 / 16}, 2, 1 / 640)
    assert u.max_abs() == pytest.approx(0.05, rel=1e-12)
    assert not np.any(u.samples[u.x < 0])


def test_sample_callable_vector_valued():
    """Callables may return one column per component."""
    u = sample(lambda x: np.column_stack([x, 2 * x]), 2, 1 / 8, n=2)
    assert u.components == 2
    assert np.allclose(u.samples[:, 1], 2 * u.x)

    with pytest.raises(ConfigurationError):
        sample(lambda x: np.column_stack([x, x]), 2, 1 / 8, n=3)


def test_invalid_grid_parameters():
    """Non-integer 1/h or L is a configuration error."""
    with pytest.raises(ConfigurationError):
        sample({"kind": "zero"}, 4, 0.3)
    with pytest.raises(ConfigurationError):
        sample({"kind": "zero"}, 2.5, 1 / 64)
    with pytest.raises(ConfigurationError):
        GridFunction(2, 1 / 8, np.zeros(10))
    with pytest.raises(ConfigurationError):
        sample({"kind": "unknown"}, 2, 1 / 8)


def test_samples_are_read_only():
    """Grid functions are immutable."""
    u = zeros(2, 1 / 8)
    with pytest.raises(ValueError):
        u.samples[0, 0] = 1.0


def test_translate_identity_and_spike():
    """A zero shift is the identity and a shift by 1/h moves a spike by one unit."""
    spike = np.zeros(2 * L * 64 + 1)
    spike[L * 64] = 1.0
    u = GridFunction(L, H, spike)

    assert np.array_equal(translate(u, 0).samples, u.samples)
    moved = translate(u, 64)
    assert moved.samples[moved.index_of(1.0), 0] == 1.0
    assert moved.samples.sum() == 1.0


def test_translate_inverse_on_interior():
    """Shifting back recovers u on the interior."""
    u = sample(lambda x: np.sin(x), L, H)
    k = 100
    back = translate(translate(u, k), -k)
    inner = slice(k, u.size - k)
    assert np.array_equal(back.samples[inner], u.samples[inner])


def test_translate_out_of_domain():
    """Shifting by 2L or more raises ShiftError."""
    u = zeros(2, 1 / 8)
    with pytest.raises(ShiftError):
        translate(u, 32)
    with pytest.raises(ShiftError):
        translate(u, -40)


def test_derivative_constant_and_linear():
    """Finite differences are exact on constants and linear functions."""
    c = sample({"kind": "constant", "value": 3.0}, L, H)
    assert not np.any(derivative(c).samples)

    x = sample({"kind": "linear", "slope": 1.0}, L, H)
    assert np.allclose(derivative(x).samples, 1.0, atol=1e-12)


def test_derivative_is_linear(smooth_samples):
    """derivative(a u + b v) = a u' + b v'."""
    u, v = smooth_samples[0], smooth_samples[1]
    combined = derivative(u * 2.5 + v * -0.75).samples
    expected = 2.5 * derivative(u).samples - 0.75 * derivative(v).samples
    assert np.allclose(combined, expected, atol=1e-12)


def test_derivative_of_sawtooth():
    """The sawtooth has slope +-1/eps_saw away from its tips."""
    u = sample({"kind": "sawtooth", "delta": 0.1, "eps_saw": 1 / 16}, 2, 1 / 2560)
    du = np.abs(derivative(u).samples[:, 0])
    inside = (u.x > 0.01) & (u.x < 0.99)
    assert np.median(du[inside]) == pytest.approx(16.0, rel=1e-9)


def test_pointwise_multiply():
    """Unit, zero and linear multipliers."""
    x = sample({"kind": "linear"}, 2, 1 / 16)
    one = sample({"kind": "constant", "value": 1.0}, 2, 1 / 16)

    assert np.array_equal(pointwise_multiply(x, one).samples, x.samples)
    assert not np.any(pointwise_multiply(x, zeros(2, 1 / 16)).samples)
    assert np.allclose(pointwise_multiply(x, x).samples[:, 0], x.x**2)


def test_pointwise_multiply_errors():
    """Different grids and vector multipliers are rejected."""
    u = zeros(2, 1 / 16)
    with pytest.raises(GridMismatchError):
        pointwise_multiply(u, zeros(2, 1 / 8))
    with pytest.raises(GridMismatchError):
        pointwise_multiply(u, zeros(2, 1 / 16, n=2))
    with pytest.raises(GridMismatchError):
        u + zeros(3, 1 / 16)


def test_windows():
    """Unit windows tile the domain; unaligned windows are rejected."""
    windows = unit_windows(3)
    assert len(windows) == 6
    assert (windows[0].a, windows[-1].b) == (-3.0, 3.0)

    u = zeros(3, 1 / 8)
    assert Window(0.0, 1.0).indices(u) == (24, 32)
    with pytest.raises(ConfigurationError):
        Window(0.01, 1.0).indices(u)
    with pytest.raises(ConfigurationError):
        Window(2.0, 4.0).indices(u)
    with pytest.raises(ConfigurationError):
        Window(1.0, 1.0)


def test_csv_format(tmp_path, smooth_samples):
    """CSV output has an x,u1 header and keeps every digit."""
    u = smooth_samples[0]
    path = tmp_path / "u.csv"
    u.to_csv(path)

    assert path.read_text().splitlines()[0] == "x,u1"
    loaded = GridFunction.from_csv(path)
    assert loaded.grid_params() == u.grid_params()
    assert np.array_equal(loaded.samples, u.samples)
