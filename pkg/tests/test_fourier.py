import numpy as np
import pytest

from djtransmon.fourier import (NumericsError, PeriodicPotential, phi_grid,
                                sample_and_fourier)


def closed_form_abs_cos_half(m: int) -> float:
    # |cos(phi/2)| = 2/pi + (4/pi) sum_m (-1)^(m+1) cos(m phi) / (4 m^2 - 1)
    if m == 0:
        return 2.0 / np.pi
    return (4.0 / np.pi) * (-1.0) ** (m + 1) / (4.0 * m * m - 1.0)


def test_grid_contains_zero_and_minus_pi():
    g = phi_grid(256)
    assert g[0] == -np.pi
    assert g[128] == 0.0
    assert g.size == 256


def test_single_harmonic():
    pot = sample_and_fourier(np.cos, 256, 8)
    assert pot.coeffs[1] == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(np.delete(pot.coeffs, 1))) < 1e-12
    assert pot.even


def test_constant_potential():
    pot = sample_and_fourier(lambda phi: 7.0 + 0.0 * phi, 256, 8)
    assert pot.coeffs[0] == pytest.approx(7.0, abs=1e-12)
    assert np.max(np.abs(pot.coeffs[1:])) < 1e-12


def test_abs_cos_half_ratios_match_closed_form():
    # kinked potential: tail aliasing ~ 1/N^2, so use a fine grid
    pot = sample_and_fourier(lambda phi: -np.abs(np.cos(phi / 2.0)), 4096, 8)
    for m in (2, 3, 4):
        expected = 3.0 / (4.0 * m * m - 1.0)
        assert abs(pot.coeffs[m] / pot.coeffs[1]) == pytest.approx(expected, abs=1e-6)
    assert abs(pot.coeffs[2] / pot.coeffs[1]) == pytest.approx(0.2, abs=1e-3)
    assert abs(pot.coeffs[3] / pot.coeffs[1]) == pytest.approx(0.0857, abs=1e-3)
    assert abs(pot.coeffs[4] / pot.coeffs[1]) == pytest.approx(0.0476, abs=1e-3)


def test_coefficient_signs_alternate_for_abs_cos_half():
    pot = sample_and_fourier(lambda phi: np.abs(np.cos(phi / 2.0)), 1024, 6)
    for m in range(6):
        assert np.sign(pot.coeffs[m]) == np.sign(closed_form_abs_cos_half(m))


def test_band_limited_reconstruction():
    coeffs = np.array([0.5, -2.0, 0.3, 0.0, 0.07])
    pot = PeriodicPotential.from_coefficients(coeffs, 256)
    assert pot.reconstruction_error() < 1e-10 * np.max(np.abs(pot.samples))
    back = PeriodicPotential.from_samples(pot.samples, m_max=8)
    assert back.coeffs[:5] == pytest.approx(coeffs, abs=1e-12)
    assert np.max(np.abs(back.coeffs[5:])) < 1e-12


def test_even_symmetry_detection():
    odd = sample_and_fourier(np.sin, 256, 8)
    assert not odd.even
    assert odd.odd_residual == pytest.approx(1.0, abs=1e-12)
    even = sample_and_fourier(lambda phi: np.cos(phi) + 0.2 * np.cos(3 * phi), 256, 8)
    assert even.even


def test_call_evaluates_series():
    pot = PeriodicPotential.from_coefficients([1.0, -2.0, 0.5])
    phi = np.linspace(-np.pi, np.pi, 17)
    expected = 1.0 - 2.0 * np.cos(phi) + 0.5 * np.cos(2 * phi)
    assert pot(phi) == pytest.approx(expected, abs=1e-12)


def test_grid_validation():
    with pytest.raises(NumericsError):
        sample_and_fourier(np.cos, 250, 8)  # not a power of two
    with pytest.raises(NumericsError):
        sample_and_fourier(np.cos, 16, 8)  # n_grid < 4 m_max


def test_nonfinite_samples_rejected():
    with pytest.raises(NumericsError):
        sample_and_fourier(lambda phi: np.where(phi == 0.0, np.inf, 1.0), 256, 8)
