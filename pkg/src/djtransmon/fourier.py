"""Tabulated 2pi-periodic potentials and their cosine-series coefficients.

A potential ``U(phi) = sum_m U_m cos(m phi)`` is held on the uniform grid
``phi_j = -pi + 2 pi j / N``.  The coefficients follow the convention
``U_0 = (1/2pi) int U dphi`` and ``U_m = (1/pi) int U cos(m phi) dphi`` for
``m >= 1``; on a periodic grid the rectangle rule used here is spectrally
accurate, so coefficients come straight from an FFT.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "DEFAULT_N_GRID",
    "DEFAULT_M_MAX",
    "PeriodicPotential",
    "NumericsError",
    "phi_grid",
    "sample_and_fourier",
]

DEFAULT_N_GRID = 256
DEFAULT_M_MAX = 32


class NumericsError(ArithmeticError):
    """Non-finite values or violated numeric preconditions."""


def phi_grid(n_grid: int = DEFAULT_N_GRID) -> np.ndarray:
    """Uniform phase grid phi_j = -pi + 2 pi j / n_grid, j = 0..n_grid-1."""
    return -np.pi + 2.0 * np.pi * np.arange(n_grid) / n_grid


@dataclass(frozen=True)
class PeriodicPotential:
    """A real 2pi-periodic potential tabulated with its cosine coefficients.

    Attributes
    ----------
    samples:
        values of U on :func:`phi_grid` of size ``n_grid``.
    coeffs:
        cosine coefficients ``U_m`` for m = 0..m_max.
    odd_residual:
        largest sine coefficient magnitude found in the samples; zero for
        even potentials up to rounding.
    even:
        True when ``odd_residual`` is negligible against the potential scale.
    """

    samples: np.ndarray
    coeffs: np.ndarray
    odd_residual: float
    even: bool

    @property
    def n_grid(self) -> int:
        return self.samples.size

    @property
    def m_max(self) -> int:
        return self.coeffs.size - 1

    @property
    def grid(self) -> np.ndarray:
        return phi_grid(self.n_grid)

    def __call__(self, phi) -> np.ndarray:
        """Evaluate the cosine series at arbitrary phase values."""
        phi = np.asarray(phi, dtype=float)
        m = np.arange(self.coeffs.size)
        return np.cos(np.multiply.outer(phi, m)) @ self.coeffs

    def reconstruction_error(self) -> float:
        """Max deviation between samples and the truncated cosine series."""
        return float(np.max(np.abs(self(self.grid) - self.samples)))

    @staticmethod
    def from_samples(samples: np.ndarray, m_max: int = DEFAULT_M_MAX,
                     even_tol: float = 1e-10) -> "PeriodicPotential":
        """Build from grid samples; extracts coefficients by FFT."""
        samples = np.asarray(samples, dtype=float)
        n = samples.size
        if n < 4 * m_max:
            raise NumericsError(f"n_grid = {n} must be at least 4*m_max = {4 * m_max}")
        if n & (n - 1):
            raise NumericsError(f"n_grid = {n} must be a power of two")
        if not np.all(np.isfinite(samples)):
            raise NumericsError("potential samples must be finite")

        # grid starts at -pi, so spectral components pick up a (-1)^m twist
        fft = np.fft.rfft(samples)
        signs = (-1.0) ** np.arange(fft.size)
        cos_all = 2.0 * signs * fft.real / n
        cos_all[0] *= 0.5
        sin_all = -2.0 * signs * fft.imag / n
        coeffs = cos_all[: m_max + 1].copy()

        odd_residual = float(np.max(np.abs(sin_all))) if sin_all.size else 0.0
        scale = float(np.max(np.abs(samples))) or 1.0
        return PeriodicPotential(
            samples=samples, coeffs=coeffs,
            odd_residual=odd_residual, even=odd_residual <= even_tol * scale,
        )

    @staticmethod
    def from_coefficients(coeffs, n_grid: int = DEFAULT_N_GRID) -> "PeriodicPotential":
        """Build an exactly band-limited potential from cosine coefficients."""
        coeffs = np.asarray(coeffs, dtype=float)
        m = np.arange(coeffs.size)
        samples = np.cos(np.multiply.outer(phi_grid(n_grid), m)) @ coeffs
        return PeriodicPotential(samples=samples, coeffs=coeffs.copy(),
                                 odd_residual=0.0, even=True)


def sample_and_fourier(potential_fn: Callable[[np.ndarray], np.ndarray],
                       n_grid: int = DEFAULT_N_GRID,
                       m_max: int = DEFAULT_M_MAX) -> PeriodicPotential:
    """Tabulate a 2pi-periodic function and extract its cosine coefficients.

    ``n_grid`` must be a power of two with ``n_grid >= 4 * m_max``.  Raises
    :class:`NumericsError` on non-finite samples.
    """
    samples = np.asarray(potential_fn(phi_grid(n_grid)), dtype=float)
    if samples.shape != (n_grid,):
        samples = np.broadcast_to(samples, (n_grid,)).astype(float)
    return PeriodicPotential.from_samples(samples, m_max=m_max)
