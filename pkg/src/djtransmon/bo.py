"""Born-Oppenheimer reduction of the internal mode.

The internal (fast) mode is assumed to sit in its ground state at every
qubit phase phi.  Its ground energy, either in harmonic approximation
(analytic) or from per-phi diagonalization (numeric), is the correction
potential added to the classical energy-phase relation; the sum defines the
effective single-mode qubit Hamiltonian.  The same machinery provides the
offset-charge dispersion inherited from the internal mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .fourier import DEFAULT_M_MAX, DEFAULT_N_GRID, PeriodicPotential, phi_grid
from .models import fast_hamiltonian_at_phi, g_envelope, u_classical
from .operators import (DEFAULT_N_CUT_SINGLE, ChargeBasisOperator, Spectrum,
                        build_single_mode, charge_to_phase, eigensolve)
from .params import DerivedParams

__all__ = [
    "BO_PHI_POINTS",
    "BOPotential",
    "DispersionModel",
    "u_corr_analytic",
    "u_corr_numeric",
    "bo_potential",
    "build_bo_hamiltonian",
    "build_classical_hamiltonian",
    "eps0_int",
    "u_disp_shape",
    "u_corr_with_charge",
    "dispersion_model",
    "eps01_model",
]

# phi points for the per-phi fast-mode solves; over-resolves every potential
# in scope before periodic spline interpolation onto the sampling grid
BO_PHI_POINTS = 201


@dataclass(frozen=True)
class BOPotential:
    """Correction and total single-mode potential of one BO reduction."""

    variant: str
    u_corr: PeriodicPotential
    u_bo: PeriodicPotential
    params_snapshot: DerivedParams
    N_g_used: float = 0.0


@dataclass(frozen=True)
class DispersionModel:
    """Offset-charge dispersion inherited by the qubit from the internal mode."""

    eps0_int: float
    u_disp: PeriodicPotential
    eps01_model: float


def u_corr_analytic(phi, params: DerivedParams):
    """Zero-point energy of the internal mode in harmonic approximation.

    ``sqrt(2 E_C_int E_J_Sigma) * g(phi)^(1/2)``; equals the oscillator
    ground energy of the fast Hamiltonian at each phi.
    """
    return math.sqrt(2.0 * params.E_C_int * params.E_J_Sigma) * np.sqrt(
        g_envelope(phi, params.lam))


def u_corr_numeric(params: DerivedParams, N_g: float = 0.0,
                   phi_solve: np.ndarray | None = None,
                   n_grid: int = DEFAULT_N_GRID, m_max: int = DEFAULT_M_MAX,
                   n_cut: int = DEFAULT_N_CUT_SINGLE) -> PeriodicPotential:
    """Fast-mode ground energy solved on a phi array, splined onto the grid.

    The ``1 - cos`` convention of the fast Hamiltonian already places the
    potential minimum at zero, matching the normalization of
    :func:`u_corr_analytic`.  The solve grid must be uniform over one
    period; by default 201 points spanning [-pi, pi].  The fast mode is
    even in phi, so only half the points are diagonalized.
    """
    if phi_solve is None:
        phi_solve = np.linspace(-np.pi, np.pi, BO_PHI_POINTS)
    phi_solve = np.asarray(phi_solve, dtype=float)
    steps = np.diff(phi_solve)
    if phi_solve.size < 9 or not np.allclose(steps, steps[0], rtol=1e-9, atol=1e-12):
        raise ValueError("phi_solve must be a uniform grid with at least 9 points")

    closed = math.isclose(phi_solve[-1] - phi_solve[0], 2.0 * np.pi, rel_tol=1e-9)
    x = phi_solve if closed else np.append(phi_solve, phi_solve[0] + 2.0 * np.pi)

    energies = {}

    def ground(phi: float) -> float:
        key = round(abs(math.remainder(phi, 2.0 * math.pi)), 12)
        if key not in energies:
            op = fast_hamiltonian_at_phi(key, params, N_g=N_g, n_cut=n_cut)
            energies[key] = float(eigensolve(op, 1).energies[0])
        return energies[key]

    y = np.array([ground(p) for p in x[:-1]] + [ground(x[0])])
    spline = CubicSpline(x, y, bc_type="periodic")
    samples = spline(phi_grid(n_grid))
    return PeriodicPotential.from_samples(samples, m_max=m_max)


def bo_potential(params: DerivedParams, variant: str = "analytic",
                 N_g: float = 0.0, n_grid: int = DEFAULT_N_GRID,
                 m_max: int = DEFAULT_M_MAX,
                 fast_n_cut: int = DEFAULT_N_CUT_SINGLE) -> BOPotential:
    """Assemble ``U_BO = U_classical + U_corr`` for either correction variant."""
    if variant not in ("analytic", "numeric"):
        raise ValueError(f"unknown BO variant {variant!r}")
    grid = phi_grid(n_grid)
    if variant == "analytic":
        corr = PeriodicPotential.from_samples(
            np.asarray(u_corr_analytic(grid, params)), m_max=m_max)
    else:
        corr = u_corr_numeric(params, N_g=N_g, n_grid=n_grid, m_max=m_max,
                              n_cut=fast_n_cut)
    total = PeriodicPotential.from_samples(
        u_classical(grid, params.lam, params.E_J_Sigma) + corr.samples, m_max=m_max)
    return BOPotential(variant=variant, u_corr=corr, u_bo=total,
                       params_snapshot=params, N_g_used=N_g if variant == "numeric" else 0.0)


def build_bo_hamiltonian(params: DerivedParams, variant: str = "analytic",
                         n_cut: int = DEFAULT_N_CUT_SINGLE, N_g: float = 0.0,
                         n_grid: int = DEFAULT_N_GRID,
                         m_max: int = DEFAULT_M_MAX) -> ChargeBasisOperator:
    """Single-mode qubit Hamiltonian ``4 E_C (n - n_g)^2 + U_BO(phi)``."""
    pot = bo_potential(params, variant=variant, N_g=N_g, n_grid=n_grid, m_max=m_max)
    return build_single_mode(params.E_C, params.n_g, pot.u_bo, n_cut)


def build_classical_hamiltonian(params: DerivedParams,
                                n_cut: int = DEFAULT_N_CUT_SINGLE,
                                n_grid: int = DEFAULT_N_GRID,
                                m_max: int = DEFAULT_M_MAX) -> ChargeBasisOperator:
    """Single-mode qubit Hamiltonian with the bare classical potential."""
    pot = PeriodicPotential.from_samples(
        u_classical(phi_grid(n_grid), params.lam, params.E_J_Sigma), m_max=m_max)
    return build_single_mode(params.E_C, params.n_g, pot, n_cut)


def eps0_int(params: DerivedParams) -> float:
    """Peak-to-peak charge dispersion of the internal-mode ground state.

    Transmon asymptotics with charging energy E_C_int and Josephson energy
    E_J_Sigma: ``2^5 sqrt(2/pi) E_C_int (E_J_Sigma / 2 E_C_int)^(3/4)
    exp(-sqrt(8 E_J_Sigma / E_C_int))``.
    """
    ratio = params.E_J_Sigma / params.E_C_int
    if ratio < 1.0:
        raise ValueError("asymptotic dispersion requires E_J_Sigma / E_C_int >= 1")
    return (32.0 * math.sqrt(2.0 / math.pi) * params.E_C_int
            * (0.5 * ratio) ** 0.75 * math.exp(-math.sqrt(8.0 * ratio)))


def u_disp_shape(phi, params: DerivedParams):
    """Phase profile of the inherited dispersion, normalized to 1 at phi = 0.

    ``g^(3/4) exp[-sqrt(8 E_JS / E_C_int) (sqrt(g) - 1)]`` with the envelope
    ``g(phi)``; the power-law factor wins at g -> 0, so the value there is 0.
    """
    g = g_envelope(phi, params.lam)
    root = math.sqrt(8.0 * params.E_J_Sigma / params.E_C_int)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = g ** 0.75 * np.exp(-root * (np.sqrt(g) - 1.0))
    return np.where(g > 0.0, val, 0.0)


def u_corr_with_charge(phi, params: DerivedParams, N_g: float):
    """Correction potential with its offset-charge dependence restored.

    ``U_corr(0) + eps0_int * u_disp(phi) * sin^2(pi N_g)``; 1-periodic in
    N_g and reducing to :func:`u_corr_analytic` at integer N_g.
    """
    return (u_corr_analytic(phi, params)
            + eps0_int(params) * u_disp_shape(phi, params)
            * math.sin(math.pi * N_g) ** 2)


def _phase_expectation(spectrum: Spectrum, values_on_grid: np.ndarray,
                       level: int) -> float:
    """<level| f(phi) |level> for a single-mode charge-basis eigenvector."""
    n_cut = spectrum.n_cut_used[0]
    psi = charge_to_phase(spectrum.vectors[:, level], n_cut, values_on_grid.size)
    return float(np.real(np.sum(values_on_grid * np.abs(psi) ** 2)))


def dispersion_model(params: DerivedParams, n_cut: int = DEFAULT_N_CUT_SINGLE,
                     n_grid: int = DEFAULT_N_GRID,
                     m_max: int = DEFAULT_M_MAX) -> DispersionModel:
    """First-order model of the qubit charge dispersion.

    ``eps01 = eps0_int (<1|u_disp|1> - <0|u_disp|0>)`` with the matrix
    elements taken in the phase representation of the analytic-BO
    eigenstates.
    """
    op = build_bo_hamiltonian(params, variant="analytic", n_cut=n_cut,
                              n_grid=n_grid, m_max=m_max)
    spectrum = eigensolve(op, 2, with_vectors=True)
    grid_vals = np.asarray(u_disp_shape(phi_grid(n_grid), params))
    bracket = (_phase_expectation(spectrum, grid_vals, 1)
               - _phase_expectation(spectrum, grid_vals, 0))
    eps0 = eps0_int(params)
    shape = PeriodicPotential.from_samples(grid_vals, m_max=m_max)
    return DispersionModel(eps0_int=eps0, u_disp=shape, eps01_model=eps0 * bracket)


def eps01_model(params: DerivedParams, **kwargs) -> float:
    """Shortcut for :func:`dispersion_model`'s predicted qubit dispersion."""
    return dispersion_model(params, **kwargs).eps01_model
