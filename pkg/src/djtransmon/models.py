"""Closed-form potentials and effective energies of the double-junction element.

All functions are pure and vectorized over phase arguments.  Evaluation is
intended on the principal domain ``phi, theta in [-pi, pi]``; the two-mode
potential of the transformed frame is not 2pi-periodic in phi alone (its
boundary conditions couple phi and theta), which is precisely why it is
only ever evaluated, never diagonalized.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .fourier import PeriodicPotential
from .operators import ChargeBasisOperator, build_single_mode
from .params import DerivedParams

__all__ = [
    "ModelId",
    "g_envelope",
    "u_classical",
    "f_of_phi",
    "u_prime",
    "u_transformed",
    "u_simple",
    "theta_min",
    "ej_eff_internal",
    "ej_eff_slow",
    "fast_hamiltonian_at_phi",
]


class ModelId(str, Enum):
    """The spectral models exposed by the package."""

    FULL_TWO_MODE = "full-two-mode"
    SIMPLIFIED_TWO_MODE = "simplified-two-mode"
    CLASSICAL = "classical"
    BO_ANALYTIC = "bo-analytic"
    BO_NUMERIC = "bo-numeric"
    # pseudo-model for charge-dispersion studies: the internal (fast) mode
    # alone at fixed phi
    FAST_ONLY = "fast-only"


def g_envelope(phi, lam: float):
    """sqrt(1 - lam sin^2(phi/2)), the junction-series envelope function."""
    val = 1.0 - lam * np.sin(np.asarray(phi, dtype=float) / 2.0) ** 2
    return np.sqrt(np.maximum(val, 0.0))


def u_classical(phi, lam: float, E_J_Sigma: float):
    """Energy-phase relation with the internal mode pinned to its minimum."""
    return -E_J_Sigma * g_envelope(phi, lam)


def f_of_phi(phi, params: DerivedParams):
    """Minima-line phase drag ``k phi/2 + arctan((E_JD/E_JS) tan(phi/2))``.

    Continuous on (-pi, pi); at phi = +/-pi the arctan takes its one-sided
    limit ``sign(phi) sign(E_J_Delta) pi/2``.
    """
    phi = np.asarray(phi, dtype=float)
    beta = params.E_J_Delta / params.E_J_Sigma if params.E_J_Sigma else 0.0
    half = phi / 2.0
    cos_half = np.cos(half)
    with np.errstate(divide="ignore", invalid="ignore"):
        arct = np.arctan(beta * np.tan(half))
    limit = np.sign(np.sin(half)) * np.sign(beta) * (np.pi / 2.0)
    arct = np.where(np.abs(cos_half) < 1e-12, limit, arct)
    return params.k * half + arct


def _s_sign(phi):
    """Envelope sign, +1 on the half-open principal cell |phi| < pi."""
    c = np.cos(np.asarray(phi, dtype=float) / 2.0)
    return np.where(c >= 0.0, 1.0, -1.0)


def u_prime(phi, theta, params: DerivedParams):
    """Two-mode potential in minima-line form.

    ``-s(phi) E_JS cos(theta - f(phi)) sqrt(1 - lam sin^2(phi/2))``;
    pointwise identical to :func:`u_transformed`.
    """
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return (-_s_sign(phi) * params.E_J_Sigma
            * np.cos(theta - f_of_phi(phi, params))
            * g_envelope(phi, params.lam))


def u_transformed(phi, theta, params: DerivedParams):
    """Two-mode potential straight from the qubit/internal mode change.

    ``-E_JS cos(phi/2) cos(theta - k phi/2) - E_JD sin(phi/2) sin(theta - k phi/2)``.
    """
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    alpha = theta - params.k * phi / 2.0
    return (-params.E_J_Sigma * np.cos(phi / 2.0) * np.cos(alpha)
            - params.E_J_Delta * np.sin(phi / 2.0) * np.sin(alpha))


def u_simple(phi, theta, params: DerivedParams):
    """Simplified potential with decoupled boundary conditions (f = 0, s = +1)."""
    theta = np.asarray(theta, dtype=float)
    return -params.E_J_Sigma * np.cos(theta) * g_envelope(phi, params.lam)


def theta_min(phi, params: DerivedParams):
    """Location of the potential minimum of the internal mode at fixed phi."""
    return f_of_phi(phi, params) + np.pi * (1.0 - _s_sign(phi)) / 2.0


def ej_eff_internal(phi, params: DerivedParams):
    """Effective Josephson energy of the internal mode (junctions in parallel at phi=0)."""
    return params.E_J_Sigma * g_envelope(phi, params.lam)


def ej_eff_slow(params: DerivedParams) -> float:
    """Effective Josephson energy of the qubit mode (junctions in series)."""
    return params.lam * params.E_J_Sigma / 4.0


def fast_hamiltonian_at_phi(phi: float, params: DerivedParams, N_g: float = 0.0,
                            n_cut: int = 25) -> ChargeBasisOperator:
    """Internal-mode Hamiltonian at frozen qubit phase.

    ``4 E_C_int (N - N_g)^2 + E_J_eff(phi) (1 - cos(theta))``; the
    ``1 - cos`` convention puts the potential minimum at zero, so the
    ground-state energy is directly the zero-point correction.
    """
    ej = float(ej_eff_internal(phi, params))
    potential = PeriodicPotential.from_coefficients([ej, -ej])
    return build_single_mode(params.E_C_int, N_g, potential, n_cut)
