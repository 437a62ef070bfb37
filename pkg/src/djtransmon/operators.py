"""Charge-basis operators for one- and two-mode circuit Hamiltonians.

Every mode lives on a truncated integer-charge lattice ``n = -n_cut..n_cut``
with 2pi-periodic boundary conditions built in.  Kinetic terms and the
charge-charge coupling are diagonal; a potential ``sum_m U_m cos(m phi)``
contributes ``U_m / 2`` on the m-th off-diagonal band.  The eigensolver is
dense and re-solves at increasing cutoff until the requested levels are
converged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .fourier import DEFAULT_M_MAX, DEFAULT_N_GRID, PeriodicPotential, phi_grid
from .params import DerivedParams

__all__ = [
    "BAND_DROP_REL",
    "CONVERGENCE_REL_TOL",
    "MAX_N_CUT",
    "ChargeBasisOperator",
    "Spectrum",
    "UnsupportedPotentialError",
    "ConvergenceError",
    "build_single_mode",
    "build_two_mode_full",
    "build_two_mode_simplified",
    "eigensolve",
    "charge_to_phase",
]

BAND_DROP_REL = 1e-12
CONVERGENCE_REL_TOL = 1e-10
MAX_N_CUT = 80
CUT_STEP = 5

DEFAULT_N_CUT_SINGLE = 25
DEFAULT_N_CUT_TWO = 15


class UnsupportedPotentialError(ValueError):
    """Potential with appreciable odd (sine) content cannot be represented."""


class ConvergenceError(RuntimeError):
    """Eigensolve did not converge before the cutoff cap.

    Carries the last two eigenvalue iterates for post-mortem inspection.
    """

    def __init__(self, message: str, last_two=None):
        super().__init__(message)
        self.last_two = last_two


@dataclass
class ChargeBasisOperator:
    """Dense real-symmetric operator over one or two charge lattices.

    ``rebuild``, when present, regenerates the same physical operator at a
    different cutoff; the eigensolver uses it for its convergence loop.
    """

    cutoffs: tuple[int, ...]
    matrix: np.ndarray
    band_widths: tuple[int, ...]
    rebuild: Optional[Callable[[tuple[int, ...]], "ChargeBasisOperator"]] = field(
        default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def mode_dims(self) -> tuple[int, ...]:
        return tuple(2 * c + 1 for c in self.cutoffs)

    def symmetry_defect(self) -> float:
        scale = float(np.max(np.abs(self.matrix))) or 1.0
        return float(np.max(np.abs(self.matrix - self.matrix.T))) / scale


@dataclass
class Spectrum:
    """Ascending eigenvalues with excitation energies and optional vectors."""

    energies: np.ndarray
    excitations: np.ndarray
    vectors: Optional[np.ndarray]
    n_cut_used: tuple[int, ...]
    labels: Optional[list[str]] = None
    channel_weights: Optional[np.ndarray] = None

    @property
    def n_levels(self) -> int:
        return self.energies.size

    def excitation(self, i: int) -> float:
        return float(self.excitations[i])


def _charges(n_cut: int) -> np.ndarray:
    return np.arange(-n_cut, n_cut + 1, dtype=float)


def _retained_bands(coeffs: np.ndarray) -> list[int]:
    if coeffs.size <= 1:
        return []
    scale = float(np.max(np.abs(coeffs)))
    if scale == 0.0:
        return []
    return [m for m in range(1, coeffs.size) if abs(coeffs[m]) >= BAND_DROP_REL * scale]


def _potential_matrix(coeffs: np.ndarray, dim: int) -> np.ndarray:
    """Toeplitz band matrix of a cosine series on one charge lattice."""
    mat = np.zeros((dim, dim))
    np.fill_diagonal(mat, coeffs[0])
    for m in _retained_bands(coeffs):
        if m >= dim:
            break
        idx = np.arange(dim - m)
        mat[idx, idx + m] += 0.5 * coeffs[m]
        mat[idx + m, idx] += 0.5 * coeffs[m]
    return mat


def build_single_mode(E_C_mode: float, n_g_mode: float,
                      potential: PeriodicPotential, n_cut: int) -> ChargeBasisOperator:
    """Single-mode Hamiltonian ``4 E_C (n - n_g)^2 + U(phi)``.

    The potential must be even in phi (all four potentials in scope are);
    odd content raises :class:`UnsupportedPotentialError`.
    """
    if not potential.even:
        raise UnsupportedPotentialError(
            f"potential has odd (sine) content {potential.odd_residual:.2e}; "
            "only even potentials are representable with real symmetric bands"
        )
    n = _charges(n_cut)
    mat = _potential_matrix(potential.coeffs, n.size)
    mat[np.diag_indices_from(mat)] += 4.0 * E_C_mode * (n - n_g_mode) ** 2

    bands = _retained_bands(potential.coeffs)
    op = ChargeBasisOperator(
        cutoffs=(n_cut,), matrix=mat, band_widths=(max(bands) if bands else 0,))
    op.rebuild = lambda cuts: build_single_mode(E_C_mode, n_g_mode, potential, cuts[0])
    return op


def build_two_mode_full(params: DerivedParams, n_cut: int = DEFAULT_N_CUT_TWO) -> ChargeBasisOperator:
    """Exact two-mode Hamiltonian in the junction charge basis.

    ``H = 4 E_C1 (n1 - n_g1)^2 + 4 E_C2 (n2 - n_g2)^2
    - g (n1 - n_g1)(n2 - n_g2) - E_J1 cos(phi1) - E_J2 cos(phi2)``.

    The sign of the charge-coupling term is fixed by requiring that the
    kinetic quadratic form transforms exactly into
    ``4 E_C (n - n_g)^2 + 4 E_C_int (N - N_g)^2`` under the qubit/internal
    mode change (with zero offsets the opposite sign is unitarily
    equivalent via n2 -> -n2).
    """
    if n_cut < 5:
        raise ValueError("two-mode build requires n_cut >= 5")
    y1 = _charges(n_cut) - params.n_g1
    y2 = _charges(n_cut) - params.n_g2
    d = y1.size

    diag = (4.0 * params.E_C1 * y1[:, None] ** 2
            + 4.0 * params.E_C2 * y2[None, :] ** 2
            - params.g * y1[:, None] * y2[None, :]).ravel()

    eye = np.eye(d)
    hop = np.zeros((d, d))
    idx = np.arange(d - 1)
    hop[idx, idx + 1] = 1.0
    hop[idx + 1, idx] = 1.0

    mat = np.kron(-0.5 * params.E_J1 * hop, eye) + np.kron(eye, -0.5 * params.E_J2 * hop)
    mat[np.diag_indices_from(mat)] += diag

    op = ChargeBasisOperator(cutoffs=(n_cut, n_cut), matrix=mat, band_widths=(1, 1))
    op.rebuild = lambda cuts: build_two_mode_full(params, cuts[0])
    return op


def build_two_mode_simplified(params: DerivedParams,
                              n_cut: int | tuple[int, int] = DEFAULT_N_CUT_TWO,
                              n_grid: int = DEFAULT_N_GRID,
                              m_max: int = DEFAULT_M_MAX) -> ChargeBasisOperator:
    """Two-mode Hamiltonian with the decoupled-boundary simplified potential.

    ``H = 4 E_C (n - n_g)^2 + 4 E_C_int (N - N_g)^2
    - E_J_Sigma cos(theta) sqrt(1 - lam sin^2(phi/2))``;
    the envelope enters as cosine bands in the qubit index and a
    nearest-neighbour hop in the internal index.

    A scalar ``n_cut`` seeds the internal mode; the qubit-mode cutoff is
    floored at the envelope band reach plus margin, since near lam = 1 the
    envelope carries appreciable bands up to m_max and clipping them makes
    the convergence ladder crawl.  Pass a tuple for explicit per-mode
    cutoffs (the rebuild hook does).
    """
    from .models import g_envelope  # local import; models builds on operators

    envelope = PeriodicPotential.from_samples(
        g_envelope(phi_grid(n_grid), params.lam), m_max=m_max)
    bands = _retained_bands(envelope.coeffs)
    reach = max(bands) if bands else 0

    if isinstance(n_cut, tuple):
        cut_q, cut_i = n_cut
    else:
        cut_q, cut_i = max(n_cut, reach + 13), n_cut
    if min(cut_q, cut_i) < 5:
        raise ValueError("two-mode build requires n_cut >= 5")

    n = _charges(cut_q) - params.n_g
    N = _charges(cut_i) - params.N_g

    env_mat = _potential_matrix(envelope.coeffs, n.size)
    hop = np.zeros((N.size, N.size))
    idx = np.arange(N.size - 1)
    hop[idx, idx + 1] = 1.0
    hop[idx + 1, idx] = 1.0

    mat = np.kron(env_mat, -0.5 * params.E_J_Sigma * hop)
    diag = (4.0 * params.E_C * n[:, None] ** 2
            + 4.0 * params.E_C_int * N[None, :] ** 2).ravel()
    mat[np.diag_indices_from(mat)] += diag

    op = ChargeBasisOperator(
        cutoffs=(cut_q, cut_i), matrix=mat, band_widths=(reach, 1))
    op.rebuild = lambda cuts: build_two_mode_simplified(params, tuple(cuts), n_grid, m_max)
    return op


def _solve_dense(matrix: np.ndarray, n_levels: int, with_vectors: bool):
    if with_vectors:
        vals, vecs = scipy.linalg.eigh(matrix, subset_by_index=(0, n_levels - 1))
        # deterministic sign: largest-magnitude component made positive
        for j in range(vecs.shape[1]):
            pivot = int(np.argmax(np.abs(vecs[:, j])))
            if vecs[pivot, j] < 0.0:
                vecs[:, j] = -vecs[:, j]
        return vals, vecs
    vals = scipy.linalg.eigh(matrix, subset_by_index=(0, n_levels - 1), eigvals_only=True)
    return vals, None


def eigensolve(op: ChargeBasisOperator, n_levels: int,
               with_vectors: bool = False,
               tol: float = CONVERGENCE_REL_TOL,
               max_cut: int = MAX_N_CUT,
               converge: bool = True) -> Spectrum:
    """Solve the dense symmetric eigenproblem with a convergence contract.

    When the operator carries a ``rebuild`` hook, the solve is repeated with
    every cutoff increased by 5 until the requested eigenvalues change by
    less than ``tol`` relative; :class:`ConvergenceError` is raised if any
    cutoff would exceed ``max_cut``.  Raw operators, or ``converge=False``,
    solve once at the given cutoff.
    """
    if n_levels < 1 or n_levels > op.dim:
        raise ValueError(f"n_levels = {n_levels} outside [1, {op.dim}]")

    vals, vecs = _solve_dense(op.matrix, n_levels, with_vectors)
    cut_used = op.cutoffs
    if converge and op.rebuild is not None:
        history = [vals]
        current = op
        while True:
            next_cuts = tuple(c + CUT_STEP for c in current.cutoffs)
            if any(c > max_cut for c in next_cuts):
                raise ConvergenceError(
                    f"eigenvalues not converged to {tol:g} at cutoff cap {max_cut}",
                    last_two=tuple(history[-2:]))
            finer = op.rebuild(next_cuts)
            vals2, vecs2 = _solve_dense(finer.matrix, n_levels, with_vectors)
            scale = max(1.0, float(np.max(np.abs(vals2))))
            drift = float(np.max(np.abs(vals2 - history[-1]))) / scale
            history.append(vals2)
            vals, vecs, cut_used, current = vals2, vecs2, next_cuts, finer
            if drift <= tol:
                break

    return Spectrum(
        energies=vals.copy(),
        excitations=vals - vals[0],
        vectors=vecs,
        n_cut_used=cut_used,
    )


def charge_to_phase(vector: np.ndarray, n_cut: int,
                    n_grid: int = DEFAULT_N_GRID) -> np.ndarray:
    """Map charge-basis amplitudes to the phase grid by discrete Fourier sum.

    ``psi(phi_j) = sum_n c_n exp(i n phi_j) / sqrt(n_grid)``; with
    ``n_grid >= dim`` the map is an isometry, so grid probabilities sum to
    the charge-basis norm.  Accepts a vector or a (dim, ...) block; the
    transform acts on the leading axis.
    """
    dim = 2 * n_cut + 1
    if vector.shape[0] != dim:
        raise ValueError(f"leading axis {vector.shape[0]} != 2*n_cut+1 = {dim}")
    if n_grid < dim:
        raise ValueError("phase grid must be at least as large as the charge basis")
    phases = np.exp(1j * np.multiply.outer(
        -np.pi + 2.0 * np.pi * np.arange(n_grid) / n_grid,
        np.arange(-n_cut, n_cut + 1, dtype=float)))
    return (phases @ vector.reshape(dim, -1)).reshape((n_grid,) + vector.shape[1:]) / np.sqrt(n_grid)
