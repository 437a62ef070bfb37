"""Spectra of capacitively shunted double-Josephson-junction circuits.

Four models of the same circuit are exposed: the exact two-mode
Hamiltonian, a boundary-condition-simplified two-mode variant, the
classical single-mode reduction, and Born-Oppenheimer single-mode models
(analytic and numeric correction).  Alongside the spectra, the package
extracts Josephson-harmonic content and the offset-charge dispersion the
qubit inherits from the internal mode.
"""

from .analysis import (ErrorReport, StudyResult, STUDY_IDS, classify_levels,
                       dispersion_sweep, error_metrics, full_qubit_dispersion,
                       harmonic_table, model_deltas, qubit_excitations,
                       reference_spectrum, reproduce_study, solve_model,
                       transmon_reference)
from .bo import (BOPotential, DispersionModel, bo_potential,
                 build_bo_hamiltonian, build_classical_hamiltonian,
                 dispersion_model, eps0_int, eps01_model, u_corr_analytic,
                 u_corr_numeric, u_corr_with_charge, u_disp_shape)
from .config import Numerics, RunConfig, load_config
from .fourier import NumericsError, PeriodicPotential, phi_grid, sample_and_fourier
from .models import (ModelId, ej_eff_internal, ej_eff_slow, f_of_phi,
                     fast_hamiltonian_at_phi, g_envelope, theta_min,
                     u_classical, u_prime, u_simple, u_transformed)
from .operators import (ChargeBasisOperator, ConvergenceError, Spectrum,
                        UnsupportedPotentialError, build_single_mode,
                        build_two_mode_full, build_two_mode_simplified,
                        charge_to_phase, eigensolve)
from .params import (CircuitSpec, DerivedParams, DomainError, ValidationError,
                     E2_OVER_H, build_constrained_sweep, derive_from_capacitances,
                     derive_from_energies, derive_params, from_energies,
                     invert_offsets, star_configuration, transform_offsets)

__version__ = "0.1.0"
