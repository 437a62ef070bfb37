"""Level classification, error metrics, harmonic tables and study runners.

Accuracy of the single-mode models is always judged against the exact
two-mode spectrum through per-level relative errors of excitation energies
``delta_i = |E_i' - E_i| / E_i`` and their running sum ``Delta_j``.  Qubit
levels of two-mode spectra are identified by their weight in the
ground channel of the internal mode.
"""

from __future__ import annotations

import json
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bo import (bo_potential, build_bo_hamiltonian, build_classical_hamiltonian,
                 dispersion_model, eps0_int, u_disp_shape)
from .config import Numerics
from .fourier import NumericsError, PeriodicPotential, phi_grid
from .models import ModelId, fast_hamiltonian_at_phi, u_classical
from .operators import (Spectrum, build_two_mode_full, build_two_mode_simplified,
                        charge_to_phase, eigensolve)
from .params import (DerivedParams, ValidationError, build_constrained_sweep,
                     from_energies, star_configuration)

__all__ = [
    "ErrorReport",
    "StudyResult",
    "STUDY_IDS",
    "classify_levels",
    "solve_model",
    "reference_spectrum",
    "qubit_excitations",
    "error_metrics",
    "model_deltas",
    "harmonic_table",
    "dispersion_sweep",
    "full_qubit_dispersion",
    "transmon_reference",
    "reproduce_study",
]

AMBIGUOUS_BAND = (0.45, 0.55)
_EXTRA_LEVELS = 4

# published sweep grids (resolution chosen to resolve every plotted feature)
LAMBDA_GRID = np.linspace(0.5, 1.0, 26)
RATIO_GRID = np.geomspace(8.0, 64.0, 25)
K_GRID = np.linspace(0.0, 0.6, 25)
NG_GRID = np.linspace(0.0, 1.0, 41)


def _map_ordered(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# level classification and error metrics


def classify_levels(spectrum: Spectrum, params: DerivedParams,
                    n_grid: int = 256) -> list[str]:
    """Label each two-mode eigenstate as a qubit level or internal excitation.

    The weight of a state in the internal ground channel is
    ``w = sum_phi |<chi_0^phi | psi(phi, .)>|^2`` with ``chi_0^phi`` the
    fast-mode ground state at that phi.  States with ``w >= 0.5`` are qubit
    levels, re-indexed 0, 1, 2, ... in energy order; the rest are labeled
    ``internal``.  Weights in [0.45, 0.55] are flagged with a warning.
    """
    if spectrum.vectors is None:
        raise ValueError("classification requires eigenvectors")
    c_n, c_N = spectrum.n_cut_used
    dim_n, dim_N = 2 * c_n + 1, 2 * c_N + 1
    grid = phi_grid(n_grid)

    chi = np.empty((n_grid, dim_N))
    cache: dict[float, np.ndarray] = {}
    for j, phi in enumerate(grid):
        key = round(abs(phi), 12)
        if key not in cache:
            op = fast_hamiltonian_at_phi(key, params, N_g=params.N_g, n_cut=c_N)
            cache[key] = eigensolve(op, 1, with_vectors=True,
                                    converge=False).vectors[:, 0]
        chi[j] = cache[key]

    weights = np.empty(spectrum.n_levels)
    for level in range(spectrum.n_levels):
        psi = charge_to_phase(
            spectrum.vectors[:, level].reshape(dim_n, dim_N), c_n, n_grid)
        weights[level] = float(np.sum(np.abs(np.einsum("jN,jN->j", chi, psi)) ** 2))

    labels, qubit_index = [], 0
    for level, w in enumerate(weights):
        if AMBIGUOUS_BAND[0] <= w <= AMBIGUOUS_BAND[1]:
            warnings.warn(
                f"level {level} has ambiguous channel weight {w:.3f}",
                stacklevel=2)
        if w >= 0.5:
            labels.append(f"qubit-{qubit_index}")
            qubit_index += 1
        else:
            labels.append("internal")

    spectrum.labels = labels
    spectrum.channel_weights = weights
    return labels


def solve_model(params: DerivedParams, model, n_levels: int,
                with_vectors: bool = False,
                numerics: Numerics = Numerics(),
                N_g: float | None = None,
                phi: float = 0.0,
                classify: bool = False) -> Spectrum:
    """Build and diagonalize one of the spectral models.

    ``N_g`` overrides the internal offset for ``bo-numeric``/``fast-only``;
    ``phi`` fixes the qubit phase of ``fast-only``.  With ``classify`` set
    (simplified model only) the returned spectrum carries level labels.
    """
    model = ModelId(model)
    nm = numerics
    if model is ModelId.FULL_TWO_MODE:
        op = build_two_mode_full(params, nm.n_cut_two)
    elif model is ModelId.SIMPLIFIED_TWO_MODE:
        op = build_two_mode_simplified(params, nm.n_cut_two, nm.n_grid, nm.m_max)
    elif model is ModelId.CLASSICAL:
        op = build_classical_hamiltonian(params, nm.n_cut, nm.n_grid, nm.m_max)
    elif model is ModelId.BO_ANALYTIC:
        op = build_bo_hamiltonian(params, "analytic", nm.n_cut,
                                  n_grid=nm.n_grid, m_max=nm.m_max)
    elif model is ModelId.BO_NUMERIC:
        op = build_bo_hamiltonian(params, "numeric", nm.n_cut,
                                  N_g=params.N_g if N_g is None else N_g,
                                  n_grid=nm.n_grid, m_max=nm.m_max)
    elif model is ModelId.FAST_ONLY:
        op = fast_hamiltonian_at_phi(phi, params,
                                     N_g=params.N_g if N_g is None else N_g,
                                     n_cut=nm.n_cut)
    else:  # pragma: no cover - ModelId is a closed enumeration
        raise ValidationError(f"unsupported model {model}")

    spectrum = eigensolve(op, n_levels, with_vectors=with_vectors, tol=nm.tolerance)
    if model in (ModelId.CLASSICAL, ModelId.BO_ANALYTIC, ModelId.BO_NUMERIC):
        spectrum.labels = [f"qubit-{i}" for i in range(n_levels)]
    elif classify:
        if model is not ModelId.SIMPLIFIED_TWO_MODE:
            raise ValidationError("classification runs on the simplified two-mode model")
        classify_levels(spectrum, params, nm.n_grid)
    return spectrum


def reference_spectrum(params: DerivedParams, n_levels: int,
                       numerics: Numerics = Numerics()) -> Spectrum:
    """Exact two-mode spectrum with qubit/internal labels.

    Labels are computed on the simplified two-mode model (whose low-energy
    spectrum matches the exact one to ~1e-4 relative) and transferred by
    energy order.
    """
    simplified = solve_model(params, ModelId.SIMPLIFIED_TWO_MODE, n_levels,
                             with_vectors=True, numerics=numerics, classify=True)
    full = solve_model(params, ModelId.FULL_TWO_MODE, n_levels, numerics=numerics)
    full.labels = list(simplified.labels)
    full.channel_weights = simplified.channel_weights
    return full


def qubit_excitations(spectrum: Spectrum) -> np.ndarray:
    """Excitation energies of qubit-labeled levels, in qubit-index order."""
    if spectrum.labels is None:
        return spectrum.excitations[1:].copy()
    energies = [spectrum.energies[i] for i, lab in enumerate(spectrum.labels)
                if lab.startswith("qubit")]
    if not energies or spectrum.labels[0] != "qubit-0":
        raise ValidationError("ground state is not a qubit level; cannot anchor excitations")
    energies = np.asarray(energies)
    return energies[1:] - energies[0]


@dataclass(frozen=True)
class ErrorReport:
    """Per-level and cumulative relative errors of one model comparison."""

    deltas: np.ndarray          # delta_i, i = 1..j
    cumulative: np.ndarray      # Delta_j = sum_{i<=j} delta_i
    reference_model: str
    candidate_model: str
    j_requested: int
    truncated: bool = False
    params: DerivedParams | None = None

    def delta(self, i: int) -> float:
        return float(self.deltas[i - 1])

    def Delta(self, j: int) -> float:
        return float(self.cumulative[j - 1])


def error_metrics(reference: Spectrum, candidate: Spectrum, j_max: int,
                  reference_model: str = "full-two-mode",
                  candidate_model: str = "candidate",
                  params: DerivedParams | None = None) -> ErrorReport:
    """Relative errors of candidate qubit excitation energies vs reference.

    Both spectra are reduced to qubit excitation energies (single-mode
    spectra count every level as a qubit level).  A shortfall of available
    qubit levels truncates the report with a warning instead of failing.
    """
    ref = qubit_excitations(reference)
    cand = qubit_excitations(candidate)
    j = min(j_max, ref.size, cand.size)
    truncated = j < j_max
    if truncated:
        warnings.warn(
            f"only {j} qubit excitation(s) available; report truncated from {j_max}",
            stacklevel=2)
    deltas = np.abs(cand[:j] - ref[:j]) / ref[:j]
    return ErrorReport(deltas=deltas, cumulative=np.cumsum(deltas),
                       reference_model=reference_model, candidate_model=candidate_model,
                       j_requested=j_max, truncated=truncated, params=params)


def model_deltas(params: DerivedParams, candidates, j_max: int,
                 numerics: Numerics = Numerics()) -> dict[str, ErrorReport]:
    """Error reports of several single-mode models against one reference."""
    reference = reference_spectrum(params, j_max + 1 + _EXTRA_LEVELS, numerics)
    out = {}
    for cand in candidates:
        cand = ModelId(cand)
        spec = solve_model(params, cand, j_max + 1, numerics=numerics)
        out[cand.value] = error_metrics(reference, spec, j_max,
                                        candidate_model=cand.value, params=params)
    return out


# ---------------------------------------------------------------------------
# harmonics and charge dispersion


def harmonic_table(potential: PeriodicPotential, m_max: int) -> np.ndarray:
    """Signed harmonic ratios ``U_m / |U_1|`` for m = 2..m_max."""
    coeffs = potential.coeffs
    if m_max < 2 or m_max > potential.m_max:
        raise ValueError(f"m_max must lie in [2, {potential.m_max}]")
    scale = float(np.max(np.abs(coeffs)))
    if abs(coeffs[1]) < 1e-14 * scale or scale == 0.0:
        raise NumericsError("fundamental coefficient U_1 vanishes; cannot normalize")
    return coeffs[2:m_max + 1] / abs(coeffs[1])


def _endpoint_dispersion(build_at, n_levels: int, tol: float):
    """Energies at N_g = 0 and 1/2, solved at a common converged cutoff.

    ``build_at(N_g, n_cut)`` must return an operator (with rebuild hook when
    ``n_cut`` is None).  A shared cutoff makes the truncation bias cancel in
    the difference, which matters because dispersions sit many orders below
    the energies themselves.
    """
    cuts = []
    for ng in (0.0, 0.5):
        cuts.append(eigensolve(build_at(ng, None), n_levels, tol=tol).n_cut_used)
    common = tuple(max(c) for c in zip(*cuts))
    out = []
    for ng in (0.0, 0.5):
        op = build_at(ng, common[0])
        out.append(eigensolve(op, n_levels, tol=tol, converge=False).energies)
    return out[0], out[1], common


def full_qubit_dispersion(params: DerivedParams,
                          numerics: Numerics = Numerics()) -> float:
    """Peak-to-peak dispersion of the qubit transition with the internal offset.

    ``|E_01(N_g = 1/2) - E_01(N_g = 0)|`` from the exact two-mode model; the
    qubit offset n_g is held at its configured value.
    """
    def build(ng_int, n_cut):
        p = params.with_offsets(params.n_g, ng_int)
        return build_two_mode_full(p, numerics.n_cut_two if n_cut is None else n_cut)

    e0, e_half, _ = _endpoint_dispersion(build, 2, numerics.tolerance)
    return float(abs((e_half[1] - e_half[0]) - (e0[1] - e0[0])))


def transmon_reference(E_C: float, E_J: float, N_g_grid=(0.0, 0.5),
                       numerics: Numerics = Numerics()) -> float:
    """Peak-to-peak dispersion ``|E_01(1/2) - E_01(0)|`` of a plain transmon."""
    if E_C <= 0 or E_J < 0:
        raise ValidationError("transmon reference requires E_C > 0 and E_J >= 0")
    grid = np.atleast_1d(np.asarray(N_g_grid, dtype=float))
    if not (np.any(np.isclose(grid, 0.0)) and np.any(np.isclose(grid, 0.5))):
        raise ValidationError("N_g grid must contain the extrema 0 and 1/2")
    from .operators import build_single_mode

    potential = PeriodicPotential.from_coefficients([0.0, -E_J])

    def build(ng, n_cut):
        return build_single_mode(E_C, ng, potential,
                                 numerics.n_cut if n_cut is None else n_cut)

    e0, e_half, _ = _endpoint_dispersion(build, 2, numerics.tolerance)
    return float(abs((e_half[1] - e_half[0]) - (e0[1] - e0[0])))


_DISPERSION_MODELS = (ModelId.FULL_TWO_MODE, ModelId.BO_NUMERIC, ModelId.FAST_ONLY)


def dispersion_sweep(model, params: DerivedParams, N_g_grid=NG_GRID,
                     numerics: Numerics = Numerics(),
                     phi: float = 0.0) -> "StudyResult":
    """Level energies versus internal offset charge for one model.

    All points are solved at one common cutoff converged at the dispersion
    extrema N_g = 0 and 1/2.  Columns are absolute energies ``E0`` (and
    ``E1``, ``E01`` for two-level models).
    """
    model = ModelId(model)
    if model not in _DISPERSION_MODELS:
        raise ValidationError(
            f"dispersion sweep supports {[m.value for m in _DISPERSION_MODELS]}")
    grid = np.asarray(N_g_grid, dtype=float)
    if grid.size == 0 or np.any(grid < 0.0) or np.any(grid > 1.0):
        raise ValidationError("N_g grid must be non-empty within [0, 1]")
    n_levels = 1 if model is ModelId.FAST_ONLY else 2

    def build(ng, n_cut):
        if model is ModelId.FULL_TWO_MODE:
            p = params.with_offsets(params.n_g, ng)
            return build_two_mode_full(p, numerics.n_cut_two if n_cut is None else n_cut)
        if model is ModelId.BO_NUMERIC:
            return build_bo_hamiltonian(
                params, "numeric", numerics.n_cut if n_cut is None else n_cut,
                N_g=ng, n_grid=numerics.n_grid, m_max=numerics.m_max)
        return fast_hamiltonian_at_phi(
            phi, params, N_g=ng, n_cut=numerics.n_cut if n_cut is None else n_cut)

    _, _, common = _endpoint_dispersion(build, n_levels, numerics.tolerance)

    def solve_point(ng):
        return eigensolve(build(ng, common[0]), n_levels,
                          tol=numerics.tolerance, converge=False).energies

    energies = np.array(_map_ordered(solve_point, grid, numerics.worker_count))
    columns = {"E0": energies[:, 0]}
    if n_levels == 2:
        columns["E1"] = energies[:, 1]
        columns["E01"] = energies[:, 1] - energies[:, 0]
    return StudyResult(
        study=f"dispersion-{model.value}", axis_name="N_g", axis=grid,
        columns=columns,
        provenance={"model": model.value, "n_cut_used": list(common),
                    "params": _params_dict(params)},
    )


# ---------------------------------------------------------------------------
# named studies


@dataclass
class StudyResult:
    """A named sweep: one axis plus named metric columns, CSV/JSON ready."""

    study: str
    axis_name: str
    axis: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.axis = np.asarray(self.axis, dtype=float)
        for name, col in self.columns.items():
            col = np.asarray(col, dtype=float)
            self.columns[name] = col
            if col.shape != self.axis.shape:
                raise ValidationError(
                    f"column {name!r} length {col.size} != axis length {self.axis.size}")

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.axis))
                    and all(np.all(np.isfinite(c)) for c in self.columns.values()))

    def header(self) -> list[str]:
        return [self.axis_name, *self.columns.keys()]

    def to_csv(self, path) -> None:
        """Write header + rows; floats in scientific form, 12 significant digits."""
        if not self.is_finite():
            raise NumericsError(f"study {self.study!r} contains non-finite values")
        rows = np.column_stack([self.axis, *self.columns.values()])
        with open(path, "w", newline="") as fh:
            fh.write(",".join(self.header()) + "\n")
            for row in rows:
                fh.write(",".join(f"{v:.11e}" for v in row) + "\n")

    def to_json(self, path) -> None:
        if not self.is_finite():
            raise NumericsError(f"study {self.study!r} contains non-finite values")
        payload = {
            "study": self.study,
            "axis_name": self.axis_name,
            "axis": self.axis.tolist(),
            "columns": {k: v.tolist() for k, v in self.columns.items()},
            "provenance": self.provenance,
        }
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _params_dict(params: DerivedParams) -> dict:
    return {k: getattr(params, k) for k in (
        "E_C", "E_C_int", "lam", "E_J_Sigma", "k", "n_g", "N_g")}


def _fig1_params() -> DerivedParams:
    # E_J1 = E_J2 = 20 GHz, E_C_int = 1.25 GHz, E_C = 0.2 GHz
    return from_energies(E_C=0.2, E_C_int=1.25, lam=1.0, E_J_Sigma=40.0)


def _fig5_params(ratio: float) -> DerivedParams:
    # lam = 1, E_C = 0.2 GHz, E_J_Sigma = 40 GHz, E_C_int varied
    return from_energies(E_C=0.2, E_C_int=40.0 / ratio, lam=1.0, E_J_Sigma=40.0)


def _classical_potential(params: DerivedParams, nm: Numerics) -> PeriodicPotential:
    return PeriodicPotential.from_samples(
        u_classical(phi_grid(nm.n_grid), params.lam, params.E_J_Sigma), m_max=nm.m_max)


def _study_fig1d(nm: Numerics) -> StudyResult:
    lams = np.linspace(0.1, 1.0, 46)
    table = np.array([
        np.abs(harmonic_table(PeriodicPotential.from_samples(
            u_classical(phi_grid(nm.n_grid), lam, 1.0), m_max=nm.m_max), 4))
        for lam in lams])
    return StudyResult("fig1d", "lambda", lams, {
        "U2_ratio": table[:, 0], "U3_ratio": table[:, 1], "U4_ratio": table[:, 2],
    }, provenance={"potential": "classical", "normalization": "abs(U_m/U_1)"})


def _study_fig1e(nm: Numerics) -> StudyResult:
    params = _fig1_params()
    reference = reference_spectrum(params, 6 + _EXTRA_LEVELS, nm)
    classical = solve_model(params, ModelId.CLASSICAL, 6, numerics=nm)
    ref = qubit_excitations(reference)[:5]
    cand = qubit_excitations(classical)[:5]
    levels = np.arange(1, 6, dtype=float)
    return StudyResult("fig1e", "level", levels, {
        "E_exc_full": ref, "E_exc_classical": cand, "diff_abs": np.abs(cand - ref),
    }, provenance={"params": _params_dict(params)})


_FIG2C_LAMBDAS = (0.5, 0.75, 0.9, 1.0)


def _study_fig2c(nm: Numerics) -> StudyResult:
    grid = phi_grid(nm.n_grid)
    columns = {}
    for lam in _FIG2C_LAMBDAS:
        ejs = 4.0 * 50.0 * 0.2 / lam
        umin = u_classical(grid, lam, ejs)
        columns[f"umin_lam{lam:g}"] = umin
        columns[f"umax_lam{lam:g}"] = -umin
    return StudyResult("fig2c", "phi", grid, columns,
                       provenance={"constraint": "lam*E_J_Sigma/4 = 50*E_C, E_C = 0.2"})


def _simplified_vs_full_deltas(params: DerivedParams, nm: Numerics) -> np.ndarray:
    full = solve_model(params, ModelId.FULL_TWO_MODE, 4, numerics=nm)
    simp = solve_model(params, ModelId.SIMPLIFIED_TWO_MODE, 4, numerics=nm)
    ref, cand = full.excitations[1:], simp.excitations[1:]
    return np.abs(cand - ref) / ref


def _study_fig2d(nm: Numerics) -> StudyResult:
    sweep = build_constrained_sweep("lambda-sweep", LAMBDA_GRID)
    rows = np.array(_map_ordered(lambda p: _simplified_vs_full_deltas(p, nm),
                                 sweep, nm.worker_count))
    return StudyResult("fig2d", "lambda", LAMBDA_GRID, {
        "delta_1": rows[:, 0], "delta_2": rows[:, 1], "delta_3": rows[:, 2],
    }, provenance={"comparison": "simplified-two-mode vs full-two-mode"})


def _study_fig3a(nm: Numerics) -> StudyResult:
    params = star_configuration()
    j_max = 7
    reference = reference_spectrum(params, j_max + 1 + _EXTRA_LEVELS, nm)
    reports = {}
    for model in (ModelId.CLASSICAL, ModelId.BO_ANALYTIC):
        spec = solve_model(params, model, j_max + 1, numerics=nm)
        reports[model] = error_metrics(reference, spec, j_max,
                                       candidate_model=model.value, params=params)
    internal_idx = reference.labels.index("internal") if "internal" in reference.labels else None
    first_internal = (reference.energies[internal_idx] - reference.energies[0]
                      if internal_idx is not None else np.inf)
    ref_exc = qubit_excitations(reference)
    j = np.arange(1, j_max + 1, dtype=float)
    return StudyResult("fig3a", "j", j, {
        "Delta_classical": reports[ModelId.CLASSICAL].cumulative,
        "Delta_bo": reports[ModelId.BO_ANALYTIC].cumulative,
        "above_internal": (ref_exc[:j_max] > first_internal).astype(float),
    }, provenance={"params": _params_dict(params),
                   "first_internal_excitation": float(first_internal)})


def _delta3_pair(params: DerivedParams, nm: Numerics,
                 models=(ModelId.CLASSICAL, ModelId.BO_ANALYTIC)) -> list[float]:
    reports = model_deltas(params, models, 3, nm)
    return [reports[m.value].Delta(3) for m in models]


def _study_delta3(study: str, axis_name: str, grid, sweep_id: str, nm: Numerics,
                  models=(ModelId.CLASSICAL, ModelId.BO_ANALYTIC),
                  column_names=("Delta3_classical", "Delta3_bo")) -> StudyResult:
    sweep = build_constrained_sweep(sweep_id, grid)
    rows = np.array(_map_ordered(lambda p: _delta3_pair(p, nm, models),
                                 sweep, nm.worker_count))
    return StudyResult(study, axis_name, np.asarray(grid, dtype=float),
                       {column_names[0]: rows[:, 0], column_names[1]: rows[:, 1]},
                       provenance={"sweep": sweep_id, "j": 3})


def _study_fig3b(nm: Numerics) -> StudyResult:
    return _study_delta3("fig3b", "lambda", LAMBDA_GRID, "lambda-sweep", nm)


def _study_fig3c(nm: Numerics) -> StudyResult:
    return _study_delta3("fig3c", "ratio", RATIO_GRID, "ratio-sweep", nm)


def _study_fig3d(nm: Numerics) -> StudyResult:
    return _study_delta3("fig3d", "k", K_GRID, "k-sweep", nm)


def _study_fig4a(nm: Numerics) -> StudyResult:
    sweep = build_constrained_sweep("lambda-sweep", LAMBDA_GRID)

    def harmonics(params):
        classical = np.abs(harmonic_table(_classical_potential(params, nm), 4))
        bo = np.abs(harmonic_table(
            bo_potential(params, "analytic", n_grid=nm.n_grid, m_max=nm.m_max).u_bo, 4))
        return np.concatenate([classical, bo])

    rows = np.array(_map_ordered(harmonics, sweep, nm.worker_count))
    names = ["U2_classical", "U3_classical", "U4_classical", "U2_bo", "U3_bo", "U4_bo"]
    return StudyResult("fig4a", "lambda", LAMBDA_GRID,
                       {name: rows[:, i] for i, name in enumerate(names)},
                       provenance={"normalization": "abs(U_m/U_1)"})


_FIG4BC_LAMBDAS = (0.5, 1.0)


def _study_fig4bc(nm: Numerics) -> StudyResult:
    grid = phi_grid(nm.n_grid)
    columns = {}
    for lam in _FIG4BC_LAMBDAS:
        params = build_constrained_sweep("lambda-sweep", [lam])[0]
        pot = bo_potential(params, "analytic", n_grid=nm.n_grid, m_max=nm.m_max)
        columns[f"classical_lam{lam:g}"] = u_classical(grid, lam, params.E_J_Sigma)
        columns[f"bo_lam{lam:g}"] = pot.u_bo.samples
        columns[f"corr_lam{lam:g}"] = pot.u_corr.samples
    return StudyResult("fig4bc", "phi", grid, columns)


def _study_fig5a(nm: Numerics) -> StudyResult:
    params = _fig5_params(8.0)
    fast = dispersion_sweep(ModelId.FAST_ONLY, params, NG_GRID, nm)
    full = dispersion_sweep(ModelId.FULL_TWO_MODE, params, NG_GRID, nm)
    return StudyResult("fig5a", "N_g", NG_GRID, {
        "E_int0_shift": fast.columns["E0"] - fast.columns["E0"][0],
        "E_q0_shift": full.columns["E0"] - full.columns["E0"][0],
        "E_q1_shift": full.columns["E1"] - full.columns["E1"][0],
    }, provenance={"params": _params_dict(params), "ratio": 8.0})


_FIG5B_RATIOS = (8.0, 16.0, 32.0)


def _study_fig5b(nm: Numerics) -> StudyResult:
    # the plotted quantity is the dimensionful dispersion potential
    # eps0_int * u_disp, which is what the exponential prefactor suppresses
    grid = phi_grid(nm.n_grid)
    columns = {}
    for r in _FIG5B_RATIOS:
        params = _fig5_params(r)
        columns[f"Udisp_r{int(r)}"] = eps0_int(params) * np.asarray(
            u_disp_shape(grid, params))
    return StudyResult("fig5b", "phi", grid, columns,
                       provenance={"lam": 1.0, "E_J_Sigma": 40.0,
                                   "unit": "GHz (eps0_int * u_disp)"})


def _study_fig5c(nm: Numerics) -> StudyResult:
    def point(ratio):
        params = _fig5_params(ratio)
        full = full_qubit_dispersion(params, nm)
        model = abs(dispersion_model(params, n_cut=nm.n_cut, n_grid=nm.n_grid,
                                     m_max=nm.m_max).eps01_model)
        return full, model

    rows = np.array(_map_ordered(point, RATIO_GRID, nm.worker_count))
    transmon = transmon_reference(0.2, 10.0, numerics=nm)
    return StudyResult("fig5c", "ratio", RATIO_GRID, {
        "eps01_full": rows[:, 0],
        "eps01_model": rows[:, 1],
        "eps01_transmon": np.full(RATIO_GRID.size, transmon),
    }, provenance={"lam": 1.0, "E_J_Sigma": 40.0,
                   "transmon": {"E_C": 0.2, "E_J": 10.0}})


def _study_fig5d(nm: Numerics) -> StudyResult:
    def point(ratio):
        params = _fig5_params(ratio)
        disp = PeriodicPotential.from_samples(
            eps0_int(params) * np.asarray(u_disp_shape(phi_grid(nm.n_grid), params)),
            m_max=nm.m_max)
        bo_u1 = abs(bo_potential(params, "analytic", n_grid=nm.n_grid,
                                 m_max=nm.m_max).u_bo.coeffs[1])
        return np.abs(disp.coeffs[1:4]) / bo_u1

    rows = np.array(_map_ordered(point, RATIO_GRID, nm.worker_count))
    return StudyResult("fig5d", "ratio", RATIO_GRID, {
        "Udisp_m1": rows[:, 0], "Udisp_m2": rows[:, 1], "Udisp_m3": rows[:, 2],
    }, provenance={"normalization": "abs(U_m(U_disp)) / abs(U_1(U_BO))"})


def _study_figA1(nm: Numerics) -> StudyResult:
    return _study_delta3("figA1", "ratio", RATIO_GRID, "ratio-sweep", nm,
                         models=(ModelId.BO_ANALYTIC, ModelId.BO_NUMERIC),
                         column_names=("Delta3_analytic", "Delta3_numeric"))


def _study_figA2(nm: Numerics) -> StudyResult:
    sweep = build_constrained_sweep("ratio-sweep", RATIO_GRID)

    def point(params):
        report = model_deltas(params, [ModelId.BO_NUMERIC], 3, nm)["bo-numeric"]
        return report.deltas

    rows = np.array(_map_ordered(point, sweep, nm.worker_count))
    return StudyResult("figA2", "ratio", RATIO_GRID, {
        "delta1_numeric": rows[:, 0], "delta2_numeric": rows[:, 1],
        "delta3_numeric": rows[:, 2],
    }, provenance={"sweep": "ratio-sweep", "model": "bo-numeric"})


_STUDIES = {
    "fig1d": _study_fig1d,
    "fig1e": _study_fig1e,
    "fig2c": _study_fig2c,
    "fig2d": _study_fig2d,
    "fig3a": _study_fig3a,
    "fig3b": _study_fig3b,
    "fig3c": _study_fig3c,
    "fig3d": _study_fig3d,
    "fig4a": _study_fig4a,
    "fig4bc": _study_fig4bc,
    "fig5a": _study_fig5a,
    "fig5b": _study_fig5b,
    "fig5c": _study_fig5c,
    "fig5d": _study_fig5d,
    "figA1": _study_figA1,
    "figA2": _study_figA2,
}

STUDY_IDS = tuple(_STUDIES)


def reproduce_study(study_id: str, numerics: Numerics = Numerics()) -> StudyResult:
    """Recompute one named sweep; deterministic for fixed numerics."""
    if study_id not in _STUDIES:
        raise ValidationError(
            f"unknown study {study_id!r}; valid ids: {', '.join(STUDY_IDS)}")
    return _STUDIES[study_id](numerics)
