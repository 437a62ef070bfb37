"""Command-line front end.

Subcommands: ``spectrum``, ``study``, ``potentials``, ``harmonics``,
``dispersion``.  Exit codes: 0 success, 2 configuration/validation error,
3 numeric failure (non-convergence or non-finite output).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import analysis, bo
from .analysis import STUDY_IDS, StudyResult, reproduce_study, solve_model
from .config import RunConfig, config_from_mapping, read_toml
from .fourier import NumericsError, PeriodicPotential, phi_grid
from .models import ModelId, u_classical
from .operators import ConvergenceError
from .params import DomainError, ValidationError, derive_params

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_POTENTIAL_CURVES = ("classical", "bo", "corr", "u_disp", "u_prime_minmax")

# placeholder circuit used when a command needs numerics only (e.g. `study`,
# whose circuits are fixed by the study constraints)
_DUMMY_CIRCUIT = {"E_C": 0.2, "E_C_int": 1.25, "k": 0.0, "lambda": 1.0,
                  "E_J_Sigma": 40.0}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="djtransmon",
        description="Spectra and studies of the double-junction transmon circuit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_config=True):
        p.add_argument("--config", type=Path, default=None,
                       help="TOML file with [circuit], [offsets], [numerics]")
        p.add_argument("--param", action="append", default=[], metavar="SECTION.KEY=VALUE",
                       help="config override, e.g. circuit.E_C=0.2 (repeatable)")
        p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--threads", type=int, default=None)
        p.add_argument("--ncut", type=int, default=None, help="initial single-mode cutoff")
        p.add_argument("--tol", type=float, default=None, help="eigensolver relative tolerance")

    p = sub.add_parser("spectrum", help="eigenvalues of one model")
    common(p)
    p.add_argument("--model", required=True, choices=[m.value for m in ModelId])
    p.add_argument("--levels", type=int, default=6)

    p = sub.add_parser("study", help="reproduce a named sweep")
    common(p)
    p.add_argument("--study", required=True, metavar="ID",
                   help=f"one of: {', '.join(STUDY_IDS)}")

    p = sub.add_parser("potentials", help="tabulate potential curves")
    common(p)
    p.add_argument("--which", required=True,
                   help="comma-separated subset of: " + ", ".join(_POTENTIAL_CURVES))

    p = sub.add_parser("harmonics", help="harmonic ratios U_m/|U_1| of a potential")
    common(p)
    p.add_argument("--potential", choices=("classical", "bo"), default="bo")
    p.add_argument("--mmax", type=int, default=6)

    p = sub.add_parser("dispersion", help="level energies vs internal offset charge")
    common(p)
    p.add_argument("--model", default="full-two-mode",
                   choices=("full-two-mode", "bo-numeric", "fast-only"))
    p.add_argument("--points", type=int, default=41)
    return parser


def _apply_overrides(data: dict, overrides: list[str]) -> dict:
    for item in overrides:
        try:
            key, value = item.split("=", 1)
            section, name = key.split(".", 1)
        except ValueError:
            raise ValidationError(
                f"--param needs SECTION.KEY=VALUE form, got {item!r}") from None
        data.setdefault(section, {})[name] = float(value)
    return data


def _numerics_overrides(args) -> dict:
    out = {}
    if args.threads is not None:
        out["threads"] = args.threads
    if args.ncut is not None:
        out["n_cut"] = args.ncut
    if args.tol is not None:
        out["tolerance"] = args.tol
    return out


def _load_raw(args) -> dict:
    if args.config is not None:
        if not args.config.exists():
            raise ValidationError(f"config file not found: {args.config}")
        data = read_toml(args.config)
    else:
        data = {}
    return _apply_overrides(data, args.param)


def _finalize_config(data: dict, args) -> RunConfig:
    if "circuit" not in data:
        raise ValidationError("no circuit specified (use --config or --param circuit.*)")
    cfg = config_from_mapping(data)
    overrides = _numerics_overrides(args)
    if overrides:
        cfg = cfg.with_numerics(**overrides)
    return cfg


def _load_run_config(args) -> RunConfig:
    return _finalize_config(_load_raw(args), args)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _write_study(result: StudyResult, args, default_format: str = "csv") -> None:
    fmt = args.format or default_format
    if not result.is_finite():
        raise NumericsError(f"study {result.study!r} produced non-finite values")
    if args.out is None:
        import io
        buf = io.StringIO()
        if fmt == "csv":
            _study_csv_to_buffer(result, buf)
        else:
            buf.write(_study_json_text(result))
        sys.stdout.write(buf.getvalue())
    elif fmt == "csv":
        result.to_csv(args.out)
    else:
        result.to_json(args.out)


def _study_csv_to_buffer(result: StudyResult, buf) -> None:
    rows = np.column_stack([result.axis, *result.columns.values()])
    buf.write(",".join(result.header()) + "\n")
    for row in rows:
        buf.write(",".join(f"{v:.11e}" for v in row) + "\n")


def _study_json_text(result: StudyResult) -> str:
    return json.dumps({
        "study": result.study,
        "axis_name": result.axis_name,
        "axis": result.axis.tolist(),
        "columns": {k: v.tolist() for k, v in result.columns.items()},
        "provenance": result.provenance,
    }, indent=2, sort_keys=True) + "\n"


def _cmd_spectrum(args) -> int:
    data = _load_raw(args)
    model = ModelId(args.model)
    circuit = data.get("circuit", {})
    if (model is ModelId.CLASSICAL and "E_C_int" not in circuit
            and "C_J1" not in circuit and "E_C" in circuit):
        # the classical model never reads the internal charging energy;
        # fill a placeholder so the energy-form spec validates
        circuit["E_C_int"] = float(circuit.get("E_J_Sigma", 32.0)) / 32.0
    cfg = _finalize_config(data, args)
    params = derive_params(cfg.circuit)
    if args.levels < 1:
        raise ValidationError("--levels must be positive")
    dim = (2 * cfg.numerics.n_cut_two + 1) ** 2 \
        if model in (ModelId.FULL_TWO_MODE, ModelId.SIMPLIFIED_TWO_MODE) \
        else 2 * cfg.numerics.n_cut + 1
    if args.levels > dim:
        raise ValidationError(
            f"--levels {args.levels} exceeds the matrix dimension {dim} at the "
            "configured cutoff")
    classify = model is ModelId.SIMPLIFIED_TWO_MODE
    spectrum = solve_model(params, model, args.levels,
                           with_vectors=classify, numerics=cfg.numerics,
                           classify=classify)
    payload = {
        "model": model.value,
        "eigenvalues_GHz": spectrum.energies.tolist(),
        "excitations_GHz": spectrum.excitations.tolist(),
        "labels": spectrum.labels,
        "n_cut_used": list(spectrum.n_cut_used),
        "params": {k: getattr(params, k) for k in (
            "E_C1", "E_C2", "g", "E_C", "E_C_int", "E_J1", "E_J2",
            "E_J_Sigma", "E_J_Delta", "lam", "k", "C", "C_J1", "C_J2",
            "n_g1", "n_g2", "n_g", "N_g")},
    }
    if not all(np.isfinite(payload["eigenvalues_GHz"])):
        raise NumericsError("non-finite eigenvalues")
    if (args.format or "json") == "csv":
        lines = ["level,energy_GHz,excitation_GHz,label"]
        for i, (e, x) in enumerate(zip(spectrum.energies, spectrum.excitations)):
            label = spectrum.labels[i] if spectrum.labels else ""
            lines.append(f"{i},{e:.11e},{x:.11e},{label}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _cmd_study(args) -> int:
    # studies carry their own circuit constraints; config contributes numerics only
    data = read_toml(args.config) if args.config is not None else {}
    table = dict(data.get("numerics", {}))
    table.update({k.split(".", 1)[1]: v for k, v in
                  (item.split("=", 1) for item in args.param)
                  if k.startswith("numerics.")})
    numerics = config_from_mapping({"circuit": _DUMMY_CIRCUIT, "numerics": table}).numerics
    overrides = _numerics_overrides(args)
    if overrides:
        numerics = replace(numerics, **overrides)
    result = reproduce_study(args.study, numerics)
    _write_study(result, args)
    return EXIT_OK


def _cmd_potentials(args) -> int:
    cfg = _load_run_config(args)
    params = derive_params(cfg.circuit)
    which = [w.strip() for w in args.which.split(",") if w.strip()]
    unknown = set(which) - set(_POTENTIAL_CURVES)
    if unknown:
        raise ValidationError(
            f"unknown curves: {', '.join(sorted(unknown))}; "
            f"valid: {', '.join(_POTENTIAL_CURVES)}")
    if not which:
        raise ValidationError("--which must request at least one curve")

    grid = phi_grid(cfg.numerics.n_grid)
    columns: dict[str, np.ndarray] = {}
    pot = None
    if "bo" in which or "corr" in which:
        pot = bo.bo_potential(params, "analytic", n_grid=cfg.numerics.n_grid,
                              m_max=cfg.numerics.m_max)
    for name in which:
        if name == "classical":
            columns["classical"] = u_classical(grid, params.lam, params.E_J_Sigma)
        elif name == "bo":
            columns["bo"] = pot.u_bo.samples
        elif name == "corr":
            columns["corr"] = pot.u_corr.samples
        elif name == "u_disp":
            # dimensionful dispersion potential eps0_int * u_disp (GHz)
            columns["u_disp"] = bo.eps0_int(params) * np.asarray(
                bo.u_disp_shape(grid, params))
        else:
            umin = u_classical(grid, params.lam, params.E_J_Sigma)
            columns["u_prime_min"] = umin
            columns["u_prime_max"] = -umin
    result = StudyResult("potentials", "phi", grid, columns)
    _write_study(result, args)
    return EXIT_OK


def _cmd_harmonics(args) -> int:
    cfg = _load_run_config(args)
    params = derive_params(cfg.circuit)
    nm = cfg.numerics
    if args.potential == "classical":
        potential = PeriodicPotential.from_samples(
            u_classical(phi_grid(nm.n_grid), params.lam, params.E_J_Sigma),
            m_max=nm.m_max)
    else:
        potential = bo.bo_potential(params, "analytic", n_grid=nm.n_grid,
                                    m_max=nm.m_max).u_bo
    ratios = analysis.harmonic_table(potential, args.mmax)
    result = StudyResult(
        f"harmonics-{args.potential}", "m",
        np.arange(2, args.mmax + 1, dtype=float),
        {"U_ratio": ratios, "U_ratio_abs": np.abs(ratios)})
    _write_study(result, args)
    return EXIT_OK


def _cmd_dispersion(args) -> int:
    cfg = _load_run_config(args)
    params = derive_params(cfg.circuit)
    if args.points < 2:
        raise ValidationError("--points must be at least 2")
    grid = np.linspace(0.0, 1.0, args.points)
    result = analysis.dispersion_sweep(args.model, params, grid, cfg.numerics)
    _write_study(result, args)
    return EXIT_OK


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "study": _cmd_study,
    "potentials": _cmd_potentials,
    "harmonics": _cmd_harmonics,
    "dispersion": _cmd_dispersion,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ConvergenceError, NumericsError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
