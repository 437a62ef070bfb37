"""Run configuration: TOML circuit files and numerics settings."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .params import CircuitSpec, ValidationError

__all__ = ["Numerics", "RunConfig", "load_config", "config_from_mapping"]

_CIRCUIT_KEYS = {
    "C": "C", "C_J1": "C_J1", "C_J2": "C_J2", "E_J1": "E_J1", "E_J2": "E_J2",
    "E_C": "E_C", "E_C_int": "E_C_int", "k": "k", "lam": "lam",
    "lambda": "lam", "E_J_Sigma": "E_J_Sigma",
}
_OFFSET_KEYS = {"n_g1": "n_g1", "n_g2": "n_g2", "n_g": "n_g", "N_g": "N_g"}


@dataclass(frozen=True)
class Numerics:
    """Numerical knobs shared by all solvers.

    ``n_cut`` seeds single-mode solves, ``n_cut_two`` seeds each mode of a
    two-mode solve; both grow inside the eigensolver until converged to
    ``tolerance`` (relative).  ``threads`` bounds the sweep worker pool
    (None picks the available parallelism); it never affects values.
    """

    n_cut: int = 25
    n_cut_two: int = 15
    n_grid: int = 256
    m_max: int = 32
    tolerance: float = 1e-10
    threads: int | None = None

    def __post_init__(self):
        if not 0.0 < self.tolerance <= 1e-4:
            raise ValidationError("tolerance must lie in (0, 1e-4]")
        if self.n_cut < 1 or self.n_cut_two < 5:
            raise ValidationError("cutoffs too small (n_cut >= 1, n_cut_two >= 5)")
        if self.n_grid < 4 * self.m_max or self.n_grid & (self.n_grid - 1):
            raise ValidationError("n_grid must be a power of two with n_grid >= 4*m_max")
        if self.threads is not None and self.threads < 1:
            raise ValidationError("threads must be positive")

    @property
    def worker_count(self) -> int:
        return self.threads if self.threads else (os.cpu_count() or 1)


@dataclass(frozen=True)
class RunConfig:
    """Parsed configuration of one CLI invocation."""

    circuit: CircuitSpec
    numerics: Numerics = field(default_factory=Numerics)

    def with_numerics(self, **kwargs) -> "RunConfig":
        return replace(self, numerics=replace(self.numerics, **kwargs))


def config_from_mapping(data: dict) -> RunConfig:
    """Build a :class:`RunConfig` from nested ``[circuit]/[offsets]/[numerics]`` tables."""
    unknown = set(data) - {"circuit", "offsets", "numerics"}
    if unknown:
        raise ValidationError(f"unknown config sections: {', '.join(sorted(unknown))}")

    circuit_kwargs = {}
    for key, value in dict(data.get("circuit", {})).items():
        if key not in _CIRCUIT_KEYS:
            raise ValidationError(f"unknown [circuit] key {key!r}")
        circuit_kwargs[_CIRCUIT_KEYS[key]] = float(value)
    for key, value in dict(data.get("offsets", {})).items():
        if key not in _OFFSET_KEYS:
            raise ValidationError(f"unknown [offsets] key {key!r}")
        circuit_kwargs[_OFFSET_KEYS[key]] = float(value)

    numerics_kwargs = {}
    table = dict(data.get("numerics", {}))
    for key in ("n_cut", "n_cut_two", "m_max"):
        if key in table:
            numerics_kwargs[key] = int(table.pop(key))
    if "N_grid" in table:
        numerics_kwargs["n_grid"] = int(table.pop("N_grid"))
    if "n_grid" in table:
        numerics_kwargs["n_grid"] = int(table.pop("n_grid"))
    if "tolerance" in table:
        numerics_kwargs["tolerance"] = float(table.pop("tolerance"))
    if "threads" in table:
        numerics_kwargs["threads"] = int(table.pop("threads"))
    if table:
        raise ValidationError(f"unknown [numerics] keys: {', '.join(sorted(table))}")

    spec = CircuitSpec(**circuit_kwargs)
    spec.form()  # validate early: exactly one form populated
    return RunConfig(circuit=spec, numerics=Numerics(**numerics_kwargs))


def read_toml(path: str | Path) -> dict:
    """Load a TOML file into a plain nested dict."""
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def load_config(path: str | Path) -> RunConfig:
    """Parse a TOML config file with [circuit], [offsets], [numerics] sections."""
    return config_from_mapping(read_toml(path))
