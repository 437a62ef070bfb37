"""Circuit parameters of the capacitively shunted double-junction element.

Unit conventions used throughout the package:

* energies are E/h in GHz,
* capacitances in fF,
* phases in radians,
* offset charges in Cooper pairs (2e).

With these units ``e^2/h = 38.7405 GHz*fF``, so a charging energy obtained
from a total capacitance ``C_tot`` is ``E_C = 38.7405 / (2 * C_tot)`` GHz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

__all__ = [
    "E2_OVER_H",
    "CircuitSpec",
    "DerivedParams",
    "ValidationError",
    "DomainError",
    "derive_from_capacitances",
    "derive_from_energies",
    "derive_params",
    "transform_offsets",
    "invert_offsets",
    "build_constrained_sweep",
    "star_configuration",
]

# e^2/h in GHz*fF (CODATA e = 1.602176634e-19 C, h = 6.62607015e-34 J*s)
E2_OVER_H = 38.7405

SWEEP_IDS = ("lambda-sweep", "ratio-sweep", "k-sweep")


class ValidationError(ValueError):
    """Inconsistent or incomplete circuit specification."""


class DomainError(ValueError):
    """Parameters outside the physically admissible domain."""


@dataclass(frozen=True)
class CircuitSpec:
    """Raw circuit input, in exactly one of two equivalent forms.

    Capacitance form: shunt capacitance ``C`` and junction capacitances
    ``C_J1``, ``C_J2`` (fF) together with junction energies ``E_J1``,
    ``E_J2`` (GHz).

    Energy form: qubit and internal charging energies ``E_C``, ``E_C_int``
    (GHz), capacitance asymmetry ``k``, junction asymmetry ``lam`` and the
    total Josephson energy ``E_J_Sigma`` (GHz).

    Offset charges may be given per junction (``n_g1``, ``n_g2``) or in the
    qubit/internal frame (``n_g``, ``N_g``); mixing the two is rejected.
    """

    C: float | None = None
    C_J1: float | None = None
    C_J2: float | None = None
    E_J1: float | None = None
    E_J2: float | None = None

    E_C: float | None = None
    E_C_int: float | None = None
    k: float | None = None
    lam: float | None = None
    E_J_Sigma: float | None = None

    n_g1: float | None = None
    n_g2: float | None = None
    n_g: float | None = None
    N_g: float | None = None

    def form(self) -> str:
        """Return ``"capacitance"`` or ``"energy"``; raise if ambiguous."""
        cap = [self.C, self.C_J1, self.C_J2, self.E_J1, self.E_J2]
        eng = [self.E_C, self.E_C_int, self.k, self.lam, self.E_J_Sigma]
        cap_set, eng_set = [v is not None for v in cap], [v is not None for v in eng]
        if all(cap_set) and not any(eng_set):
            return "capacitance"
        if all(eng_set) and not any(cap_set):
            return "energy"
        raise ValidationError(
            "exactly one specification form must be fully populated "
            "(capacitance: C, C_J1, C_J2, E_J1, E_J2 | "
            "energy: E_C, E_C_int, k, lam, E_J_Sigma)"
        )

    def offsets(self, k: float) -> tuple[float, float, float, float]:
        """Resolve offsets to ``(n_g1, n_g2, n_g, N_g)`` given asymmetry k."""
        junction = self.n_g1 is not None or self.n_g2 is not None
        mode = self.n_g is not None or self.N_g is not None
        if junction and mode:
            raise ValidationError("offsets must be given as (n_g1, n_g2) or (n_g, N_g), not both")
        if junction:
            ng1 = self.n_g1 if self.n_g1 is not None else 0.0
            ng2 = self.n_g2 if self.n_g2 is not None else 0.0
            ng, Ng = transform_offsets(ng1, ng2, k)
        else:
            ng = self.n_g if self.n_g is not None else 0.0
            Ng = self.N_g if self.N_g is not None else 0.0
            ng1, ng2 = invert_offsets(ng, Ng, k)
        return ng1, ng2, ng, Ng


@dataclass(frozen=True)
class DerivedParams:
    """Complete set of derived energy scales for one circuit configuration.

    All energies are E/h in GHz; capacitances fF; offsets in Cooper pairs.
    """

    # junction-frame charging energies and charge-charge coupling
    E_C1: float
    E_C2: float
    g: float
    # qubit/internal-frame charging energies
    E_C: float
    E_C_int: float
    # Josephson energies and asymmetries
    E_J1: float
    E_J2: float
    E_J_Sigma: float
    E_J_Delta: float
    lam: float
    k: float
    # capacitances (reconstructed when the input was energy-form)
    C: float
    C_J1: float
    C_J2: float
    # offsets in both frames
    n_g1: float = 0.0
    n_g2: float = 0.0
    n_g: float = 0.0
    N_g: float = 0.0

    @property
    def ratio_int(self) -> float:
        """E_J_Sigma / E_C_int, the transmon ratio of the internal mode."""
        return self.E_J_Sigma / self.E_C_int

    def with_offsets(self, n_g: float = 0.0, N_g: float = 0.0) -> "DerivedParams":
        """Copy with new qubit/internal offsets (junction frame follows)."""
        ng1, ng2 = invert_offsets(n_g, N_g, self.k)
        return replace(self, n_g=n_g, N_g=N_g, n_g1=ng1, n_g2=ng2)


def transform_offsets(n_g1: float, n_g2: float, k: float) -> tuple[float, float]:
    """Map junction-frame offsets to the qubit/internal frame.

    Offsets transform with the same linear map as the charges:
    ``n_g = (1-k)/2 * n_g1 + (1+k)/2 * n_g2`` and ``N_g = n_g1 - n_g2``.
    """
    return 0.5 * (1.0 - k) * n_g1 + 0.5 * (1.0 + k) * n_g2, n_g1 - n_g2


def invert_offsets(n_g: float, N_g: float, k: float) -> tuple[float, float]:
    """Inverse of :func:`transform_offsets` (the map is unimodular)."""
    return n_g + 0.5 * (1.0 + k) * N_g, n_g - 0.5 * (1.0 - k) * N_g


def _lambda(E_J1: float, E_J2: float) -> float:
    s = E_J1 + E_J2
    if s == 0.0:
        return 0.0
    return min(4.0 * E_J1 * E_J2 / s**2, 1.0)


def derive_from_capacitances(spec: CircuitSpec) -> DerivedParams:
    """Derive all energy scales from a capacitance-form specification.

    Charging energies follow from the inverse capacitance matrix of the
    (C, C_J1, C_J2) network:

    * ``E_C1 = e^2 (C + C_J2) / (2 C_Sigma^2)``
    * ``E_C2 = e^2 (C + C_J1) / (2 C_Sigma^2)``
    * ``g = 4 e^2 C / C_Sigma^2``
    * ``C_Sigma^2 = C (C_J1 + C_J2) + C_J1 C_J2``

    and in the qubit/internal frame

    * ``E_C = e^2 / (2 (C + C_J1 C_J2 / (C_J1 + C_J2)))``
    * ``E_C_int = e^2 / (2 (C_J1 + C_J2))``.
    """
    if spec.form() != "capacitance":
        raise ValidationError("capacitance-form specification required")
    C, CJ1, CJ2 = spec.C, spec.C_J1, spec.C_J2
    EJ1, EJ2 = spec.E_J1, spec.E_J2
    if C <= 0 or CJ1 <= 0 or CJ2 <= 0:
        raise DomainError("all capacitances must be positive")
    if EJ1 < 0 or EJ2 < 0:
        raise DomainError("Josephson energies must be non-negative")

    CJs = CJ1 + CJ2
    C_sigma_sq = C * CJs + CJ1 * CJ2
    E_C1 = E2_OVER_H * (C + CJ2) / (2.0 * C_sigma_sq)
    E_C2 = E2_OVER_H * (C + CJ1) / (2.0 * C_sigma_sq)
    g = 4.0 * E2_OVER_H * C / C_sigma_sq
    E_C = E2_OVER_H / (2.0 * (C + CJ1 * CJ2 / CJs))
    E_C_int = E2_OVER_H / (2.0 * CJs)
    k = (CJ1 - CJ2) / CJs

    ng1, ng2, ng, Ng = spec.offsets(k)
    return DerivedParams(
        E_C1=E_C1, E_C2=E_C2, g=g, E_C=E_C, E_C_int=E_C_int,
        E_J1=EJ1, E_J2=EJ2, E_J_Sigma=EJ1 + EJ2, E_J_Delta=EJ1 - EJ2,
        lam=_lambda(EJ1, EJ2), k=k, C=C, C_J1=CJ1, C_J2=CJ2,
        n_g1=ng1, n_g2=ng2, n_g=ng, N_g=Ng,
    )


def derive_from_energies(spec: CircuitSpec) -> DerivedParams:
    """Derive all parameters (capacitances included) from the energy form.

    Junction energies are recovered as ``E_J_Sigma (1 -/+ sqrt(1-lam)) / 2``
    with the convention ``E_J1 <= E_J2`` (the physics is exchange symmetric).
    Round-tripping through :func:`derive_from_capacitances` reproduces the
    inputs to 1e-12 relative.
    """
    if spec.form() != "energy":
        raise ValidationError("energy-form specification required")
    E_C, E_C_int = spec.E_C, spec.E_C_int
    k, lam, EJS = spec.k, spec.lam, spec.E_J_Sigma
    if not 0.0 <= lam <= 1.0:
        raise DomainError("junction asymmetry lam must lie in [0, 1]")
    if not abs(k) < 1.0:
        raise DomainError("capacitance asymmetry k must satisfy |k| < 1")
    if E_C <= 0 or E_C_int <= 0:
        raise DomainError("charging energies must be positive")
    if EJS < 0:
        raise DomainError("E_J_Sigma must be non-negative")

    root = math.sqrt(max(0.0, 1.0 - lam))
    EJ1 = 0.5 * EJS * (1.0 - root)
    EJ2 = 0.5 * EJS * (1.0 + root)

    CJs = E2_OVER_H / (2.0 * E_C_int)
    CJ1 = 0.5 * CJs * (1.0 + k)
    CJ2 = 0.5 * CJs * (1.0 - k)
    C = E2_OVER_H / (2.0 * E_C) - CJ1 * CJ2 / CJs
    if C <= 0.0:
        raise DomainError(
            f"E_C = {E_C} GHz too large for E_C_int = {E_C_int} GHz: "
            "implied shunt capacitance is non-positive"
        )

    C_sigma_sq = C * CJs + CJ1 * CJ2
    E_C1 = E2_OVER_H * (C + CJ2) / (2.0 * C_sigma_sq)
    E_C2 = E2_OVER_H * (C + CJ1) / (2.0 * C_sigma_sq)
    g = 4.0 * E2_OVER_H * C / C_sigma_sq

    ng1, ng2, ng, Ng = spec.offsets(k)
    return DerivedParams(
        E_C1=E_C1, E_C2=E_C2, g=g, E_C=E_C, E_C_int=E_C_int,
        E_J1=EJ1, E_J2=EJ2, E_J_Sigma=EJS, E_J_Delta=EJ1 - EJ2,
        lam=lam, k=k, C=C, C_J1=CJ1, C_J2=CJ2,
        n_g1=ng1, n_g2=ng2, n_g=ng, N_g=Ng,
    )


def derive_params(spec: CircuitSpec) -> DerivedParams:
    """Dispatch to the converter matching the populated specification form."""
    if spec.form() == "capacitance":
        return derive_from_capacitances(spec)
    return derive_from_energies(spec)


def from_energies(E_C: float, E_C_int: float, lam: float, E_J_Sigma: float,
                  k: float = 0.0, n_g: float = 0.0, N_g: float = 0.0) -> DerivedParams:
    """Convenience wrapper building :class:`DerivedParams` from plain numbers."""
    return derive_from_energies(CircuitSpec(
        E_C=E_C, E_C_int=E_C_int, k=k, lam=lam, E_J_Sigma=E_J_Sigma,
        n_g=n_g, N_g=N_g,
    ))


# Constraints shared by the published parameter sweeps: qubit charging energy
# fixed at 0.2 GHz and the qubit mode pinned to the transmon point
# lam * E_J_Sigma / 4 = 50 E_C.
_E_C_FIXED = 0.2
_TRANSMON_POINT = 50.0
_RATIO_FIXED = 32.0
_LAM_FIXED = 0.95


def build_constrained_sweep(study: str, grid) -> list[DerivedParams]:
    """Generate the constrained parameter family of one published sweep.

    ``lambda-sweep``
        varies lam; fixes E_C = 0.2 GHz, lam E_J_Sigma / 4 = 50 E_C,
        E_J_Sigma / E_C_int = 32 and k = 0.
    ``ratio-sweep``
        varies E_J_Sigma / E_C_int; fixes lam = 0.95 with the same qubit
        constraints and k = 0.
    ``k-sweep``
        varies k; fixes lam = 0.95 and E_J_Sigma / E_C_int = 32.
    """
    if study not in SWEEP_IDS:
        raise ValidationError(f"unknown sweep id {study!r}; valid: {', '.join(SWEEP_IDS)}")
    grid = list(grid)
    if not grid:
        raise ValidationError("sweep grid must be non-empty")

    out = []
    for value in grid:
        if study == "lambda-sweep":
            lam = float(value)
            if lam <= 0.0:
                raise DomainError("lambda-sweep requires lam > 0")
            EJS = 4.0 * _TRANSMON_POINT * _E_C_FIXED / lam
            out.append(from_energies(_E_C_FIXED, EJS / _RATIO_FIXED, lam, EJS))
        elif study == "ratio-sweep":
            ratio = float(value)
            if ratio <= 0.0:
                raise DomainError("ratio-sweep requires a positive ratio")
            EJS = 4.0 * _TRANSMON_POINT * _E_C_FIXED / _LAM_FIXED
            out.append(from_energies(_E_C_FIXED, EJS / ratio, _LAM_FIXED, EJS))
        else:
            k = float(value)
            EJS = 4.0 * _TRANSMON_POINT * _E_C_FIXED / _LAM_FIXED
            out.append(from_energies(_E_C_FIXED, EJS / _RATIO_FIXED, _LAM_FIXED, EJS, k=k))
    return out


def star_configuration() -> DerivedParams:
    """The reference configuration marked by stars in the published sweeps.

    lam = 0.95, E_C = 0.2 GHz, lam E_J_Sigma / 4 = 50 E_C,
    E_J_Sigma / E_C_int = 32, k = 0.
    """
    return build_constrained_sweep("k-sweep", [0.0])[0]
