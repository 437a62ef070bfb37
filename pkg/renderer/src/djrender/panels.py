"""Panel specifications: which columns each study plots, and on which axes.

The column sets mirror the CSV schemas documented in the djtransmon README;
a renderer invocation fails (naming the column) when the file does not carry
what the panel needs.  Error and dispersion panels use a logarithmic y axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PanelSpec:
    study: str
    axis: str
    series: dict[str, str]              # column -> legend label
    y_scale: str = "linear"             # "linear" | "log"
    x_label: str = ""
    y_label: str = ""
    shade_column: str | None = None     # 0/1 column marking a shaded region
    size: tuple[float, float] = (6.0, 4.0)

    def columns(self) -> list[str]:
        cols = [self.axis, *self.series]
        if self.shade_column:
            cols.append(self.shade_column)
        return cols


def _spec(study, axis, series, **kwargs) -> PanelSpec:
    return PanelSpec(study=study, axis=axis, series=series, **kwargs)


PANELS: dict[str, PanelSpec] = {spec.study: spec for spec in [
    _spec("fig1d", "lambda",
          {"U2_ratio": "|U2/U1|", "U3_ratio": "|U3/U1|", "U4_ratio": "|U4/U1|"},
          x_label="junction asymmetry", y_label="harmonic ratio"),
    _spec("fig1e", "level",
          {"E_exc_full": "two-mode", "E_exc_classical": "classical",
           "diff_abs": "|difference|"},
          x_label="level", y_label="excitation energy (GHz)"),
    _spec("fig2c", "phi",
          {"umin_lam0.5": "min, lam=0.5", "umax_lam0.5": "max, lam=0.5",
           "umin_lam0.75": "min, lam=0.75", "umax_lam0.75": "max, lam=0.75",
           "umin_lam0.9": "min, lam=0.9", "umax_lam0.9": "max, lam=0.9",
           "umin_lam1": "min, lam=1", "umax_lam1": "max, lam=1"},
          x_label="phase", y_label="potential (GHz)"),
    _spec("fig2d", "lambda",
          {"delta_1": "level 1", "delta_2": "level 2", "delta_3": "level 3"},
          y_scale="log", x_label="junction asymmetry", y_label="relative error"),
    _spec("fig3a", "j",
          {"Delta_classical": "classical", "Delta_bo": "BO"},
          y_scale="log", x_label="levels included", y_label="cumulative error",
          shade_column="above_internal"),
    _spec("fig3b", "lambda",
          {"Delta3_classical": "classical", "Delta3_bo": "BO"},
          y_scale="log", x_label="junction asymmetry", y_label="cumulative error"),
    _spec("fig3c", "ratio",
          {"Delta3_classical": "classical", "Delta3_bo": "BO"},
          y_scale="log", x_label="EJS/ECint", y_label="cumulative error"),
    _spec("fig3d", "k",
          {"Delta3_classical": "classical", "Delta3_bo": "BO"},
          y_scale="log", x_label="capacitance asymmetry", y_label="cumulative error"),
    _spec("fig4a", "lambda",
          {"U2_classical": "m=2 classical", "U3_classical": "m=3 classical",
           "U4_classical": "m=4 classical", "U2_bo": "m=2 BO",
           "U3_bo": "m=3 BO", "U4_bo": "m=4 BO"},
          x_label="junction asymmetry", y_label="harmonic ratio"),
    _spec("fig4bc", "phi",
          {"classical_lam0.5": "classical, lam=0.5", "bo_lam0.5": "BO, lam=0.5",
           "corr_lam0.5": "correction, lam=0.5",
           "classical_lam1": "classical, lam=1", "bo_lam1": "BO, lam=1",
           "corr_lam1": "correction, lam=1"},
          x_label="phase", y_label="potential (GHz)"),
    _spec("fig5a", "N_g",
          {"E_int0_shift": "internal ground", "E_q0_shift": "qubit 0",
           "E_q1_shift": "qubit 1"},
          x_label="internal offset charge", y_label="energy shift (GHz)"),
    _spec("fig5b", "phi",
          {"Udisp_r8": "ratio 8", "Udisp_r16": "ratio 16", "Udisp_r32": "ratio 32"},
          x_label="phase", y_label="dispersion potential (GHz)"),
    _spec("fig5c", "ratio",
          {"eps01_full": "two-mode", "eps01_model": "first-order model",
           "eps01_transmon": "transmon"},
          y_scale="log", x_label="EJS/ECint", y_label="peak-to-peak dispersion (GHz)"),
    _spec("fig5d", "ratio",
          {"Udisp_m1": "m=1", "Udisp_m2": "m=2", "Udisp_m3": "m=3"},
          x_label="EJS/ECint", y_label="dispersion harmonic"),
    _spec("figA1", "ratio",
          {"Delta3_analytic": "analytic BO", "Delta3_numeric": "numeric BO"},
          y_scale="log", x_label="EJS/ECint", y_label="cumulative error"),
    _spec("figA2", "ratio",
          {"delta1_numeric": "level 1", "delta2_numeric": "level 2",
           "delta3_numeric": "level 3"},
          y_scale="log", x_label="EJS/ECint", y_label="relative error"),
]}
