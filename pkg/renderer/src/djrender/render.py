"""Render one study CSV into a static SVG or PNG panel."""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .panels import PANELS, PanelSpec  # noqa: E402

# fixed element-id salt keeps SVG output byte-identical across runs
matplotlib.rcParams["svg.hashsalt"] = "djrender"

_LINE_STYLES = ["-", "--", "-.", ":"]


class RenderError(RuntimeError):
    """Unusable input: unknown study, empty file or missing columns."""


def load_csv(path: str | Path) -> dict[str, np.ndarray]:
    """Read a study CSV into named float columns."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows) < 2:
        raise RenderError(f"{path}: empty CSV (no data rows)")
    header, body = rows[0], rows[1:]
    try:
        values = np.array([[float(v) for v in row] for row in body])
    except ValueError as exc:
        raise RenderError(f"{path}: non-numeric cell ({exc})") from None
    if values.shape[1] != len(header):
        raise RenderError(f"{path}: ragged rows")
    return {name: values[:, i] for i, name in enumerate(header)}


def build_figure(spec: PanelSpec, data: dict[str, np.ndarray]):
    """Matplotlib figure for one panel; raises on missing columns."""
    missing = [c for c in spec.columns() if c not in data]
    if missing:
        raise RenderError(f"missing column(s): {', '.join(missing)}")

    fig, ax = plt.subplots(figsize=spec.size)
    x = data[spec.axis]
    for i, (column, label) in enumerate(spec.series.items()):
        y = data[column]
        if spec.y_scale == "log":
            y = np.abs(y)
        ax.plot(x, y, _LINE_STYLES[i % len(_LINE_STYLES)], label=label)
    if spec.y_scale == "log":
        ax.set_yscale("log")
    if spec.shade_column:
        flagged = x[data[spec.shade_column] > 0.5]
        if flagged.size:
            ax.axvspan(flagged.min() - 0.5, x.max() + 0.5, alpha=0.15,
                       color="tab:red", label="beyond internal excitation")
    ax.set_xlabel(spec.x_label or spec.axis)
    ax.set_ylabel(spec.y_label)
    ax.set_title(spec.study)
    ax.legend(fontsize="small")
    fig.tight_layout()
    return fig


def render(csv_path: str | Path, study_id: str, out_path: str | Path) -> Path:
    """Render ``csv_path`` according to the panel spec of ``study_id``.

    The output format follows the extension (.svg or .png); nothing is
    written when the input is unusable.  Output is byte-identical across
    repeated runs (no timestamps embedded).
    """
    if study_id not in PANELS:
        raise RenderError(
            f"unknown study {study_id!r}; valid: {', '.join(sorted(PANELS))}")
    out_path = Path(out_path)
    suffix = out_path.suffix.lower()
    if suffix not in (".svg", ".png"):
        raise RenderError(f"unsupported output format {suffix!r} (use .svg or .png)")

    data = load_csv(csv_path)
    fig = build_figure(PANELS[study_id], data)
    try:
        if suffix == ".svg":
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        else:
            fig.savefig(out_path, format="png")
    finally:
        plt.close(fig)
    return out_path
