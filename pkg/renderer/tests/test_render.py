import shutil
import subprocess
import sys

import numpy as np
import pytest

from djrender.cli import main
from djrender.panels import PANELS
from djrender.render import RenderError, build_figure, load_csv, render

LOG_PANELS = {"fig2d", "fig3a", "fig3b", "fig3c", "fig3d", "fig5c", "figA1", "figA2"}


def synthesize_csv(study_id, path, rows=12):
    """Write a CSV with the study's documented schema and plausible values."""
    spec = PANELS[study_id]
    rng = np.random.default_rng(7)
    header = spec.columns()
    x = np.linspace(0.5, 1.0, rows)
    cols = [x]
    for name in header[1:]:
        if name == "above_internal":
            cols.append((x > 0.8).astype(float))
        else:
            cols.append(np.abs(rng.uniform(1e-4, 1e-1, rows)))
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in np.column_stack(cols):
            fh.write(",".join(f"{v:.11e}" for v in row) + "\n")
    return path


@pytest.mark.parametrize("study_id", sorted(PANELS))
def test_every_panel_renders(study_id, tmp_path):
    csv_path = synthesize_csv(study_id, tmp_path / f"{study_id}.csv")
    out = tmp_path / f"{study_id}.svg"
    assert main(["--study", study_id, "--in", str(csv_path), "--out", str(out)]) == 0
    assert out.exists() and out.stat().st_size > 0


@pytest.mark.parametrize("study_id", sorted(PANELS))
def test_y_scale_matches_spec(study_id, tmp_path):
    csv_path = synthesize_csv(study_id, tmp_path / "in.csv")
    fig = build_figure(PANELS[study_id], load_csv(csv_path))
    expected = "log" if study_id in LOG_PANELS else "linear"
    assert fig.axes[0].get_yscale() == expected
    assert PANELS[study_id].y_scale == expected


def test_png_output(tmp_path):
    csv_path = synthesize_csv("fig5c", tmp_path / "in.csv")
    out = render(csv_path, "fig5c", tmp_path / "out.png")
    assert out.stat().st_size > 0
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_rendering_is_deterministic(tmp_path):
    csv_path = synthesize_csv("fig3b", tmp_path / "in.csv")
    for suffix in ("svg", "png"):
        a = render(csv_path, "fig3b", tmp_path / f"a.{suffix}")
        b = render(csv_path, "fig3b", tmp_path / f"b.{suffix}")
        assert a.read_bytes() == b.read_bytes()


def test_missing_column_names_it(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("ratio,wrong\n1.0,2.0\n")
    out = tmp_path / "bad.svg"
    assert main(["--study", "fig5c", "--in", str(path), "--out", str(out)]) == 1
    err = capsys.readouterr().err
    assert "eps01_full" in err
    assert not out.exists()


def test_empty_csv_rejected(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    path.write_text("")
    out = tmp_path / "empty.svg"
    assert main(["--study", "fig1d", "--in", str(path), "--out", str(out)]) == 1
    assert not out.exists()


def test_unknown_study_and_format(tmp_path):
    csv_path = synthesize_csv("fig1d", tmp_path / "in.csv")
    with pytest.raises(RenderError, match="unknown study"):
        render(csv_path, "fig9z", tmp_path / "x.svg")
    with pytest.raises(RenderError, match="format"):
        render(csv_path, "fig1d", tmp_path / "x.pdf")


@pytest.mark.skipif(shutil.which("djtransmon") is None,
                    reason="primary CLI not installed")
def test_renders_real_primary_output(tmp_path):
    csv_path = tmp_path / "fig5b.csv"
    proc = subprocess.run(
        ["djtransmon", "study", "--study", "fig5b", "--out", str(csv_path)],
        capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    out = render(csv_path, "fig5b", tmp_path / "fig5b.svg")
    assert out.stat().st_size > 0
