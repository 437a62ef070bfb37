import json

import numpy as np
import pytest

from djtransmon.cli import EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK, main
from djtransmon.operators import ConvergenceError

FIG4_PARAMS = ["--param", "circuit.E_C=0.2", "--param", "circuit.E_C_int=1.25",
               "--param", "circuit.lambda=1.0", "--param", "circuit.E_J_Sigma=40",
               "--param", "circuit.k=0"]


def read_csv(path):
    lines = path.read_text().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(v) for v in line.split(",")] for line in lines[1:]])
    return header, data


@pytest.fixture()
def config_file(tmp_path):
    path = tmp_path / "circuit.toml"
    path.write_text(
        "[circuit]\n"
        "E_C = 0.2\nE_C_int = 1.25\nk = 0.0\nlambda = 1.0\nE_J_Sigma = 40.0\n"
        "[offsets]\nn_g = 0.0\nN_g = 0.0\n"
        "[numerics]\nn_cut = 25\n")
    return path


class TestSpectrumCommand:
    def test_classical_json_output(self, config_file, tmp_path):
        out = tmp_path / "spec.json"
        code = main(["spectrum", "--model", "classical", "--config",
                     str(config_file), "--levels", "4", "--out", str(out)])
        assert code == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["model"] == "classical"
        assert len(payload["eigenvalues_GHz"]) == 4
        assert payload["excitations_GHz"][0] == 0.0
        assert payload["excitations_GHz"][1] == pytest.approx(3.949, abs=2e-3)
        assert payload["labels"][0] == "qubit-0"
        assert payload["params"]["E_J_Sigma"] == 40.0

    def test_classical_runs_without_internal_charging(self, tmp_path):
        out = tmp_path / "spec.json"
        code = main(["spectrum", "--model", "classical",
                     "--param", "circuit.E_C=0.2",
                     "--param", "circuit.lambda=1.0",
                     "--param", "circuit.k=0",
                     "--param", "circuit.E_J_Sigma=40",
                     "--levels", "3", "--out", str(out)])
        assert code == EXIT_OK
        assert json.loads(out.read_text())["excitations_GHz"][1] == pytest.approx(
            3.949, abs=2e-3)

    def test_levels_beyond_dimension_rejected(self, config_file, capsys):
        code = main(["spectrum", "--model", "classical", "--config",
                     str(config_file), "--levels", "99999"])
        assert code == EXIT_CONFIG
        assert "dimension" in capsys.readouterr().err

    def test_missing_circuit_rejected(self, capsys):
        assert main(["spectrum", "--model", "classical"]) == EXIT_CONFIG
        assert "circuit" in capsys.readouterr().err

    def test_csv_format_option(self, config_file, tmp_path):
        out = tmp_path / "spec.csv"
        code = main(["spectrum", "--model", "classical", "--config",
                     str(config_file), "--levels", "3", "--format", "csv",
                     "--out", str(out)])
        assert code == EXIT_OK
        lines = out.read_text().splitlines()
        assert lines[0] == "level,energy_GHz,excitation_GHz,label"
        assert len(lines) == 4


class TestStudyCommand:
    def test_unknown_study_lists_ids(self, capsys):
        code = main(["study", "--study", "fig99"])
        assert code == EXIT_CONFIG
        assert "fig1d" in capsys.readouterr().err

    def test_fig5b_csv(self, tmp_path):
        out = tmp_path / "fig5b.csv"
        assert main(["study", "--study", "fig5b", "--out", str(out)]) == EXIT_OK
        header, data = read_csv(out)
        assert header == ["phi", "Udisp_r8", "Udisp_r16", "Udisp_r32"]
        assert data.shape == (256, 4)

    def test_byte_identical_across_runs_and_threads(self, tmp_path):
        paths = [tmp_path / f"out{i}.csv" for i in range(3)]
        for path, threads in zip(paths, ("1", "2", "1")):
            assert main(["study", "--study", "fig5b", "--threads", threads,
                         "--out", str(path)]) == EXIT_OK
        blobs = [p.read_bytes() for p in paths]
        assert blobs[0] == blobs[1] == blobs[2]

    def test_json_format(self, tmp_path):
        out = tmp_path / "fig1d.json"
        assert main(["study", "--study", "fig1d", "--format", "json",
                     "--out", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert payload["study"] == "fig1d"
        assert payload["axis_name"] == "lambda"

    def test_numeric_failure_exit_code(self, monkeypatch, capsys):
        import djtransmon.cli as cli_mod

        def boom(study_id, numerics):
            raise ConvergenceError("synthetic failure")

        monkeypatch.setattr(cli_mod, "reproduce_study", boom)
        assert main(["study", "--study", "fig5b"]) == EXIT_NUMERIC
        assert "synthetic failure" in capsys.readouterr().err


class TestPotentialsCommand:
    def test_correction_is_difference(self, tmp_path):
        out = tmp_path / "pot.csv"
        code = main(["potentials", "--which", "classical,bo,corr",
                     *FIG4_PARAMS, "--out", str(out)])
        assert code == EXIT_OK
        header, data = read_csv(out)
        assert header == ["phi", "classical", "bo", "corr"]
        np.testing.assert_allclose(data[:, 3], data[:, 2] - data[:, 1], atol=1e-9)

    def test_minmax_curves(self, tmp_path):
        out = tmp_path / "mm.csv"
        code = main(["potentials", "--which", "u_prime_minmax",
                     "--param", "circuit.E_C=0.2", "--param", "circuit.E_C_int=1.25",
                     "--param", "circuit.lambda=0.9", "--param", "circuit.k=0",
                     "--param", "circuit.E_J_Sigma=40", "--out", str(out)])
        assert code == EXIT_OK
        header, data = read_csv(out)
        assert header == ["phi", "u_prime_min", "u_prime_max"]
        np.testing.assert_allclose(data[:, 2], -data[:, 1], atol=1e-12)
        lam_env = np.sqrt(1 - 0.9 * np.sin(data[:, 0] / 2) ** 2)
        np.testing.assert_allclose(data[:, 1], -40.0 * lam_env, atol=1e-9)

    def test_u_disp_ordering_with_ratio(self, tmp_path):
        curves = {}
        for ratio in (8, 16, 32):
            out = tmp_path / f"disp{ratio}.csv"
            code = main(["potentials", "--which", "u_disp",
                         "--param", "circuit.E_C=0.2",
                         "--param", f"circuit.E_C_int={40.0 / ratio}",
                         "--param", "circuit.lambda=1", "--param", "circuit.k=0",
                         "--param", "circuit.E_J_Sigma=40", "--out", str(out)])
            assert code == EXIT_OK
            _, data = read_csv(out)
            curves[ratio] = data
        phi = curves[8][:, 0]
        interior = np.abs(phi) < np.pi - 1e-9
        assert np.all(curves[8][interior, 1] > curves[16][interior, 1])
        assert np.all(curves[16][interior, 1] > curves[32][interior, 1])

    def test_unknown_curve_rejected(self, capsys):
        code = main(["potentials", "--which", "classical,banana", *FIG4_PARAMS])
        assert code == EXIT_CONFIG
        assert "banana" in capsys.readouterr().err


class TestHarmonicsCommand:
    def test_bo_harmonics(self, tmp_path):
        out = tmp_path / "harm.csv"
        code = main(["harmonics", "--potential", "bo", "--mmax", "4",
                     *FIG4_PARAMS, "--out", str(out)])
        assert code == EXIT_OK
        header, data = read_csv(out)
        assert header == ["m", "U_ratio", "U_ratio_abs"]
        assert data[0, 2] == pytest.approx(0.1706, abs=2e-3)


class TestDispersionCommand:
    def test_fast_only_sweep(self, tmp_path):
        out = tmp_path / "disp.csv"
        code = main(["dispersion", "--model", "fast-only", "--points", "5",
                     "--param", "circuit.E_C=0.2", "--param", "circuit.E_C_int=5",
                     "--param", "circuit.lambda=1", "--param", "circuit.k=0",
                     "--param", "circuit.E_J_Sigma=40", "--out", str(out)])
        assert code == EXIT_OK
        header, data = read_csv(out)
        assert header == ["N_g", "E0"]
        assert data[:, 1] == pytest.approx(data[::-1, 1], abs=1e-10)
