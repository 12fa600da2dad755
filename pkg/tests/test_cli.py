"""Command-line driver: exit codes, CSV/manifest plumbing, determinism."""

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from kgzb.cli import (
    EXIT_CONFIG_ERROR,
    EXIT_VERIFY_FAILURE,
    OUT_DIR_ENV,
    config_digest,
    main,
)


@pytest.fixture()
def runner():
    return CliRunner()


def read_csv(path: Path):
    """Parse one of our CSVs into (header_dict, columns, array)."""
    header = {}
    rows = []
    columns = None
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            header[key.strip()] = val.strip()
        elif columns is None:
            columns = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    return header, columns, np.array(rows)


class TestFigureCommand:
    def test_schematic_figure_rejected(self, runner):
        result = runner.invoke(main, ["figure", "6"])
        assert result.exit_code == EXIT_CONFIG_ERROR
        assert "schematic figure, no data" in result.output

    def test_unknown_figure_rejected(self, runner):
        result = runner.invoke(main, ["figure", "9"])
        assert result.exit_code == EXIT_CONFIG_ERROR
        assert "unknown figure" in result.output

    def test_fig1_trace_and_manifest(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"time": {"start": 0.0, "stop": 12.0, "num": 41}}))
        result = runner.invoke(
            main, ["figure", "1", "--config", str(cfg), "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        header, columns, data = read_csv(tmp_path / "fig1.csv")
        assert columns == ["t", "v_z_d1", "v_z_d2", "v_z_d4"]
        assert data.shape == (41, 4)
        # all three initial velocities equal the operator average at t = 0
        assert data[0, 0] == 0.0
        assert np.all(data[0, 1:] > 0.5)
        manifest = json.loads((tmp_path / "figure_1_manifest.json").read_text())
        assert manifest["command"] == "figure 1"
        assert manifest["outputs"] == ["fig1.csv"]
        assert manifest["duration_seconds"] > 0
        assert header["config_digest"] == manifest["config_digest"]
        assert manifest["config_digest"] == config_digest(manifest["config"])

    def test_fig2_snapshot_columns(self, runner, tmp_path):
        result = runner.invoke(main, ["figure", "2", "--out", str(tmp_path)])
        assert result.exit_code == 0
        _, columns, data = read_csv(tmp_path / "fig2.csv")
        assert columns[0] == "x"
        assert len(columns) == 8  # x plus seven snapshots
        assert np.all(data[:, 1:] >= 0.0)  # modulus columns
        # the late snapshot has split: at least two interior maxima
        late = data[:, -1]
        inner = (
            (late[1:-1] > late[:-2])
            & (late[1:-1] >= late[2:])
            & (late[1:-1] > 0.02 * late.max())
        )
        assert inner.sum() >= 2

    def test_fig3_emits_three_panels(self, runner, tmp_path):
        result = runner.invoke(main, ["figure", "3", "--out", str(tmp_path)])
        assert result.exit_code == 0
        for panel in "abc":
            header, columns, data = read_csv(tmp_path / f"fig3{panel}.csv")
            assert columns == ["t", "v_x", "v_y"]
            # v_x(0) equals the transverse kick for every field strength
            assert data[0, 1] == pytest.approx(float(header["k0x"]), rel=1e-8)
            assert data[0, 2] == pytest.approx(0.0, abs=1e-10)

    def test_fig5_field_ladder(self, runner, tmp_path):
        result = runner.invoke(main, ["figure", "5", "--out", str(tmp_path)])
        assert result.exit_code == 0
        _, columns, data = read_csv(tmp_path / "fig5.csv")
        assert len(columns) == 5  # t plus four field strengths
        # initial velocity is the longitudinal kick 0.7/L, growing with b
        assert np.all(np.diff(data[0, 1:]) > 0)

    def test_fig7_variance_columns(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"time": {"start": 0.0, "stop": 20.0, "num": 41}}))
        result = runner.invoke(
            main, ["figure", "7", "--config", str(cfg), "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        _, columns, data = read_csv(tmp_path / "fig7.csv")
        assert columns == ["t", "v1c", "v1osc", "v2c", "v2osc", "v3", "total", "pde_total"]
        # the spectral total and the independent finite-difference total agree
        total, pde = data[:, -2], data[:, -1]
        assert np.max(np.abs(total - pde) / np.abs(total)) < 0.01

    def test_invalid_config_key_rejected(self, runner, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"not_a_key": 1}))
        result = runner.invoke(
            main, ["figure", "5", "--config", str(cfg), "--out", str(tmp_path)]
        )
        assert result.exit_code == EXIT_CONFIG_ERROR

    def test_determinism_byte_identical(self, runner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for out in (a, b):
            result = runner.invoke(main, ["figure", "5", "--out", str(out)])
            assert result.exit_code == 0
        assert (a / "fig5.csv").read_bytes() == (b / "fig5.csv").read_bytes()

    def test_out_dir_environment_variable(self, runner, tmp_path):
        result = runner.invoke(
            main, ["figure", "5"], env={OUT_DIR_ENV: str(tmp_path / "envout")}
        )
        assert result.exit_code == 0
        assert (tmp_path / "envout" / "fig5.csv").exists()


class TestVerifyCommand:
    @pytest.mark.parametrize(
        "suite", ["identities", "equivalence", "sumrules", "operator", "oracle"]
    )
    def test_suite_passes(self, runner, suite):
        result = runner.invoke(main, ["verify", suite])
        assert result.exit_code == 0, result.output
        lines = [l for l in result.output.splitlines() if l]
        assert lines and all(l.startswith("PASS") for l in lines)
        assert all("max_deviation=" in l and "tolerance=" in l for l in lines)

    def test_unknown_suite(self, runner):
        result = runner.invoke(main, ["verify", "nonsense"])
        assert result.exit_code == EXIT_CONFIG_ERROR

    def test_failure_exit_code_distinct_from_config_error(self, runner, monkeypatch):
        import kgzb.cli as cli_mod

        monkeypatch.setitem(
            cli_mod._SUITES, "identities", lambda: [cli_mod.Check("forced", 1.0, 1e-9)]
        )
        result = runner.invoke(main, ["verify", "identities"])
        assert result.exit_code == EXIT_VERIFY_FAILURE
        assert "FAIL" in result.output


class TestSweepCommand:
    def sweep(self, runner, tmp_path, **kw):
        args = ["sweep", "--out", str(tmp_path)]
        for key, val in kw.items():
            args += [f"--{key}", str(val)]
        return runner.invoke(main, args)

    def test_oscillation_count_monotone_in_width(self, runner, tmp_path):
        result = self.sweep(
            runner, tmp_path, parameter="d", start=1, stop=8, num=8, observable="n-osc"
        )
        assert result.exit_code == 0
        _, columns, data = read_csv(tmp_path / "sweep.csv")
        assert columns == ["d", "n-osc"]
        assert np.all(np.diff(data[:, 1]) > 0)

    def test_interband_ratio_grows_with_field(self, runner, tmp_path):
        result = self.sweep(
            runner, tmp_path, parameter="b-ratio", start=1e-3, stop=10,
            num=5, observable="zb-ratio",
        )
        assert result.exit_code == 0
        _, _, data = read_csv(tmp_path / "sweep.csv")
        assert np.all(np.diff(data[:, 1]) > 0)
        assert np.all((data[:, 1] > 0) & (data[:, 1] < 1))

    def test_decay_time_shrinks_with_momentum(self, runner, tmp_path):
        result = self.sweep(
            runner, tmp_path, parameter="k0z", start=0.2, stop=2.0, num=5,
            observable="decay-time",
        )
        assert result.exit_code == 0
        _, _, data = read_csv(tmp_path / "sweep.csv")
        assert np.all(np.diff(data[:, 1]) < 0)

    @pytest.mark.parametrize(
        "kw",
        [
            {"parameter": "d", "start": 5, "stop": 1, "num": 4, "observable": "n-osc"},
            {"parameter": "d", "start": 1, "stop": 8, "num": 1, "observable": "n-osc"},
            {"parameter": "q", "start": 1, "stop": 8, "num": 4, "observable": "n-osc"},
            {"parameter": "d", "start": 1, "stop": 8, "num": 4, "observable": "zb-ratio"},
            {"parameter": "b-ratio", "start": 0.1, "stop": 1, "num": 4, "observable": "n-osc"},
        ],
    )
    def test_invalid_sweeps_rejected(self, runner, tmp_path, kw):
        result = self.sweep(runner, tmp_path, **kw)
        assert result.exit_code == EXIT_CONFIG_ERROR


class TestStringParams:
    def test_worked_example_values(self, runner):
        result = runner.invoke(main, ["string", "params"])
        assert result.exit_code == 0
        assert "13427" in result.output  # audible frequency, Hz
        assert "84364" in result.output  # trembling angular frequency, 1/s

    def test_invalid_material_rejected(self, runner):
        result = runner.invoke(main, ["string", "params", "--tension", "-1"])
        assert result.exit_code == EXIT_CONFIG_ERROR


class TestTableCommand:
    def test_coefficient_dump(self, runner, tmp_path):
        result = runner.invoke(
            main, ["table", "--b-ratio", "0.45", "--out", str(tmp_path)]
        )
        assert result.exit_code == 0
        _, columns, data = read_csv(tmp_path / "utable.csv")
        assert columns == ["m", "n", "u"]
        diag = data[data[:, 0] == data[:, 1]]
        assert diag[:, 2].sum() == pytest.approx(1.0, abs=1e-8)
