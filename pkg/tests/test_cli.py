import numpy as np
import pytest

from qbm_sbs.cli import load_config, main
from qbm_sbs.errors import ConfigurationError

FAST_TS = [
    "--set", "n_points=50",
    "--set", "traced_size=4",
    "--set", "macrofraction_size=4",
]
FAST_SWEEP = [
    "--set", "n_temps=2",
    "--set", "temp_min=1e-3",
    "--set", "temp_max=1e-1",
    "--set", "n_realizations=2",
    "--set", "n_time_samples=300",
    "--set", "traced_size=4",
    "--set", "macrofraction_size=4",
]


def read_data_rows(path):
    return [l for l in path.read_text().splitlines() if l and not l.startswith("#")]


class TestConfigLoading:
    def test_defaults_without_file(self):
        cfg = load_config(None, [], None, None)
        assert cfg.mass_M == 1e-5
        assert cfg.seed == 20260823
        assert cfg.provided == set()

    def test_file_with_comments_and_overrides(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("# a comment\ntemperature = 0.5  # inline\nseed=7\n\n")
        cfg = load_config(str(p), ["temperature=0.25"], None, None)
        assert cfg.temperature == 0.25  # --set wins over the file
        assert cfg.seed == 7
        assert cfg.provided == {"temperature", "seed"}

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigurationError, match="unknown configuration key"):
            load_config(None, ["bogus=1"], None, None)

    def test_unparsable_value_rejected(self):
        with pytest.raises(ConfigurationError, match="cannot parse"):
            load_config(None, ["temperature=warm"], None, None)

    def test_missing_file_rejected(self):
        with pytest.raises(ConfigurationError, match="not found"):
            load_config("/nonexistent/run.cfg", [], None, None)

    def test_seed_and_threads_flags_win(self, tmp_path):
        p = tmp_path / "run.cfg"
        p.write_text("seed=1\nthreads=1\n")
        cfg = load_config(str(p), [], 99, 8)
        assert cfg.seed == 99 and cfg.threads == 8


class TestTimeseriesCommand:
    def test_initial_row_is_unity(self, tmp_path):
        out = tmp_path / "out"
        assert main(["--out", str(out), *FAST_TS, "timeseries"]) == 0
        rows = read_data_rows(out / "timeseries.csv")
        assert rows[0] == "t_seconds,gamma_abs,b_mac"
        assert rows[1] == "0.0,1.0,1.0"
        assert len(rows) == 1 + 50

    def test_reruns_are_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert main(["--out", str(a), *FAST_TS, "timeseries"]) == 0
        assert main(["--out", str(b), *FAST_TS, "timeseries"]) == 0
        assert (a / "timeseries.csv").read_bytes() == (b / "timeseries.csv").read_bytes()
        assert (a / "timeseries.meta.txt").read_bytes() == (b / "timeseries.meta.txt").read_bytes()

    def test_seed_changes_output(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["--out", str(a), "--seed", "1", *FAST_TS, "timeseries"])
        main(["--out", str(b), "--seed", "2", *FAST_TS, "timeseries"])
        assert (a / "timeseries.csv").read_bytes() != (b / "timeseries.csv").read_bytes()

    def test_header_embeds_resolved_config(self, tmp_path):
        out = tmp_path / "out"
        main(["--out", str(out), *FAST_TS, "timeseries"])
        text = (out / "timeseries.csv").read_text()
        assert "# mass_M = 1e-05" in text
        assert "# kernel_backend = " in text
        assert "# hbar_J_s = " in text


class TestExitCodes:
    def test_resonant_band_is_config_error(self, tmp_path, capsys):
        code = main(
            ["--out", str(tmp_path), *FAST_TS, "--set", "omega_low=1e8", "timeseries"]
        )
        assert code == 2
        assert "resonant band" in capsys.readouterr().err

    def test_unknown_key_is_config_error(self, tmp_path, capsys):
        assert main(["--out", str(tmp_path), "--set", "bogus=1", "timeseries"]) == 2
        assert "unknown configuration key" in capsys.readouterr().err

    def test_bad_axis_is_config_error(self, tmp_path):
        code = main(
            ["--out", str(tmp_path), "--set", "squeezing_axis=sideways", *FAST_TS, "timeseries"]
        )
        assert code == 2

    def test_compare_squeezing_rejects_explicit_axis(self, tmp_path, capsys):
        code = main(
            [
                "--out", str(tmp_path),
                "--set", "squeezing_axis=momentum",
                "compare-squeezing",
            ]
        )
        assert code == 2
        assert "both axes" in capsys.readouterr().err

    def test_undersized_oracle_dimension_fails(self, tmp_path, capsys):
        code = main(["--out", str(tmp_path), "--set", "oracle_dim=8", "oracle"])
        assert code == 1
        assert "FAIL" in capsys.readouterr().out

    def test_unwritable_output_is_io_error(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("")
        code = main(["--out", str(blocker / "sub"), *FAST_TS, "timeseries"])
        assert code == 3


class TestSweepCommand:
    def test_rows_and_regimes(self, tmp_path):
        out = tmp_path / "out"
        assert main(["--out", str(out), *FAST_SWEEP, "sweep"]) == 0
        rows = read_data_rows(out / "sweep.csv")
        header, data = rows[0], rows[1:]
        assert header.startswith("T_kelvin,gamma_avg,")
        assert len(data) == 2
        temps = [float(r.split(",")[0]) for r in data]
        assert temps == [1e-3, 1e-1]
        regimes = {r.split(",")[5] for r in data}
        assert regimes <= {"SBS", "ClassicalQuantum", "Coherent", "Indeterminate"}


class TestCompareSqueezingCommand:
    def test_outputs_both_files(self, tmp_path):
        out = tmp_path / "out"
        code = main(
            [
                "--out", str(out),
                "--set", "n_points=64",
                "--set", "traced_size=4",
                "--set", "macrofraction_size=4",
                "--set", "n_realizations=2",
                "--set", "n_time_samples=300",
                "compare-squeezing",
            ]
        )
        assert code == 0
        series = read_data_rows(out / "compare_timeseries.csv")
        report = read_data_rows(out / "compare_report.csv")
        assert series[0] == "t_seconds,gamma_position,b_position,gamma_momentum,b_momentum"
        assert series[1].startswith("0.0,1.0,1.0,1.0,1.0")
        assert len(report) == 1 + 2
