import os

import pytest

from shutterbath.cli import main

# every invocation runs inside a scratch directory


@pytest.fixture(autouse=True)
def run_in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read(path):
    with open(path, "rb") as handle:
        return handle.read()


class TestSteadyCommand:
    def test_prints_summary_and_exits_zero(self, capsys):
        code = main(["steady", "--tau-wc", "1", "--r", "10", "--g", "0.1", "--nbar", "10"])
        out = capsys.readouterr().out
        assert code == 0
        assert "n_s_over_nbar=3.49881" in out

    def test_writes_single_row_csv(self, tmp_path):
        code = main(["steady", "--tau-wc", "1", "--out", "row.csv"])
        assert code == 0
        lines = read(tmp_path / "row.csv").decode().splitlines()
        assert lines[0] == "tau_omega_c,n_s_exact,n_s_approx,n_s_over_nbar,t_eff_over_t,error_flag"
        assert len(lines) == 2

    def test_missing_tau_is_usage_error(self, capsys):
        assert main(["steady"]) == 2
        assert "required" in capsys.readouterr().err

    def test_negative_tau_is_domain_error(self, capsys):
        assert main(["steady", "--tau-wc", "-1"]) == 4
        assert "domain error" in capsys.readouterr().err

    def test_omega0_units_flag(self, capsys):
        main(["steady", "--tau-wc", "0.1", "--units", "omega0"])
        first = capsys.readouterr().out
        main(["steady", "--tau-wc", "1", "--units", "omegac"])
        second = capsys.readouterr().out
        # same physical period: tau = 0.1/omega0 = 1/omega_c at r = 10
        assert first.split("n_s=")[1] == second.split("n_s=")[1]


class TestConfigFile:
    def test_config_supplies_defaults(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("tau_wc = 1\nr = 10\n# comment line\nnbar = 10\n")
        assert main(["steady", "--config", str(cfg)]) == 0
        assert "n_s_over_nbar=3.49881" in capsys.readouterr().out

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("tau_wc = 50\n")
        assert main(["steady", "--config", str(cfg), "--tau-wc", "1"]) == 0
        assert "n_s_over_nbar=3.49881" in capsys.readouterr().out

    def test_unknown_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("taw_wc = 1\n")
        assert main(["steady", "--config", str(cfg)]) == 2
        assert "unknown key" in capsys.readouterr().err

    def test_malformed_line_rejected(self, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("tau_wc 1\n")
        assert main(["steady", "--config", str(cfg)]) == 2

    def test_missing_file_rejected(self):
        assert main(["steady", "--config", "nowhere.cfg"]) == 2


class TestUsage:
    def test_unknown_command(self):
        assert main(["frobnicate"]) == 2

    def test_unknown_flag(self):
        assert main(["steady", "--tau-wc", "1", "--frequency", "2"]) == 2

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0


class TestEvolveCommand:
    def test_shuttered_trajectory_csv(self, tmp_path, capsys):
        code = main(["evolve", "--tau-wc", "0.5", "--periods", "3",
                     "--samples-per-period", "4", "--out", "traj.csv"])
        assert code == 0
        lines = read(tmp_path / "traj.csv").decode().splitlines()
        assert lines[0] == "t,n_mean,n_mean_over_nbar,period_index"
        assert len(lines) == 2 + 3 * 4  # header + t=0 + samples
        assert lines[1].split(",")[3] == "0"

    def test_unshuttered_needs_tmax(self):
        assert main(["evolve"]) == 2

    def test_unshuttered_trajectory(self, tmp_path):
        code = main(["evolve", "--tmax-wc", "10", "--samples", "11", "--out", "u.csv"])
        assert code == 0
        lines = read(tmp_path / "u.csv").decode().splitlines()
        assert len(lines) == 12
        assert lines[1].endswith(",")  # empty period_index column

    def test_plot_writes_png(self, tmp_path):
        code = main(["evolve", "--tmax-wc", "10", "--samples", "11",
                     "--out", "u.csv", "--plot"])
        assert code == 0
        assert (tmp_path / "u.png").exists()


class TestCoeffsCommand:
    def test_schema_and_summary(self, tmp_path, capsys):
        code = main(["coeffs", "--tmax-wc", "5", "--samples", "21", "--out", "c.csv"])
        assert code == 0
        lines = read(tmp_path / "c.csv").decode().splitlines()
        assert lines[0] == "t,delta,gamma,delta_plus_gamma,delta_minus_gamma"
        first = lines[1].split(",")
        assert first[1] == "0.0" and first[2] == "0.0"
        assert "delta_M=" in capsys.readouterr().out


class TestSweepCommand:
    def test_deterministic_output_across_threads(self, tmp_path):
        args = ["sweep", "--tau-min-wc", "0.5", "--tau-max-wc", "10",
                "--points", "12"]
        assert main(args + ["--threads", "1", "--out", "a.csv"]) == 0
        assert main(args + ["--threads", "7", "--out", "b.csv"]) == 0
        assert read(tmp_path / "a.csv") == read(tmp_path / "b.csv")

    def test_repeat_invocations_byte_identical(self, tmp_path):
        args = ["sweep", "--points", "8", "--tau-min-wc", "0.4", "--tau-max-wc", "30"]
        assert main(args + ["--out", "x.csv"]) == 0
        assert main(args + ["--out", "y.csv"]) == 0
        assert read(tmp_path / "x.csv") == read(tmp_path / "y.csv")

    def test_schema(self, tmp_path):
        assert main(["sweep", "--points", "3", "--out", "s.csv"]) == 0
        header = read(tmp_path / "s.csv").decode().splitlines()[0]
        assert header == "tau_omega_c,n_s_exact,n_s_approx,n_s_over_nbar,t_eff_over_t,error_flag"


class TestZenoCommand:
    def test_report_and_trace(self, tmp_path, capsys):
        code = main(["zeno", "--tau-wc", "0.5", "--periods", "5", "--k", "3",
                     "--out", "z.csv"])
        assert code == 0
        out = capsys.readouterr().out
        assert "short_time=zeno" in out
        summary = read(tmp_path / "z.csv").decode().splitlines()
        assert summary[0].endswith("short_time_class,crossover_time,asymptotic_class")
        trace = read(tmp_path / "z_trace.csv").decode().splitlines()
        assert trace[0] == "t,n_shuttered,n_unshuttered,diff"
        assert len(trace) == 6

    def test_requires_schedule(self):
        assert main(["zeno", "--tau-wc", "0.5"]) == 2
        assert main(["zeno", "--periods", "5"]) == 2


class TestOracleCheckCommand:
    def test_unshuttered_check(self, tmp_path, capsys):
        code = main(["oracle-check", "--tmax-wc", "10", "--samples", "21",
                     "--truncation", "60", "--out", "o.csv"])
        assert code == 0
        assert "max_rel_err=" in capsys.readouterr().out
        lines = read(tmp_path / "o.csv").decode().splitlines()
        assert lines[0] == "t,n_analytic,n_oracle,rel_err,leakage,thermal_dev"

    def test_small_truncation_is_convergence_error(self, capsys):
        code = main(["oracle-check", "--tmax-wc", "100", "--truncation", "5"])
        assert code == 3
        assert "truncation" in capsys.readouterr().err

    def test_equivalence_mode(self, capsys):
        code = main(["oracle-check", "--equivalence", "--tau-wc", "1",
                     "--periods", "5", "--truncation", "60"])
        assert code == 0
        assert "max_boundary_rel_err" in capsys.readouterr().out


class TestFigurePresets:
    def test_figure_1a_files(self, tmp_path, capsys):
        code = main(["figure", "1a"])
        assert code == 0
        assert (tmp_path / "fig1a_shuttered.csv").exists()
        assert (tmp_path / "fig1a_unshuttered.csv").exists()
        assert (tmp_path / "fig1a.png").exists()

    def test_figure_1b_no_plot(self, tmp_path):
        code = main(["figure", "1b", "--no-plot", "--out", "alt"])
        assert code == 0
        assert (tmp_path / "alt_shuttered.csv").exists()
        assert not (tmp_path / "alt.png").exists()

    def test_figure_3_reduced_grid(self, tmp_path, capsys):
        code = main(["figure", "3", "--points", "10"])
        assert code == 0
        assert (tmp_path / "fig3.csv").exists()
        assert (tmp_path / "fig3.png").exists()
        out = capsys.readouterr().out
        assert "n_s_over_nbar_last=0.9698" in out

    def test_figure_2a_summary(self, tmp_path, capsys):
        code = main(["figure", "2a", "--no-plot"])
        assert code == 0
        out = capsys.readouterr().out
        assert "n_s_r10_over_nbar=3.49881" in out
        assert "crossover_wc_t=1423" in out
        assert (tmp_path / "fig2a_shuttered_r0p1.csv").exists()

    def test_figure_presets_deterministic(self, tmp_path):
        assert main(["figure", "1a", "--no-plot", "--out", "p"]) == 0
        assert main(["figure", "1a", "--no-plot", "--out", "q"]) == 0
        assert read(tmp_path / "p_shuttered.csv") == read(tmp_path / "q_shuttered.csv")
