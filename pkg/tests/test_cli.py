"""Experiment CLI: determinism, contracts, exit codes, config handling."""

import math
import os
import subprocess
import sys

import pytest

from mellin_polar.cli import (
    ExperimentConfig,
    UsageError,
    build_config,
    list_functions,
    main,
    run_experiment,
    thread_cap,
)


def run_cli(argv, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "mellin_polar.cli", *argv],
                          capture_output=True, text=True, env=env)


class TestRunExperiments:
    def test_boas_convergence_respects_bounds(self, tmp_path):
        out = tmp_path / "boas.csv"
        status = main(["run", "boas-convergence", "--function", "mellin-sine",
                       "--c", "0.5", "--T", "2", "--point", "1,0",
                       "--n", "2,4,8,16,32,64", "--out", str(out)])
        assert status == 0
        text = out.read_text()
        lines = text.splitlines()
        assert lines[0].startswith("# mellin-polar-csv")
        assert "config:" in lines[1]
        rows = [line.split(",") for line in lines[3:]]
        assert len(rows) == 6
        header = lines[2].split(",")
        i_err, i_bound = header.index("abs_error"), header.index("apriori_bound")
        for row in rows:
            assert float(row[i_err]) <= float(row[i_bound])
        # final truncation at n = 64 sits under the envelope 4T/(pi^2 127)
        assert float(rows[-1][i_err]) <= 4.0 * 2.0 / (math.pi ** 2 * 127.0)

    def test_csv_is_byte_identical_across_runs(self, tmp_path):
        args = ["run", "valiron-convergence", "--function", "sine-blend",
                "--c", "0.5", "--T", "2", "--point", "1,0", "--n", "4,8,16"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_timing_flag_adds_column(self, tmp_path):
        out = tmp_path / "t.csv"
        main(["run", "boas-convergence", "--n", "2,4", "--out", str(out), "--timing"])
        assert "wall_time_s" in out.read_text().splitlines()[2]

    def test_residue_defect(self, tmp_path):
        out = tmp_path / "defect.csv"
        status = main(["run", "residue-defect", "--kernel", "boas",
                       "--n-rect", "1", "--c", "0", "--out", str(out)])
        assert status == 0
        data_row = out.read_text().splitlines()[3].split(",")
        assert float(data_row[2]) <= 1e-8  # defect value column

    def test_reconstruct_errors_shrink_with_n(self, tmp_path):
        outs = {}
        for n in (64, 128, 256):
            out = tmp_path / f"recon{n}.csv"
            status = main(["run", "reconstruct", "--function", "translated-sine",
                           "--c", "0.5", "--T", "2", "--t-shift", "1.2",
                           "--r-grid", "0.5:2.0:16", "--n", str(n),
                           "--out", str(out)])
            assert status == 0
            lines = out.read_text().splitlines()
            i_err = lines[2].split(",").index("abs_error")
            outs[n] = max(float(line.split(",")[i_err]) for line in lines[3:])
        assert outs[256] < outs[128] < outs[64]

    def test_contour_cauchy(self, tmp_path):
        out = tmp_path / "cauchy.csv"
        status = main(["run", "contour-cauchy", "--function", "power",
                       "--a", "3", "--out", str(out)])
        assert status == 0

    def test_bernstein_ratio_row(self):
        cfg = ExperimentConfig(experiment="bernstein", function="mellin-sine",
                               c=0.5, T=2.0, n_list=(500,))
        status, rows, _ = run_experiment(cfg)
        assert status == 0
        assert rows[0].value.real <= 2.0 * 1.001
        assert rows[0].value.real >= 0.99 * 2.0

    def test_fourier_demo(self, tmp_path):
        out = tmp_path / "fourier.csv"
        status = main(["run", "fourier-demo", "--w", "2.0", "--w0", "0.7",
                       "--n", "8,32,128", "--out", str(out)])
        assert status == 0
        lines = out.read_text().splitlines()
        i_err = lines[2].split(",").index("abs_error")
        last_err = float(lines[-1].split(",")[i_err])
        assert last_err <= 1e-4 * 2.0


class TestConfigHandling:
    def test_config_file_parsed_and_flags_win(self, tmp_path):
        cfg_file = tmp_path / "exp.cfg"
        cfg_file.write_text("# comment\nfunction=mellin-sine\nc=0.25\nT=3\n"
                            "n=2,4\npoint=1,0\n")
        cfg = build_config("boas-convergence", {"T": 2.0}, str(cfg_file))
        assert cfg.function == "mellin-sine"
        assert cfg.c == 0.25
        assert cfg.T == 2.0  # flag overrides file
        assert cfg.n_list == (2, 4)

    def test_unknown_config_key_rejected(self, tmp_path):
        cfg_file = tmp_path / "bad.cfg"
        cfg_file.write_text("mystery=1\n")
        with pytest.raises(UsageError, match="mystery"):
            build_config("boas-convergence", {}, str(cfg_file))

    def test_invalid_values_are_usage_errors(self):
        cfg = ExperimentConfig(experiment="boas-convergence", n_list=(8, 4))
        with pytest.raises(UsageError, match="n:"):
            cfg.validate()
        cfg = ExperimentConfig(experiment="nope")
        with pytest.raises(UsageError, match="experiment"):
            cfg.validate()

    def test_unknown_function_is_usage_error(self):
        cfg = ExperimentConfig(experiment="boas-convergence", function="nope")
        with pytest.raises(UsageError, match="function"):
            run_experiment(cfg)


class TestCommandLine:
    def test_usage_error_exit_code(self):
        proc = run_cli(["run", "boas-convergence", "--function", "mystery"])
        assert proc.returncode == 2
        assert "usage error" in proc.stderr

    def test_list_functions_stable_and_documented(self):
        first = run_cli(["list-functions"])
        second = run_cli(["list-functions"])
        assert first.returncode == 0
        assert first.stdout == second.stdout
        assert "mellin-sine" in first.stdout
        assert "C_f = 1" in first.stdout
        assert "sin(pi t)/(pi t)" in first.stdout  # the sinc convention note

    def test_version_reports_thread_cap(self):
        proc = run_cli(["version"], env_extra={"MELLIN_POLAR_THREADS": "4"})
        assert proc.returncode == 0
        assert "threads cap: 4" in proc.stdout

    def test_invalid_thread_cap_rejected(self):
        proc = run_cli(["version"], env_extra={"MELLIN_POLAR_THREADS": "-2"})
        assert proc.returncode == 2

    def test_summary_line_printed(self, capsys):
        main(["run", "boas-convergence", "--n", "2,4"])
        out = capsys.readouterr().out
        assert "contract_violations=0" in out

    def test_thread_cap_default(self, monkeypatch):
        monkeypatch.delenv("MELLIN_POLAR_THREADS", raising=False)
        assert thread_cap() == 0
        monkeypatch.setenv("MELLIN_POLAR_THREADS", "abc")
        with pytest.raises(UsageError):
            thread_cap()
