import json
import subprocess
import sys

import pytest

from orthorate.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_table(text):
    out = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition("  ")
        out[key.strip()] = value.strip()
    return out


class TestSolve:
    def test_equal_intervals(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "1,1,1,1")
        assert code == 0
        table = parse_table(out)
        assert table["e_min"] == "3"
        assert table["ratio"] == "1"
        assert table["cert_passed"] == "true"
        assert table["ortho_ok"] == "true"

    def test_double_interval(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "1,1,2")
        table = parse_table(out)
        assert code == 0
        assert table["e_min"] == "3"
        assert table["ratio"] == "1.5"

    def test_single_state(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "5")
        table = parse_table(out)
        assert code == 0
        assert table["e_min"] == "0"
        assert table["ratio"] == "-"

    def test_rational_intervals_scaled(self, capsys):
        code, out, _ = run_cli(capsys, "solve", "0.5,0.5,1")
        table = parse_table(out)
        assert code == 0
        assert table["lattice_scale"] == "2"
        assert table["e_min"] == "3"

    def test_problem_file(self, capsys, tmp_path):
        path = tmp_path / "problem.json"
        path.write_text(json.dumps({"times": [0, 1, 2], "period": 4}))
        code, out, _ = run_cli(capsys, "solve", "--problem-file", str(path))
        assert code == 0
        assert parse_table(out)["e_min"] == "3"

    def test_missing_input_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "solve")
        assert code == 2
        assert "error" in err

    def test_malformed_intervals_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "1,banana")
        assert code == 2

    def test_zero_interval_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "solve", "1,0,2")
        assert code == 2

    def test_formats_agree_to_printed_precision(self, capsys):
        _, table_out, _ = run_cli(capsys, "solve", "2,3,4")
        table = parse_table(table_out)
        _, csv_out, _ = run_cli(capsys, "solve", "2,3,4", "--format", "csv")
        header, row = csv_out.strip().splitlines()
        csv_map = dict(zip(header.split(","), row.split(",")))
        _, json_out, _ = run_cli(capsys, "solve", "2,3,4", "--format", "jsonl")
        json_map = json.loads(json_out)
        for key in ("e_min", "ratio", "cert_gap"):
            assert table[key] == csv_map[key]
            assert float(table[key]) == pytest.approx(json_map[key], rel=1e-11)


class TestBounds:
    def test_two_states_band_equals_n2t(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "2", "--t", "2")
        table = parse_table(out)
        assert code == 0
        assert table["eband"] == table["n2t"] == "0.25"

    def test_taumin_dominates(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "10", "--t", "10",
                               "--taumin", "0.1")
        assert code == 0
        assert parse_table(out)["dominant"] == "taumin"

    def test_single_state_zero(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--n", "1", "--t", "5")
        assert code == 0
        assert parse_table(out)["eband"] == "0"


class TestEvolve:
    def test_equal_four_zeros(self, capsys):
        code, out, _ = run_cli(capsys, "evolve", "--equal", "4", "--t", "4")
        table = parse_table(out)
        assert code == 0
        zeros = [float(v) for v in table["orthogonal_times"].split(";")]
        assert zeros == pytest.approx([1.0, 2.0, 3.0], abs=1e-6)

    def test_single_weight_no_zeros(self, capsys):
        code, out, _ = run_cli(capsys, "evolve", "--weights", "1", "--t", "1")
        table = parse_table(out)
        assert code == 0
        assert table["n_orthogonal"] == "0"

    def test_two_level_zero_at_one(self, capsys):
        code, out, _ = run_cli(capsys, "evolve", "--weights", "0.5,0.5", "--t", "2")
        table = parse_table(out)
        assert code == 0
        zeros = [float(v) for v in table["orthogonal_times"].split(";")]
        assert zeros == pytest.approx([1.0], abs=1e-6)

    def test_trace_csv_written(self, capsys, tmp_path):
        out_path = tmp_path / "trace.csv"
        code, _, _ = run_cli(capsys, "evolve", "--equal", "2", "--t", "2",
                             "--samples", "64", "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "t,re,im,abs"
        assert len(lines) == 65


class TestShiftAndFrames:
    def test_shift_equality_case(self, capsys):
        code, out, _ = run_cli(capsys, "shift", "--p", "0,1", "--u", "0.5,0.5",
                               "--h", "1")
        table = parse_table(out)
        assert code == 0
        assert float(table["product"]) == pytest.approx(0.25, abs=1e-6)
        assert table["equality"] == "true"

    def test_frames_identity(self, capsys):
        code, out, _ = run_cli(capsys, "frames", "--er", "1", "--v", "0.6")
        table = parse_table(out)
        assert code == 0
        assert float(table["count_lab"]) - float(table["count_rest"]) == pytest.approx(0.45)
        assert float(table["count_motion"]) == pytest.approx(0.45)

    def test_frames_at_rest(self, capsys):
        code, out, _ = run_cli(capsys, "frames", "--er", "1", "--v", "0")
        table = parse_table(out)
        assert code == 0
        assert table["momentum"] == "0"
        assert table["identity_residual"] == "0"

    def test_bad_speed_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "frames", "--er", "1", "--v", "1.5")
        assert code == 2


class TestSweepCommand:
    def test_control_sweep_and_rerun_identical(self, capsys, tmp_path):
        argv = ["sweep", "--samples", "40", "--ndiff", "1", "--seed", "7",
                "--nmax", "8", "--maxlen", "10", "--out", str(tmp_path / "a")]
        assert main(argv) == 0
        capsys.readouterr()
        argv[-1] = str(tmp_path / "b")
        assert main(argv) == 0
        capsys.readouterr()
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
        rows = (tmp_path / "a.csv").read_text().splitlines()[1:]
        assert len(rows) == 40
        for row in rows:
            assert float(row.split(",")[7]) == pytest.approx(1.0, abs=1e-6)

    def test_family_mode(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "sweep", "--family", "double",
                               "--nmax", "9", "--out", str(tmp_path / "fam"))
        assert code == 0
        rows = (tmp_path / "fam.csv").read_text().splitlines()[1:]
        assert len(rows) == 8  # N = 2..9
        for row in rows:
            parts = row.split(",")
            n = int(parts[1])
            assert float(parts[7]) == pytest.approx(n / (n - 1), abs=1e-6)

    def test_study_flag_prints_rows(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "sweep", "--samples", "20", "--seed", "3",
                               "--nmax", "6", "--maxlen", "8",
                               "--out", str(tmp_path / "s"), "--study")
        assert code == 0
        assert "n_different" in out
        assert "family_ratio" in out


class TestExitCodes:
    def test_usage_error_is_two(self, capsys):
        assert main(["solve", "0"]) == 2
        capsys.readouterr()

    def test_unknown_subcommand_systemexit_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_console_script_installed(self):
        proc = subprocess.run([sys.executable, "-m", "orthorate.cli", "solve", "1,1"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "e_min" in proc.stdout
