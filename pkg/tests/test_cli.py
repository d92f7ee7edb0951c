"""Command-line surface: formats, exit codes, precedence, determinism."""

import csv
import io
import json
import math

import pytest

from dkp_spectra import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], rows[1:]


class TestEnergies:
    def test_default_is_36_paper_rows(self, capsys):
        code, out, _ = run_cli(capsys, "energies")
        header, rows = parse_csv(out)
        assert code == 0
        assert header == ["n", "J", "a_inv_fm", "branch", "E_MeV",
                          "epsilon_MeV", "residual", "status"]
        assert len(rows) == 36
        assert all(row[3] == "paper" for row in rows)
        assert all(float(row[4]) < 0.0 for row in rows)

    def test_both_is_72_rows_with_sign_split(self, capsys):
        code, out, _ = run_cli(capsys, "energies", "--branch", "both")
        _, rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 72
        for row in rows:
            if row[7] != "ok":
                continue
            if row[3] == "paper":
                assert float(row[4]) < 0.0
            else:
                assert float(row[4]) > 0.0

    def test_single_cell(self, capsys):
        code, out, _ = run_cli(capsys, "energies", "--n-max", "0", "--j-max", "0")
        _, rows = parse_csv(out)
        assert code == 0
        assert len(rows) == 1

    def test_no_bound_state_cells_empty_with_status(self, capsys):
        code, out, _ = run_cli(capsys, "energies", "--u0", "0", "--n-max", "0",
                               "--j-max", "0")
        _, rows = parse_csv(out)
        assert code == 0
        assert rows[0][4] == ""
        assert rows[0][7] == "no_bound_state"

    def test_invalid_parameter_exits_2(self, capsys):
        code, _, err = run_cli(capsys, "energies", "--mass-mev", "-5")
        assert code == 2
        assert "error" in err

    def test_ten_significant_digits(self, capsys):
        _, out, _ = run_cli(capsys, "energies", "--n-max", "0", "--j-max", "0")
        _, rows = parse_csv(out)
        mantissa = rows[0][4].lstrip("-").replace(".", "").lstrip("0")
        assert len(mantissa) == 10

    def test_lf_line_endings(self, capsys):
        _, out, _ = run_cli(capsys, "energies", "--n-max", "0", "--j-max", "0")
        assert "\r" not in out
        assert out.endswith("\n")


class TestTable2:
    def test_default_passes(self, capsys):
        code, out, _ = run_cli(capsys, "table2", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["pass"] is True
        assert payload["max_relative_deviation"] <= 1e-3
        assert len(payload["rows"]) == 72
        flagged = [r for r in payload["rows"] if r["flag"] == "suspect_reference"]
        assert len(flagged) == 1
        assert (flagged[0]["n"], flagged[0]["J"], flagged[0]["a_inv_fm"]) == (5, 5, 0.015)

    def test_preconverted_naturals_identical(self, capsys):
        _, out_default, _ = run_cli(capsys, "table2", "--format", "json")
        hbarc = 197.3269804
        _, out_nat, _ = run_cli(
            capsys, "table2", "--format", "json",
            "--hbar-c", "1",
            "--u0", repr(67.54 / hbarc),
            "--a", repr(0.005 * hbarc),
        )
        rows_a = json.loads(out_default)["rows"]
        rows_b = json.loads(out_nat)["rows"]
        for ra, rb in zip(rows_a, rows_b):
            assert math.isclose(ra["E_computed_MeV"], rb["E_computed_MeV"],
                                rel_tol=1e-9)

    def test_tight_tolerance_fails_with_exit_1(self, capsys):
        code, out, _ = run_cli(capsys, "table2", "--tolerance", "1e-6",
                               "--format", "json")
        assert code == 1
        assert json.loads(out)["pass"] is False

    def test_csv_has_summary_on_stderr(self, capsys):
        code, out, err = run_cli(capsys, "table2")
        assert code == 0
        _, rows = parse_csv(out)
        assert len(rows) == 72
        assert "max relative deviation" in err


class TestWavefunction:
    def test_j0_hminus_identically_zero(self, capsys):
        code, out, _ = run_cli(capsys, "wavefunction", "1", "0",
                               "--branch", "physical", "--samples", "50")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("#")
        header, rows = parse_csv("\n".join(lines[1:]))
        assert header == ["r_fm", "F", "G", "H_plus", "H_minus"]
        assert len(rows) == 50
        assert all(float(row[4]) == 0.0 for row in rows)

    def test_first_excited_changes_sign_once(self, capsys):
        _, out, _ = run_cli(capsys, "wavefunction", "1", "0",
                            "--branch", "physical", "--samples", "400",
                            "--format", "json")
        payload = json.loads(out)
        values = [row["F"] for row in payload["samples"]]
        flips = sum(1 for x, y in zip(values, values[1:])
                    if x != 0.0 and y != 0.0 and (x > 0) != (y > 0))
        assert flips == 1

    def test_first_sample_near_zero_boundary(self, capsys):
        # F ~ r^(1/2+delta) at the origin: the leading samples are small
        # against the peak and rise monotonically away from r = 0
        _, out, _ = run_cli(capsys, "wavefunction", "0", "0",
                            "--branch", "physical", "--samples", "2000",
                            "--format", "json")
        payload = json.loads(out)
        values = [abs(row["F"]) for row in payload["samples"]]
        peak = max(values)
        assert values[0] < 0.1 * peak
        assert values[0] < values[1] < values[2]
        assert payload["branch"] == "physical"
        assert payload["norm_constant"] > 0.0

    def test_component_selection(self, capsys):
        _, out, _ = run_cli(capsys, "wavefunction", "0", "1",
                            "--branch", "physical", "--components", "F,G",
                            "--samples", "10", "--format", "json")
        payload = json.loads(out)
        assert set(payload["samples"][0]) == {"r_fm", "F", "G"}

    def test_missing_level_exits_1(self, capsys):
        code, _, err = run_cli(capsys, "wavefunction", "0", "0", "--u0", "0")
        assert code == 1

    def test_branch_both_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "wavefunction", "0", "0", "--branch", "both")
        assert code == 2


class TestVerify:
    def test_passes_at_anchor(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "0", "0", "--exact-oracle", "off")
        payload = json.loads(out)
        assert code == 0
        assert payload["pass"] is True
        assert payload["checks"]["physical_matches_oracle"] is True
        assert payload["checks"]["ode_defect_ok"] is True
        assert payload["oracle"]["paper_in_normalizable_spectrum"] is False
        assert payload["ode_residual"]["paper_vs_approx"] > 1e-3

    def test_zero_coupling_reports_no_states_exit_0(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "0", "0", "--u0", "0")
        payload = json.loads(out)
        assert code == 0
        assert payload["status"] == "no bound states"

    def test_exact_oracle_toggle(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "0", "0", "--exact-oracle", "on")
        payload = json.loads(out)
        assert code == 0
        assert payload["oracle"]["exact_E_MeV"] is not None
        assert abs(payload["oracle"]["exact_minus_approx_MeV"]) < 1.0


class TestApprox:
    def test_inequality_and_monotonic_deviation(self, capsys):
        code, out, _ = run_cli(capsys, "approx", "--samples", "64")
        header, rows = parse_csv(out)
        assert code == 0
        assert header == ["r_fm", "V_yukawa_MeV", "V_approx_MeV", "relative_deviation"]
        devs = []
        for row in rows:
            vy, va, dev = float(row[1]), float(row[2]), float(row[3])
            assert abs(va) <= abs(vy) * (1.0 + 1e-15)
            devs.append(dev)
        assert devs == sorted(devs)

    def test_deviation_near_ar_tenth(self, capsys):
        # default r-max is 0.1/a, so the last row sits at a r = 0.1
        _, out, _ = run_cli(capsys, "approx", "--samples", "10", "--format", "json")
        payload = json.loads(out)
        last = payload["rows"][-1]
        assert last["relative_deviation"] == pytest.approx(1.665e-3, abs=2e-5)

    def test_bad_samples_exit_2(self, capsys):
        code, _, _ = run_cli(capsys, "approx", "--samples", "1")
        assert code == 2


class TestOutputHygiene:
    def test_json_round_trip_byte_identical(self, capsys):
        _, out, _ = run_cli(capsys, "energies", "--format", "json",
                            "--n-max", "1", "--j-max", "1")
        rebuilt = json.dumps(json.loads(out), indent=2, sort_keys=True) + "\n"
        assert rebuilt == out

    def test_deterministic_bytes(self, capsys):
        a = run_cli(capsys, "energies", "--n-max", "2", "--j-max", "2")
        b = run_cli(capsys, "energies", "--n-max", "2", "--j-max", "2")
        assert a == b

    def test_output_file(self, tmp_path, capsys):
        target = tmp_path / "rows.csv"
        code, out, _ = run_cli(capsys, "energies", "--n-max", "0", "--j-max", "0",
                               "--output", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text().startswith("n,J,")


class TestConfigPrecedence:
    def test_flag_beats_config_beats_default(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("n_max=1  # comment\nj_max=0\nbranch=physical\n")
        # config only
        _, out, _ = run_cli(capsys, "energies", "--config", str(cfg))
        _, rows = parse_csv(out)
        assert len(rows) == 2
        assert rows[0][3] == "physical"
        # flag overrides the config key
        _, out, _ = run_cli(capsys, "energies", "--config", str(cfg),
                            "--n-max", "0", "--branch", "paper")
        _, rows = parse_csv(out)
        assert len(rows) == 1
        assert rows[0][3] == "paper"

    def test_env_var_names_default_config(self, tmp_path, capsys, monkeypatch):
        cfg = tmp_path / "env.cfg"
        cfg.write_text("n_max=0\nj_max=0\n")
        monkeypatch.setenv("DKP_SPECTRA_CONFIG", str(cfg))
        _, out, _ = run_cli(capsys, "energies")
        _, rows = parse_csv(out)
        assert len(rows) == 1

    def test_unknown_key_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("masses=12\n")
        code, _, _ = run_cli(capsys, "energies", "--config", str(cfg))
        assert code == 2

    def test_missing_config_exits_2(self, capsys):
        code, _, _ = run_cli(capsys, "energies", "--config", "/nonexistent/x.cfg")
        assert code == 2
