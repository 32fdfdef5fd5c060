"""CLI contract: exit codes, report formats, determinism, figures."""

import csv
import io
import json

import pytest

from ellog.cli import main

SMALL_GRID_ARGS = [
    "--a-values", "1.5,2.5", "--b-values", "0.4,1.0", "--n-c", "4",
]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_passing_check_exits_zero(self, capsys):
        code, out, err = run_cli(capsys, ["verify-entry", "--a", "2.0", "--b", "1.0"])
        assert code == 0
        assert "PASS" in out

    def test_invalid_parameters_exit_two(self, capsys):
        code, out, err = run_cli(capsys, ["verify-entry", "--a", "1.0", "--b", "2.0"])
        assert code == 2
        assert "requires 0 < b < a" in err

    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify-entry", "--a", "2.0", "--b", "1.0", "--bogus"])
        assert exc.value.code == 2

    def test_missing_subcommand_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2


class TestJsonFormat:
    def test_schema_and_pass_flag(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["verify-entry", "--a", "2.0", "--b", "1.0", "--tol", "1e-9",
             "--format", "json"],
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["command"] == "verify-entry"
        assert payload["n_fail"] == 0
        record = payload["checks"][0]
        assert set(record) == {
            "check", "inputs", "lhs", "rhs", "abs_err", "rel_err", "tol",
            "pass", "note",
        }
        assert record["pass"] is True
        assert record["inputs"] == {"a": 2.0, "b": 1.0}

    def test_floats_have_17_significant_digits(self, capsys):
        _, out, _ = run_cli(
            capsys,
            ["verify-entry", "--a", "2.0", "--b", "1.0", "--format", "json"],
        )
        # the pinned entry value, round-trippable at 17 digits
        assert "-0.55474343805046988" in out
        value = json.loads(out)["checks"][0]["lhs"]
        assert value == float("-0.55474343805046988")

    def test_determinism_byte_identical(self, capsys):
        argv = ["verify-grid", *SMALL_GRID_ARGS, "--format", "json"]
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second


class TestCsvFormat:
    def test_header_and_rows(self, capsys):
        code, out, _ = run_cli(
            capsys, ["j-compare", "--c", "0.5", "--format", "csv"]
        )
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["check", "inputs", "lhs", "rhs", "abs_err",
                           "rel_err", "tol", "pass", "note"]
        assert len(rows) == 1 + 6  # four routes -> six pairwise checks
        assert all(row[1] == "c=0.5" for row in rows[1:])


class TestSubcommands:
    def test_eval_k(self, capsys):
        code, out, _ = run_cli(capsys, ["eval-k", "--k", "0.5"])
        assert code == 0
        assert "K_agm_vs_quadrature" in out and "E_agm_vs_quadrature" in out

    def test_eval_f_inside_radius(self, capsys):
        code, out, _ = run_cli(capsys, ["eval-f", "--x", "0.02"])
        assert code == 0
        assert "series_vs_closed" in out

    def test_eval_f_outside_radius(self, capsys):
        code, out, _ = run_cli(capsys, ["eval-f", "--x", "0.25"])
        assert code == 0
        assert "series" not in out  # only the two continuations compared

    def test_weierstrass(self, capsys):
        code, out, _ = run_cli(capsys, ["weierstrass", "--c", "0.3"])
        assert code == 0
        assert "legendre" in out and "sigma_product_identity" in out

    def test_ode_check_note(self, capsys):
        code, out, _ = run_cli(capsys, ["ode-check", "--terms", "200"])
        assert code == 0
        assert "200 residual coefficients exactly zero" in out

    def test_telescope_check(self, capsys):
        code, out, _ = run_cli(capsys, ["telescope-check", "--max-n", "40"])
        assert code == 0
        assert "certificate exact for n=0..40" in out

    def test_stefan_check(self, capsys):
        code, out, _ = run_cli(capsys, ["stefan-check", "--max-j", "30"])
        assert code == 0
        assert "identity exact for j=1..30" in out

    def test_theta0(self, capsys):
        code, out, _ = run_cli(capsys, ["theta0", "--a", "0.8", "--gamma", "0.5"])
        assert code == 0
        assert "theta0=" in out

    def test_theta0_rejects_bad_a(self, capsys):
        code, _, err = run_cli(capsys, ["theta0", "--a", "1.2"])
        assert code == 2
        assert "requires 0 < a < 1" in err

    def test_verify_4242_1(self, capsys):
        code, out, _ = run_cli(capsys, ["verify-4242-1", "--a", "3.0", "--b", "2.0"])
        assert code == 0


class TestOutputFile:
    def test_out_writes_report(self, tmp_path, capsys):
        target = tmp_path / "report.csv"
        code, out, _ = run_cli(
            capsys,
            ["j-compare", "--c", "0.4", "--format", "csv", "--out", str(target)],
        )
        assert code == 0
        assert target.exists()
        assert "report written to" in out
        content = target.read_text()
        assert content.startswith("check,")

    def test_figures_rendered(self, tmp_path, capsys):
        figdir = tmp_path / "figs"
        code, out, _ = run_cli(
            capsys,
            ["verify-grid", *SMALL_GRID_ARGS, "--format", "csv",
             "--out", str(tmp_path / "grid.csv"), "--figures", str(figdir)],
        )
        assert code == 0
        pngs = sorted(p.name for p in figdir.glob("*.png"))
        assert pngs == ["check_errors.png", "f_routes.png", "j_routes.png"]
        assert all((figdir / name).stat().st_size > 1000 for name in pngs)
