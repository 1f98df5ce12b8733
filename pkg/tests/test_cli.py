"""Command-line behaviour: schemas, exit codes, determinism, config."""

import csv
import json
import math

import pytest

from sphrestrict.cli import SWEEP_COLUMNS, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstant:
    def test_json_payload(self, capsys):
        code, out, err = run_cli(
            capsys, "constant", "--d", "3", "--p", "1.2", "--q", "2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["k_rad_first_principles"] == pytest.approx(
            (2.0 * math.pi) ** (5.0 / 6.0), rel=1e-9
        )
        assert payload["kernel_integral"]["converged"] is True
        assert payload["kernel_integral"]["error_estimate"] > 0.0
        assert payload["tomas_stein_ok"] is True
        assert payload["p_prime"] == pytest.approx(6.0)

    def test_inadmissible_exits_2_citing_window(self, capsys):
        code, out, err = run_cli(
            capsys, "constant", "--d", "2", "--p", "1.4", "--q", "2"
        )
        assert code == 2
        assert "1 < p < 2d/(d+1)" in err
        assert "1.33333333333333" in err

    def test_nonconvergent_exits_3(self, capsys):
        # So close to the convergence boundary that the arch budget runs
        # out before the tolerance is met.
        code, _, err = run_cli(
            capsys, "constant", "--d", "3", "--p", "1.499999", "--q", "2"
        )
        assert code == 3
        assert "did not converge" in err

    def test_fifteen_significant_digits(self, capsys):
        code, out, _ = run_cli(
            capsys, "constant", "--d", "3", "--p", "1.2", "--q", "2"
        )
        value = json.loads(out)["k_rad_first_principles"]
        assert value == float(f"{value:.15g}")


class TestGaussianBound:
    def test_p1_degenerate(self, capsys):
        code, out, _ = run_cli(
            capsys, "gaussian-bound", "--d", "3", "--p", "1", "--q", "2"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["bound"] == pytest.approx(math.sqrt(4 * math.pi), rel=1e-8)
        assert payload["sigma_star"] <= 2e-6

    def test_explicit_sigma(self, capsys):
        code, out, _ = run_cli(
            capsys, "gaussian-bound", "--d", "3", "--p", "1.2", "--q", "2",
            "--sigma", "1.0",
        )
        payload = json.loads(out)
        assert "bound" in payload and payload["sigma"] == 1.0


class TestSweep:
    def test_csv_schema_and_idempotence(self, capsys, tmp_path):
        out_a = tmp_path / "a.csv"
        out_b = tmp_path / "b.csv"
        args = [
            "sweep", "--d", "3", "--p", "1.1:1.3:3", "--q", "1:2:2",
            "--output",
        ]
        assert main(args + [str(out_a)]) == 0
        assert main(args + [str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        with open(out_a, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == list(SWEEP_COLUMNS)
        assert len(rows) == 1 + 3 * 2

    def test_skipped_marker_for_divergent_points(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main([
            "sweep", "--d", "2", "--p", "1.2:1.4:2", "--q", "2", "--output", str(out),
        ]) == 0
        with open(out, newline="") as fh:
            rows = list(csv.DictReader(fh))
        good = rows[0]
        skipped = rows[1]
        assert float(good["p"]) == pytest.approx(1.2)
        assert good["k_rad"] not in ("", "skipped")
        assert float(skipped["p"]) == pytest.approx(1.4)
        assert skipped["integral"] == "skipped"
        assert skipped["k_rad"] == "skipped"
        # Gaussian bound exists for every p >= 1, skipped rows included.
        assert float(skipped["gauss_opt"]) > 0.0
        assert skipped["tomas_stein_ok"] == "false"

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "sweep", "--d", "3", "--p", "1.2", "--q", "2",
            "--format", "json",
        )
        payload = json.loads(out)
        assert payload[0]["skipped"] is False
        assert payload[0]["k_rad"] == pytest.approx(
            (2 * math.pi) ** (5 / 6), rel=1e-9
        )


class TestVerify:
    def test_byte_identical_reports(self, tmp_path):
        out_a = tmp_path / "r1.json"
        out_b = tmp_path / "r2.json"
        args = [
            "verify", "--d", "3", "--p", "1.2", "--q", "2", "--seed", "42",
            "--trials", "10", "--output",
        ]
        assert main(args + [str(out_a)]) == 0
        assert main(args + [str(out_b)]) == 0
        assert out_a.read_bytes() == out_b.read_bytes()
        payload = json.loads(out_a.read_text())
        assert payload["points"][0]["trials"] == 10
        assert payload["points"][0]["failures"] == []

    def test_inadmissible_grid_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "--d", "2", "--p", "1.4", "--q", "2",
            "--trials", "2",
        )
        assert code == 2
        assert "convergence window" in err


class TestGls:
    @pytest.fixture()
    def psi_csv(self, tmp_path):
        path = tmp_path / "psi.csv"
        path.write_text(
            "p,psi\n1.05,3.5\n1.10,4.3\n1.15,5.5\n1.20,7.5\n1.25,12.0\n1.30,30.0\n"
        )
        return path

    def test_zeta_table_csv(self, capsys, psi_csv):
        code, out, _ = run_cli(
            capsys, "gls", "--psi", str(psi_csv), "--d", "3", "--q", "1:3:5",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.reader(out.splitlines()))
        assert rows[0] == ["q", "zeta"]
        assert len(rows) == 6
        zetas = [float(r[1]) for r in rows[1:]]
        assert all(a > b for a, b in zip(zetas, zetas[1:]))  # A(3) > 1

    def test_transfer_check(self, capsys, psi_csv):
        code, out, _ = run_cli(
            capsys, "gls", "--psi", str(psi_csv), "--d", "3", "--q", "1:3:5",
            "--check-profile", "gaussian:1.0",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["transfer"]["ok"] is True
        assert payload["transfer"]["left"] <= payload["transfer"]["right"] * (1 + 1e-8)
        assert payload["cut_set"] == [1.05, 1.1, 1.15, 1.2, 1.25, 1.3]

    def test_missing_header_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        code, _, err = run_cli(
            capsys, "gls", "--psi", str(bad), "--d", "3", "--q", "2"
        )
        assert code == 2
        assert "p,psi" in err


class TestReport:
    def test_csv_report(self, capsys):
        code, out, _ = run_cli(
            capsys, "report", "--d", "3", "--p", "1.1:1.3:3", "--q", "2",
            "--format", "csv",
        )
        assert code == 0
        rows = list(csv.DictReader(out.splitlines()))
        assert len(rows) == 3
        for row in rows:
            assert row["status"] == "ok"
            a = 3 * (1 - 1 / float(row["p"]))
            assert float(row["gauss_ratio"]) == pytest.approx(
                math.exp(0.5 * a), rel=1e-6
            )


class TestConfig:
    def test_config_sets_defaults_flags_win(self, capsys, tmp_path):
        config = tmp_path / "run.cfg"
        config.write_text("format=csv\ntol=1e-6\n")
        # config only
        code, out, _ = run_cli(
            capsys, "--config", str(config), "constant",
            "--d", "3", "--p", "1.2", "--q", "2",
        )
        assert code == 0
        assert out.startswith("d,p,q")  # csv came from config
        # explicit flag beats config
        code, out, _ = run_cli(
            capsys, "--config", str(config), "constant",
            "--d", "3", "--p", "1.2", "--q", "2", "--format", "json",
        )
        assert code == 0
        json.loads(out)

    def test_malformed_config_exits_2(self, capsys, tmp_path):
        config = tmp_path / "broken.cfg"
        config.write_text("this is not a key value pair\n")
        code, _, err = run_cli(
            capsys, "--config", str(config), "constant",
            "--d", "3", "--p", "1.2", "--q", "2",
        )
        assert code == 2
