import json

import pytest

from genosc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestVerify:
    def test_flat_pass(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--m", "2", "--a", "0", "--samples", "20", "--seed", "1"
        )
        assert code == 0
        report = json.loads(out)
        assert report["pass"] is True
        assert report["residuals"]["det"] <= 1e-12
        assert report["schema_version"] == 1

    def test_curved_pass(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--m", "2", "--a", "1", "--samples", "20", "--seed", "42"
        )
        assert code == 0
        report = json.loads(out)
        assert report["residuals"]["ricci"] <= 1e-5
        names = [c["name"] for c in report["checks"]]
        assert "polarization_negative_control" in names
        control = next(c for c in report["checks"] if c["name"] == "polarization_negative_control")
        assert control["pass"] is True  # expected-fail control did fail

    def test_usage_error_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--m", "0", "--samples", "5"])
        assert exc.value.code == 2

    def test_failure_exit_1_with_report(self, capsys):
        code, out, _ = run(
            capsys,
            "verify", "--m", "2", "--a", "1", "--samples", "10", "--seed", "3",
            "--tol-det", "1e-20",
        )
        assert code == 1
        report = json.loads(out)
        assert report["pass"] is False

    def test_env_tolerance_override(self, capsys, monkeypatch):
        monkeypatch.setenv("GENOSC_TOL_DET", "1e-20")
        code, out, _ = run(
            capsys, "verify", "--m", "2", "--a", "1", "--samples", "10", "--seed", "3"
        )
        assert code == 1
        assert json.loads(out)["tolerances"]["det"] == 1e-20

    def test_byte_reproducibility(self, capsys):
        args = ("verify", "--m", "2", "--a", "1", "--samples", "15", "--seed", "7")
        _, first, _ = run(capsys, *args)
        _, second, _ = run(capsys, *args)
        _, multi, _ = run(capsys, *args, "--workers", "3")
        assert first == second == multi


class TestSpectrum:
    def test_rows(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--m", "2", "--lmax", "2")
        assert code == 0
        rows = json.loads(out)["rows"]
        assert [(r["l"], r["eigenvalue_float"], r["multiplicity"]) for r in rows] == [
            (0, 1, 1),
            (1, 2, 2),
            (2, 3, 3),
        ]

    def test_ground_state_m4(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--m", "4", "--lmax", "0")
        rows = json.loads(out)["rows"]
        assert rows == [
            {"l": 0, "eigenvalue": "2", "eigenvalue_float": 2, "multiplicity": 1}
        ]

    def test_negative_lmax_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["spectrum", "--m", "2", "--lmax", "-1"])
        assert exc.value.code == 2

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "spectrum", "--m", "2", "--lmax", "1", "--format", "table")
        assert code == 0
        assert "1 hbar" in out


class TestDirac:
    def test_m2(self, capsys):
        code, out, _ = run(capsys, "dirac", "--m", "2", "--l", "3")
        assert code == 0
        report = json.loads(out)
        assert report["pairs_checked"] == 16
        assert report["nonzero_residuals"] == 0

    def test_m1_trivial(self, capsys):
        code, out, _ = run(capsys, "dirac", "--m", "1", "--l", "0")
        assert code == 0
        assert json.loads(out)["pairs_checked"] == 1

    def test_budget_warning(self, capsys):
        code, out, err = run(capsys, "dirac", "--m", "2", "--l", "1", "--pair-budget", "4")
        assert code == 0
        assert "warning" in err


class TestEval:
    def test_metric(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("[[1, 0], [1, 0]]"))
        code, out, _ = run(capsys, "eval", "--m", "2", "--a", "1", "--metric")
        assert code == 0
        report = json.loads(out)
        assert report["det_g"] == pytest.approx(1.0)
        assert report["g"][0][1][0] == pytest.approx(0.14433756729740646)

    def test_element(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("[[1, 0], [1, 0]]"))
        element = '{"coeff": [[[1,0],[0,0]],[[0,0],[1,0]]], "constant": [0, 0]}'
        code, out, _ = run(capsys, "eval", "--m", "2", "--a", "1", "--element", element)
        assert code == 0
        assert json.loads(out)["value"][0] == pytest.approx(3**0.5)

    def test_inadmissible_point_exit_1(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("[[0.1, 0], [0, 0]]"))
        code, out, _ = run(capsys, "eval", "--m", "2", "--a", "1", "--metric")
        assert code == 1
        assert "DomainError" in json.loads(out)["error"]

    def test_missing_mode_exit_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "--m", "2"])
        assert exc.value.code == 2
