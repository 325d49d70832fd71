import json

import pytest

from rcadjoint.cli import main


def run(args):
    return main(args)


class TestExpand:
    def test_theta_json(self, capsys):
        assert run(["expand", "--form", "theta", "--precision", "10"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["precision"] == 10
        assert data["coeffs"][:5] == ["1/1", "2/1", "0/1", "0/1", "2/1"]
        assert data["twice_weight"] == 1

    def test_output_file(self, tmp_path):
        out = tmp_path / "theta.json"
        assert run(
            ["expand", "--form", "theta", "--precision", "6", "--output", str(out)]
        ) == 0
        assert json.loads(out.read_text())["precision"] == 6

    def test_unknown_form(self, capsys):
        assert run(["expand", "--form", "nosuch", "--precision", "5"]) == 2
        assert "unknown form" in capsys.readouterr().err


class TestBracket:
    def test_product_case(self, capsys):
        code = run(
            ["bracket", "--f", "theta", "--g", "theta", "--nu", "0",
             "--precision", "6"]
        )
        assert code == 0
        data = json.loads(capsys.readouterr().out)
        assert data["coeffs"][:6] == ["1/1", "4/1", "4/1", "0/1", "4/1", "8/1"]
        assert data["twice_weight"] == 2

    def test_negative_nu_is_usage_error(self):
        assert run(
            ["bracket", "--f", "theta", "--g", "theta", "--nu", "-1",
             "--precision", "6"]
        ) == 2

    def test_series_file_round_trip(self, tmp_path, capsys):
        path = tmp_path / "t.json"
        assert run(
            ["expand", "--form", "theta", "--precision", "8", "--output", str(path)]
        ) == 0
        code = run(
            ["bracket", "--f", str(path), "--g", "theta", "--nu", "0",
             "--precision", "8"]
        )
        assert code == 0
        from_file = json.loads(capsys.readouterr().out)
        assert run(
            ["bracket", "--f", "theta", "--g", "theta", "--nu", "0",
             "--precision", "8"]
        ) == 0
        from_name = json.loads(capsys.readouterr().out)
        assert from_file == from_name


class TestAdjoint:
    def test_csv_output(self, capsys):
        code = run(
            ["adjoint", "--case", "2", "--f-product", "theta", "delta_4_6",
             "--g", "theta", "--nu", "0", "--n-max", "3", "--terms", "400"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "n,c_n,err_bound"
        assert len(lines) == 4

    def test_negative_nu_rejected(self):
        assert run(
            ["adjoint", "--case", "1", "--f", "delta", "--g", "theta",
             "--nu", "-1", "--n-max", "2", "--terms", "10"]
        ) == 2

    def test_undersized_series_file(self, tmp_path, capsys):
        path = tmp_path / "small.json"
        run(["expand", "--form", "delta_4_6", "--precision", "10",
             "--output", str(path)])
        code = run(
            ["adjoint", "--case", "2", "--f", str(path), "--g", "theta",
             "--nu", "0", "--n-max", "3", "--terms", "400"]
        )
        assert code == 2
        assert "precision" in capsys.readouterr().err

    def test_deterministic_output(self, tmp_path):
        args = ["adjoint", "--case", "integral", "--f-product", "E4", "delta",
                "--g", "E4", "--nu", "0", "--n-max", "2", "--terms", "300"]
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        assert run(args + ["--output", str(out1)]) == 0
        assert run(args + ["--output", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestVerify:
    def test_ratio_sec5_passes(self, capsys):
        code = run(
            ["verify", "ratio", "--case", "2", "--f-product", "theta",
             "delta_4_6", "--g", "theta", "--nu", "0", "--n-max", "6",
             "--terms", "2000"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["pass"] is True
        assert out["lambda"] > 0

    def test_ratio_failure_exit_code(self, capsys):
        # wrong basis: theta's coefficients are not proportional to c(n)
        code = run(
            ["verify", "ratio", "--case", "integral", "--f-product", "E4",
             "delta", "--g", "E4", "--nu", "0", "--n-max", "6",
             "--terms", "500", "--basis", "E4", "--tolerance", "1e-6"]
        )
        assert code == 1
        assert json.loads(capsys.readouterr().out)["pass"] is False

    def test_lambda_subcommand(self, capsys):
        code = run(
            ["verify", "lambda", "--case", "2", "--basis", "delta_4_6",
             "--g", "theta", "--nu", "0", "--n-max", "1", "--terms", "1500"]
        )
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["lambda"] > 0

    def test_rewritten_subcommand(self, capsys):
        code = run(["verify", "rewritten", "--terms", "500"])
        out = json.loads(capsys.readouterr().out)
        assert code == 0
        assert out["faithful_sum"] > 0
        assert "squares_indexed_sum" in out

    def test_missing_subcommand_is_usage_error(self):
        assert run(["verify"]) == 2
