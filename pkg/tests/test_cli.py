"""CLI golden outputs, exit codes, determinism across algorithms."""

import json

import pytest

from adomian.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_cli_error(capsys, *argv):
    with pytest.raises(SystemExit) as err:
        main(list(argv))
    captured = capsys.readouterr()
    return err.value.code, captured.err


class TestGen:
    def test_golden_three_lines(self, capsys):
        code, out = run_cli(
            capsys, "gen", "--power", "2", "--order", "3", "--algo", "matrix"
        )
        assert code == 0
        assert out == (
            "A[0] = u[0]^2\n"
            "A[1] = 2*u[0]*u[1]\n"
            "A[2] = u[1]^2 + 2*u[0]*u[2]\n"
        )

    def test_linear(self, capsys):
        code, out = run_cli(capsys, "gen", "--power", "1", "--order", "2")
        assert code == 0
        assert out == "A[0] = u[0]\nA[1] = u[1]\n"

    def test_two_dim_single_cell(self, capsys):
        code, out = run_cli(
            capsys, "gen", "--power", "2", "--dim", "2", "--rows", "1", "--cols", "1"
        )
        assert code == 0
        assert out == "A[0,0] = u[0,0]^2\n"

    def test_two_dim_row_major_order(self, capsys):
        code, out = run_cli(
            capsys, "gen", "--power", "2", "--dim", "2", "--rows", "2", "--cols", "2"
        )
        labels = [line.split(" = ")[0] for line in out.strip().splitlines()]
        assert labels == ["A[0,0]", "A[0,1]", "A[1,0]", "A[1,1]"]

    def test_algorithms_byte_identical(self, capsys):
        outputs = set()
        for algo in ("matrix", "duan1", "duan3", "oracle"):
            code, out = run_cli(
                capsys, "gen", "--power", "3", "--order", "6", "--algo", algo
            )
            assert code == 0
            outputs.add(out)
        assert len(outputs) == 1

    def test_2d_matrix_oracle_identical(self, capsys):
        _, a = run_cli(capsys, "gen", "--power", "2", "--dim", "2",
                       "--rows", "3", "--cols", "2", "--algo", "matrix")
        _, b = run_cli(capsys, "gen", "--power", "2", "--dim", "2",
                       "--rows", "3", "--cols", "2", "--algo", "oracle")
        assert a == b

    def test_deterministic_repeat(self, capsys):
        _, first = run_cli(capsys, "gen", "--power", "4", "--order", "5")
        _, second = run_cli(capsys, "gen", "--power", "4", "--order", "5")
        assert first == second

    def test_json_structure(self, capsys):
        code, out = run_cli(
            capsys, "gen", "--power", "2", "--order", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert [item["index"] for item in payload] == [[0], [1], [2]]
        assert payload[2]["polynomial"] == [
            {"coeff": "1", "monomial": [{"var": [1], "family": "u", "exp": 2}]},
            {"coeff": "2", "monomial": [
                {"var": [0], "family": "u", "exp": 1},
                {"var": [2], "family": "u", "exp": 1},
            ]},
        ]

    def test_json_2d_row_major(self, capsys):
        code, out = run_cli(
            capsys, "gen", "--power", "2", "--dim", "2", "--rows", "2",
            "--cols", "2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert [item["index"] for item in payload] == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_duan_rejects_dim_2(self, capsys):
        code, err = run_cli_error(
            capsys, "gen", "--power", "2", "--dim", "2", "--rows", "2",
            "--cols", "2", "--algo", "duan1",
        )
        assert code == 2
        assert "duan1" in err

    def test_dim1_requires_order(self, capsys):
        code, err = run_cli_error(capsys, "gen", "--power", "2")
        assert code == 2
        assert "--order" in err

    def test_dim2_requires_rows_cols(self, capsys):
        code, _ = run_cli_error(capsys, "gen", "--power", "2", "--dim", "2")
        assert code == 2

    def test_rejects_bad_power(self, capsys):
        code, _ = run_cli_error(capsys, "gen", "--power", "0", "--order", "3")
        assert code == 2


class TestSolve:
    def test_geometric_golden(self, capsys):
        code, out = run_cli(
            capsys, "solve", "--a", "0", "--c", "1", "--power", "2",
            "--g", "0", "--u0", "1", "--depth", "3",
        )
        assert code == 0
        assert out == (
            "u[0] = 1\n"
            "u[1] = x\n"
            "u[2] = x^2\n"
            "u[3] = x^3\n"
            "sum = 1 + x + x^2 + x^3\n"
        )

    def test_zero_initial_value(self, capsys):
        code, out = run_cli(
            capsys, "solve", "--u0", "0", "--c", "1", "--power", "2",
            "--a", "0", "--g", "0",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert all(line.endswith("= 0") for line in lines)

    def test_exponential_golden(self, capsys):
        code, out = run_cli(
            capsys, "solve", "--a", "-1", "--c", "0", "--power", "2",
            "--g", "0", "--u0", "1", "--depth", "2",
        )
        assert code == 0
        assert out.strip().splitlines()[-1] == "sum = 1 - x + 1/2*x^2"

    def test_json_structure(self, capsys):
        code, out = run_cli(
            capsys, "solve", "--a", "0", "--c", "1", "--power", "2",
            "--g", "0", "--u0", "1", "--depth", "2", "--format", "json",
        )
        payload = json.loads(out)
        assert payload["components"] == [["1"], ["0", "1"], ["0", "0", "1"]]
        assert payload["partial_sum"] == ["1", "1", "1"]

    def test_bad_rational(self, capsys):
        code, err = run_cli_error(
            capsys, "solve", "--a", "nope", "--power", "2", "--u0", "1"
        )
        assert code == 2
        assert "--a" in err

    def test_bad_forcing(self, capsys):
        code, err = run_cli_error(
            capsys, "solve", "--power", "2", "--u0", "1", "--g", "x^"
        )
        assert code == 2
        assert "--g" in err


class TestBench:
    def test_small_run_writes_csv(self, capsys, tmp_path):
        out_path = tmp_path / "r.csv"
        code, out = run_cli(
            capsys, "bench", "--algos", "matrix,duan3", "--powers", "3",
            "--orders", "6", "--reps", "3", "--warmup", "0",
            "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "algorithm,power,order,repetition,seconds,status"
        assert len(lines) == 7
        assert "matrix" in out and "duan3" in out

    def test_json_report(self, capsys, tmp_path):
        out_path = tmp_path / "r.json"
        code, _ = run_cli(
            capsys, "bench", "--algos", "matrix", "--powers", "2",
            "--orders", "4", "--reps", "1", "--warmup", "0",
            "--out", str(out_path), "--format", "json",
        )
        assert code == 0
        rows = json.loads(out_path.read_text())
        assert len(rows) == 1
        assert rows[0]["algorithm"] == "matrix" and rows[0]["status"] == "ok"

    def test_all_timeout_exit_code(self, capsys):
        code, out = run_cli(
            capsys, "bench", "--algos", "matrix", "--powers", "2",
            "--orders", "4", "--reps", "1", "--warmup", "0",
            "--timeout", "0.000001",
        )
        assert code == 3
        assert "timeout" in out

    def test_unknown_algorithm(self, capsys):
        code, err = run_cli_error(
            capsys, "bench", "--algos", "foo", "--powers", "2", "--orders", "4"
        )
        assert code == 2
        for name in ("matrix", "duan1", "duan3", "oracle"):
            assert name in err

    def test_bad_powers(self, capsys):
        code, _ = run_cli_error(
            capsys, "bench", "--algos", "matrix", "--powers", "x", "--orders", "4"
        )
        assert code == 2
