"""Benchmark harness: config validation, gate, timeout semantics, reports."""

import json
import time

import pytest

from adomian import (
    AlgorithmMismatchError,
    BenchConfig,
    BenchReport,
    BenchRow,
    run_bench,
    write_report,
)
from adomian.reference import oracle_series_1d


class TestConfigValidation:
    def test_unknown_algorithm_lists_valid_names(self):
        with pytest.raises(ValueError) as err:
            BenchConfig(algorithms=("foo",), powers=(2,), orders=(3,))
        message = str(err.value)
        for name in ("matrix", "duan1", "duan3", "oracle"):
            assert name in message

    def test_empty_axes(self):
        with pytest.raises(ValueError):
            BenchConfig(algorithms=(), powers=(2,), orders=(3,))
        with pytest.raises(ValueError):
            BenchConfig(algorithms=("matrix",), powers=(), orders=(3,))

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            BenchConfig(algorithms=("matrix",), powers=(2,), orders=(3,), repetitions=0)
        with pytest.raises(ValueError):
            BenchConfig(algorithms=("matrix",), powers=(2,), orders=(3,), timeout=0)


class TestCorrectnessGate:
    def test_mismatch_aborts_with_diff(self):
        def broken(power, order):
            polys = oracle_series_1d(power, order)
            polys[1] = polys[1] * 2
            return polys

        cfg = BenchConfig(
            algorithms=("oracle", "matrix"), powers=(2,), orders=(4,),
            repetitions=1, warmup=0,
        )
        with pytest.raises(AlgorithmMismatchError) as err:
            run_bench(cfg, algorithms={"oracle": oracle_series_1d, "matrix": broken})
        assert err.value.power == 2
        assert err.value.order == 4
        assert "entry 1" in err.value.diff

    def test_gate_passes_for_agreeing_algorithms(self):
        calls = []

        def fake(power, order):
            calls.append(order)
            return oracle_series_1d(power, order)

        cfg = BenchConfig(
            algorithms=("oracle",), powers=(2,), orders=(3,),
            repetitions=1, warmup=0,
        )
        report = run_bench(cfg, algorithms={"oracle": fake})
        assert len(report.rows) == 1
        assert report.rows[0].status == "ok"


class TestRowContract:
    def test_row_count_and_order(self):
        cfg = BenchConfig(
            algorithms=("matrix", "duan3"), powers=(3,), orders=(10,),
            repetitions=3, warmup=1,
        )
        report = run_bench(cfg)
        assert len(report.rows) == 6
        assert [r.algorithm for r in report.rows] == ["matrix"] * 3 + ["duan3"] * 3
        assert [r.repetition for r in report.rows] == [1, 2, 3, 1, 2, 3]
        assert all(r.status == "ok" and r.seconds >= 0 for r in report.rows)

    def test_forced_timeout_marks_every_row(self):
        cfg = BenchConfig(
            algorithms=("matrix",), powers=(2,), orders=(5,),
            repetitions=2, warmup=0, timeout=1e-6,
        )
        report = run_bench(cfg)
        assert len(report.rows) == 2
        assert all(r.status == "timeout" and r.seconds is None for r in report.rows)
        assert report.all_timed_out

    def test_larger_orders_skipped_after_timeout(self):
        ran = []

        def sleepy(power, order):
            ran.append(order)
            time.sleep(order / 100)
            return oracle_series_1d(power, min(order, 3))

        cfg = BenchConfig(
            algorithms=("oracle",), powers=(2,), orders=(2, 8, 9),
            repetitions=1, warmup=0, timeout=0.05,
        )
        report = run_bench(cfg, algorithms={"oracle": sleepy})
        statuses = [(r.order, r.status) for r in report.rows]
        assert statuses == [(2, "ok"), (8, "timeout"), (9, "timeout")]
        # order 9 was skipped outright, never executed
        assert 9 not in ran[1:]  # ran[0] is the correctness gate at order 2

    def test_matrix_median_nondecreasing_in_order(self):
        # qualitative sanity on well-separated orders
        cfg = BenchConfig(
            algorithms=("matrix",), powers=(3,), orders=(10, 60, 120),
            repetitions=3, warmup=1,
        )
        report = run_bench(cfg)
        med = report.medians()
        times = [med[("matrix", 3, order)] for order in (10, 60, 120)]
        assert times == sorted(times), times

    def test_medians(self):
        report = BenchReport(rows=[
            BenchRow("matrix", 3, 10, 1, 0.4, "ok"),
            BenchRow("matrix", 3, 10, 2, 0.1, "ok"),
            BenchRow("matrix", 3, 10, 3, 0.2, "ok"),
            BenchRow("duan1", 3, 10, 1, None, "timeout"),
        ])
        med = report.medians()
        assert med[("matrix", 3, 10)] == 0.2
        assert med[("duan1", 3, 10)] is None


class TestWriteReport:
    def _report(self):
        return BenchReport(rows=[
            BenchRow("matrix", 3, 10, 1, 0.00047, "ok"),
            BenchRow("duan1", 3, 100, 1, None, "timeout"),
        ])

    def test_csv_contract(self, tmp_path):
        path = tmp_path / "r.csv"
        write_report(self._report(), "csv", path)
        lines = path.read_text().splitlines()
        assert lines[0] == "algorithm,power,order,repetition,seconds,status"
        assert lines[1] == "matrix,3,10,1,0.000470,ok"
        assert lines[2] == "duan1,3,100,1,,timeout"

    def test_csv_empty_report(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_report(BenchReport(), "csv", path)
        assert path.read_text() == "algorithm,power,order,repetition,seconds,status\n"

    def test_json_mirrors_rows(self, tmp_path):
        path = tmp_path / "r.json"
        write_report(self._report(), "json", path)
        rows = json.loads(path.read_text())
        assert rows == [
            {"algorithm": "matrix", "power": 3, "order": 10, "repetition": 1,
             "seconds": 0.00047, "status": "ok"},
            {"algorithm": "duan1", "power": 3, "order": 100, "repetition": 1,
             "seconds": None, "status": "timeout"},
        ]

    def test_unknown_format(self, tmp_path):
        with pytest.raises(ValueError):
            write_report(self._report(), "xml", tmp_path / "r.xml")
