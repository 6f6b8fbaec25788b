"""Timing harness comparing the Adomian polynomial generators.

Runs each selected algorithm over a grid of powers and orders, recording
wall-clock seconds per repetition. Before anything is timed, all selected
algorithms must produce identical polynomials at the smallest configured
power/order pair; a mismatch aborts with a diff.

Timed runs execute in a dedicated worker process per (algorithm, power):
a run that exceeds the timeout gets its worker killed, the row is marked
``timeout``, and larger orders for that algorithm/power are skipped (also
marked ``timeout``). Workers use the "spawn" start method because forking a
process that has already run parallel jit kernels is not safe. Timing is
measured inside the worker, so process startup never pollutes measurements.

Timings are reported raw per repetition plus a median summary. Absolute
numbers are representation-dependent: this package always expands to
canonical form, so do not expect figures comparable to systems that keep
products unexpanded; the stable observation is the ordering, with the
convolution-based generator far ahead of the recurrence algorithms.
"""

from __future__ import annotations

import json
import multiprocessing
import statistics
import time
from dataclasses import dataclass, field

from .matrix import adomian_power_1d
from .reference import duan_corollary1, duan_corollary3, oracle_series_1d

__all__ = [
    "ALGORITHM_NAMES",
    "AlgorithmMismatchError",
    "BenchConfig",
    "BenchReport",
    "BenchRow",
    "run_bench",
    "write_report",
]


def _matrix_series(power: int, order: int) -> list:
    return list(adomian_power_1d(power, order))


_REGISTRY = {
    "matrix": _matrix_series,
    "duan1": duan_corollary1,
    "duan3": duan_corollary3,
    "oracle": oracle_series_1d,
}

ALGORITHM_NAMES = tuple(_REGISTRY)


class AlgorithmMismatchError(RuntimeError):
    """Selected algorithms disagreed on the correctness spot-check."""

    def __init__(self, power: int, order: int, diff: str):
        self.power = power
        self.order = order
        self.diff = diff
        super().__init__(
            f"algorithms disagree at power={power}, order={order}: {diff}"
        )


@dataclass(frozen=True)
class BenchConfig:
    algorithms: tuple[str, ...]
    powers: tuple[int, ...]
    orders: tuple[int, ...]
    repetitions: int = 3
    timeout: float = 600.0
    warmup: int = 1

    def __post_init__(self):
        if not self.algorithms or not self.powers or not self.orders:
            raise ValueError("algorithms, powers and orders must be non-empty")
        unknown = [a for a in self.algorithms if a not in _REGISTRY]
        if unknown:
            raise ValueError(
                f"unknown algorithm name(s) {unknown}; valid names: {list(ALGORITHM_NAMES)}"
            )
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.warmup < 0:
            raise ValueError("warmup must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass(frozen=True)
class BenchRow:
    algorithm: str
    power: int
    order: int
    repetition: int
    seconds: float | None  # None when status is "timeout"
    status: str  # "ok" | "timeout"


@dataclass
class BenchReport:
    rows: list[BenchRow] = field(default_factory=list)

    def medians(self) -> dict[tuple[str, int, int], float | None]:
        """Median ok-seconds per (algorithm, power, order); None if none ok."""
        cells: dict[tuple[str, int, int], list[float]] = {}
        for row in self.rows:
            cells.setdefault((row.algorithm, row.power, row.order), [])
            if row.status == "ok":
                cells[(row.algorithm, row.power, row.order)].append(row.seconds)
        return {
            key: (statistics.median(vals) if vals else None)
            for key, vals in cells.items()
        }

    @property
    def all_timed_out(self) -> bool:
        return bool(self.rows) and all(r.status == "timeout" for r in self.rows)


def _bench_worker(conn, algo_name: str, power: int) -> None:
    """Run generation requests until told to stop; reports seconds per run."""
    fn = _REGISTRY[algo_name]
    while True:
        order = conn.recv()
        if order is None:
            conn.close()
            return
        try:
            t0 = time.perf_counter()
            fn(power, order)
            conn.send(("ok", time.perf_counter() - t0))
        except Exception as exc:  # pragma: no cover - defensive
            conn.send(("error", repr(exc)))
            conn.close()
            return


class _Worker:
    """One spawn-started generation worker with a per-run timeout."""

    def __init__(self, algo: str, power: int):
        ctx = multiprocessing.get_context("spawn")
        self.conn, child = ctx.Pipe()
        self.proc = ctx.Process(
            target=_bench_worker, args=(child, algo, power), daemon=True
        )
        self.proc.start()
        child.close()

    def run(self, order: int, timeout: float) -> float | None:
        """Seconds for one generation, or None on timeout (worker killed)."""
        self.conn.send(order)
        if self.conn.poll(timeout):
            status, value = self.conn.recv()
            if status == "ok":
                return value
            raise RuntimeError(f"benchmark worker failed: {value}")
        self.kill()
        return None

    def kill(self) -> None:
        if self.proc.is_alive():
            self.proc.kill()
        self.proc.join()

    def close(self) -> None:
        if self.proc.is_alive():
            try:
                self.conn.send(None)
            except (BrokenPipeError, OSError):
                pass
            self.proc.join(timeout=5)
            if self.proc.is_alive():
                self.proc.kill()
                self.proc.join()


def _equality_gate(cfg: BenchConfig, algorithms: dict) -> None:
    power = min(cfg.powers)
    order = min(cfg.orders)
    results = {name: algorithms[name](power, order) for name in cfg.algorithms}
    names = list(results)
    baseline_name = names[0]
    baseline = results[baseline_name]
    for name in names[1:]:
        candidate = results[name]
        for k, (want, got) in enumerate(zip(baseline, candidate)):
            if want != got:
                diff = (
                    f"entry {k}: {baseline_name} gives {_clip(want)} "
                    f"but {name} gives {_clip(got)}"
                )
                raise AlgorithmMismatchError(power, order, diff)


def _clip(poly, limit: int = 200) -> str:
    text = str(poly)
    return text if len(text) <= limit else text[: limit - 3] + "..."


def run_bench(cfg: BenchConfig, algorithms: dict | None = None) -> BenchReport:
    """Execute the benchmark; rows in configuration order.

    ``algorithms`` substitutes the callables (testing hook). Substituted
    callables run in-process with a soft timeout; the standard registry
    runs in killable worker processes.
    """
    custom = algorithms is not None
    table = dict(_REGISTRY) if not custom else dict(algorithms)
    _equality_gate(cfg, table)
    report = BenchReport()
    for algo in cfg.algorithms:
        for power in cfg.powers:
            dead_beyond: int | None = None
            worker: _Worker | None = None
            try:
                for order in cfg.orders:
                    if dead_beyond is not None and order > dead_beyond:
                        for rep in range(1, cfg.repetitions + 1):
                            report.rows.append(
                                BenchRow(algo, power, order, rep, None, "timeout")
                            )
                        continue
                    if worker is None and not custom:
                        worker = _Worker(algo, power)
                    timings: list[float | None] = []
                    for _ in range(cfg.warmup + cfg.repetitions):
                        if custom:
                            t0 = time.perf_counter()
                            table[algo](power, order)
                            dt = time.perf_counter() - t0
                            seconds = dt if dt <= cfg.timeout else None
                        else:
                            seconds = worker.run(order, cfg.timeout)
                        timings.append(seconds)
                        if seconds is None:
                            break
                    reps = timings[cfg.warmup :]
                    timed_out = any(t is None for t in timings)
                    for rep in range(1, cfg.repetitions + 1):
                        if timed_out:
                            report.rows.append(
                                BenchRow(algo, power, order, rep, None, "timeout")
                            )
                        else:
                            report.rows.append(
                                BenchRow(algo, power, order, rep, reps[rep - 1], "ok")
                            )
                    if timed_out:
                        dead_beyond = order
                        if worker is not None:
                            worker = None  # killed by run(); force respawn if needed
            finally:
                if worker is not None:
                    worker.close()
    return report


def write_report(report: BenchReport, fmt: str, path) -> None:
    """Write rows as CSV or JSON with a fixed column order."""
    if fmt == "csv":
        lines = ["algorithm,power,order,repetition,seconds,status"]
        for r in report.rows:
            seconds = f"{r.seconds:.6f}" if r.seconds is not None else ""
            lines.append(
                f"{r.algorithm},{r.power},{r.order},{r.repetition},{seconds},{r.status}"
            )
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        rows = [
            {
                "algorithm": r.algorithm,
                "power": r.power,
                "order": r.order,
                "repetition": r.repetition,
                "seconds": r.seconds,
                "status": r.status,
            }
            for r in report.rows
        ]
        text = json.dumps(rows, indent=2) + "\n"
    else:
        raise ValueError(f"unknown report format {fmt!r}; use 'csv' or 'json'")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
