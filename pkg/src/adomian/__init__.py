"""Exact Adomian polynomial generation, validation, solving and benchmarking.

The package centers on the convolution ("Adomian matrix") generators
``adomian_power_1d`` / ``adomian_power_2d`` and their generalizations to
products of series and sums raised to a power, built on an exact sparse
polynomial core. Independent reference algorithms (a definitional
brute-force oracle and Duan's two recurrences) cross-validate the results,
a demonstration solver applies them to first-order nonlinear IVPs, and a
benchmark harness compares generator speeds.
"""

from .bench import (
    ALGORITHM_NAMES,
    AlgorithmMismatchError,
    BenchConfig,
    BenchReport,
    BenchRow,
    run_bench,
    write_report,
)
from .matrix import (
    CellCounter,
    ExpansionLimitError,
    PackedPolynomial,
    adomian_power_1d,
    adomian_power_2d,
    adomian_product,
    adomian_sum_power,
    components_1d,
    components_2d,
    truncated_product_1d,
    truncated_product_2d,
)
from .poly import (
    ComponentVar,
    MissingAssignmentError,
    Monomial,
    ParseError,
    Polynomial,
    SeriesGrid,
    format_polynomial,
    parse_polynomial,
)
from .reference import (
    duan_corollary1,
    duan_corollary1_table,
    duan_corollary3,
    duan_corollary3_table,
    oracle_1d,
    oracle_2d,
    oracle_series_1d,
)
from .solver import (
    IVProblem,
    SeriesSolution,
    UniPoly,
    parse_unipoly,
    partial_sum,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "AlgorithmMismatchError",
    "BenchConfig",
    "BenchReport",
    "BenchRow",
    "CellCounter",
    "ComponentVar",
    "ExpansionLimitError",
    "IVProblem",
    "MissingAssignmentError",
    "Monomial",
    "PackedPolynomial",
    "ParseError",
    "Polynomial",
    "SeriesGrid",
    "SeriesSolution",
    "UniPoly",
    "__version__",
    "adomian_power_1d",
    "adomian_power_2d",
    "adomian_product",
    "adomian_sum_power",
    "components_1d",
    "components_2d",
    "duan_corollary1",
    "duan_corollary1_table",
    "duan_corollary3",
    "duan_corollary3_table",
    "format_polynomial",
    "oracle_1d",
    "oracle_2d",
    "oracle_series_1d",
    "parse_polynomial",
    "parse_unipoly",
    "partial_sum",
    "run_bench",
    "solve",
    "truncated_product_1d",
    "truncated_product_2d",
    "write_report",
]
