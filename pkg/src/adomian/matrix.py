"""Adomian polynomial generation by iterated truncated convolution.

One convolution pass computes, entry by entry, the truncated Cauchy product
of a component series with an accumulator grid::

    out_k  = sum_{i<=k} components_i * acc_{k-i}                     (1-D)
    out_kl = sum_{i<=k} sum_{j<=l} components_ij * acc_{k-i, l-j}    (2-D)

which is exactly the flip / elementwise-multiply / total pipeline of the
matrix formulation, realized as reversed-index traversal instead of
materialized flipped submatrices. Folding a component series into itself
power-1 times yields the Adomian polynomials of u^power: entry k (or k,l)
of the result is A_k (A_kl). Products of several distinct series and sums
raised to a power reduce to the same pass.

The passes are generic in the entry ring: entries only need ``+`` and ``*``,
so the same code folds symbolic polynomials or univariate x-polynomials
(the ADM solver does the latter). For the pure-power generators a packed
numba fast path (see ``_fast``) produces identical results orders of
magnitude faster and returns grid entries as ``PackedPolynomial`` values,
which compare, format and evaluate like ordinary ``Polynomial`` objects.

Total operation tally: relative to the flip-based formulation, one pass
touches each of the (m+1)(n+1) grid cells once; the classical operation
count for a full matrix build, 4(m+1)(n+1)-(m+n+2) flip/multiply/sum matrix
operations, is not observable here because flips are never materialized.
Pass an optional ``CellCounter`` to record cells-per-pass instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from numbers import Rational
from typing import Iterator, Sequence

from .poly import ComponentVar, Monomial, Polynomial, SeriesGrid, format_polynomial

try:
    import numpy as _np

    from . import _fast
except ImportError:  # pragma: no cover - numba/numpy missing
    _np = None
    _fast = None

__all__ = [
    "CellCounter",
    "ExpansionLimitError",
    "PackedPolynomial",
    "adomian_power_1d",
    "adomian_power_2d",
    "adomian_product",
    "adomian_sum_power",
    "components_1d",
    "components_2d",
    "truncated_product_1d",
    "truncated_product_2d",
]


class ExpansionLimitError(ValueError):
    """Multinomial expansion would exceed the configured term limit."""

    def __init__(self, required: int, limit: int):
        self.required = required
        self.limit = limit
        super().__init__(
            f"expansion needs {required} product terms, limit is {limit}"
        )


@dataclass
class CellCounter:
    """Optional instrumentation: convolution cells computed per pass."""

    cells: int = 0
    passes: int = 0

    def add_pass(self, cells: int) -> None:
        self.passes += 1
        self.cells += cells


def components_1d(count: int, family: str = "u") -> SeriesGrid:
    """Grid of the symbolic components [u_0 .. u_{count-1}]."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return SeriesGrid.one_dim(
        Polynomial.variable(ComponentVar(family, (k,))) for k in range(count)
    )


def components_2d(rows: int, cols: int, family: str = "u") -> SeriesGrid:
    """Grid of the symbolic components u_{ij} on a rows x cols grid."""
    if rows < 1 or cols < 1:
        raise ValueError(f"extents must be >= 1, got {rows}x{cols}")
    return SeriesGrid.two_dim(
        (Polynomial.variable(ComponentVar(family, (i, j))) for j in range(cols))
        for i in range(rows)
    )


def _check_same_shape(a: SeriesGrid, b: SeriesGrid, dim: int) -> None:
    if a.dim != dim or b.dim != dim:
        raise ValueError(f"expected {dim}-D grids, got {a.dim}-D and {b.dim}-D")
    if a.shape != b.shape:
        raise ValueError(f"grid extents differ: {a.shape} vs {b.shape}")


def truncated_product_1d(
    components: SeriesGrid, acc: SeriesGrid, *, counter: CellCounter | None = None
) -> SeriesGrid:
    """One 1-D convolution pass: out_k = sum_{i<=k} components_i * acc_{k-i}."""
    _check_same_shape(components, acc, 1)
    n = components.shape[0]
    out = []
    for k in range(n):
        total = components[0] * acc[k]
        for i in range(1, k + 1):
            total = total + components[i] * acc[k - i]
        out.append(total)
    if counter is not None:
        counter.add_pass(n)
    return SeriesGrid.one_dim(out)


def truncated_product_2d(
    components: SeriesGrid, acc: SeriesGrid, *, counter: CellCounter | None = None
) -> SeriesGrid:
    """One 2-D convolution pass over every (k,l) cell of equal-extent grids."""
    _check_same_shape(components, acc, 2)
    rows, cols = components.shape
    out = []
    for k in range(rows):
        for l in range(cols):
            total = None
            for i in range(k + 1):
                for j in range(l + 1):
                    term = components[i, j] * acc[k - i, l - j]
                    total = term if total is None else total + term
            out.append(total)
    if counter is not None:
        counter.add_pass(rows * cols)
    return SeriesGrid((rows, cols), tuple(out))


class PackedPolynomial:
    """Read-oriented polynomial backed by packed key/coefficient arrays.

    Produced by the fast pure-power generators, where grids can reach tens
    of millions of monomials: each monomial is one uint64 key plus an int64
    coefficient (see ``_fast`` for the encoding). Values are immutable,
    iterate in canonical key order, and interoperate with ``Polynomial``
    for equality, formatting and evaluation. Convert explicitly with
    ``to_polynomial()`` for full ring arithmetic; that is only sensible for
    moderately sized entries.
    """

    __slots__ = ("family", "width", "nfields", "cell", "cols", "keys", "coeffs")

    def __init__(self, family, width, nfields, cell, cols, keys, coeffs):
        self.family = family
        self.width = width
        self.nfields = nfields
        self.cell = cell  # (k,) or (k, l): the index sums of every monomial
        self.cols = cols  # flat-part divisor for 2-D keys, None in 1-D
        keys.flags.writeable = False
        coeffs.flags.writeable = False
        self.keys = keys
        self.coeffs = coeffs

    def __len__(self) -> int:
        return len(self.keys)

    @property
    def is_zero(self) -> bool:
        return len(self.keys) == 0

    @property
    def degree(self) -> int:
        return self.nfields + 1 if len(self.keys) else -1

    def _parts(self, key: int) -> list[int]:
        parts = _fast.decode_key(int(key), self.width, self.nfields)
        if self.cols is None:
            parts.append(self.cell[0] - sum(parts))
        else:
            k, l = self.cell
            big_a = k - sum(p // self.cols for p in parts)
            big_b = l - sum(p % self.cols for p in parts)
            parts.append(big_a * self.cols + big_b)
        return parts

    def _monomial(self, key: int) -> Monomial:
        parts = sorted(self._parts(key))
        if self.cols is None:
            pairs = [(ComponentVar(self.family, (p,)), len(tuple(g)))
                     for p, g in itertools.groupby(parts)]
        else:
            pairs = [
                (ComponentVar(self.family, (p // self.cols, p % self.cols)), len(tuple(g)))
                for p, g in itertools.groupby(parts)
            ]
        return Monomial(tuple(pairs))

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        """(monomial, coefficient) pairs; coefficients are positive ints."""
        for key, coeff in zip(self.keys.tolist(), self.coeffs.tolist()):
            yield self._monomial(key), coeff

    def to_polynomial(self) -> Polynomial:
        return Polynomial(dict(self.terms()))

    def evaluate(self, assignment) -> Rational:
        return self.to_polynomial().evaluate(assignment)

    def __eq__(self, other) -> bool:
        if isinstance(other, PackedPolynomial):
            if (
                self.family == other.family
                and self.width == other.width
                and self.nfields == other.nfields
                and self.cell == other.cell
                and self.cols == other.cols
            ):
                return _np.array_equal(self.keys, other.keys) and _np.array_equal(
                    self.coeffs, other.coeffs
                )
            return self.to_polynomial() == other.to_polynomial()
        if isinstance(other, (Polynomial, Rational)):
            return self.to_polynomial() == other
        return NotImplemented

    __hash__ = None

    def __str__(self) -> str:
        return format_polynomial(self.to_polynomial())

    def __repr__(self) -> str:
        return f"<PackedPolynomial cell={self.cell} terms={len(self)}>"


def _fast_available() -> bool:
    return _fast is not None


def _packed_grid_1d(power: int, order: int, family: str) -> SeriesGrid:
    keys, coeffs, offs, width = _fast.power_cells_1d(power, order)
    entries = []
    for k in range(order):
        a, b = int(offs[k]), int(offs[k + 1])
        entries.append(
            PackedPolynomial(family, width, power - 1, (k,), None,
                             keys[a:b], coeffs[a:b])
        )
    return SeriesGrid.one_dim(entries)


def _packed_grid_2d(power: int, rows: int, cols: int, family: str) -> SeriesGrid:
    keys, coeffs, offs, width = _fast.power_cells_2d(power, rows, cols)
    entries = []
    for c in range(rows * cols):
        a, b = int(offs[c]), int(offs[c + 1])
        entries.append(
            PackedPolynomial(family, width, power - 1, divmod(c, cols), cols,
                             keys[a:b], coeffs[a:b])
        )
    return SeriesGrid((rows, cols), tuple(entries))


def _validate_power(power: int) -> None:
    if not isinstance(power, int) or power < 1:
        raise ValueError(f"power must be a positive integer, got {power}")


def adomian_power_1d(
    power: int, order: int, *, family: str = "u", counter: CellCounter | None = None
) -> SeriesGrid:
    """Adomian polynomials A_0..A_{order-1} of u^power.

    Entry k of the returned grid is A_k. Every monomial of entry k has
    total degree power and index sum k. power 1 is the linear case A_k = u_k.
    """
    _validate_power(power)
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if power == 1:
        return components_1d(order, family)
    if _fast_available() and _fast.can_pack(power, _fast.packed_width_1d(order)):
        grid = _packed_grid_1d(power, order, family)
        if counter is not None:
            for _ in range(power - 1):
                counter.add_pass(order)
        return grid
    comps = components_1d(order, family)
    acc = comps
    for _ in range(power - 1):
        acc = truncated_product_1d(comps, acc, counter=counter)
    return acc


def adomian_power_2d(
    power: int,
    rows: int,
    cols: int,
    *,
    family: str = "u",
    counter: CellCounter | None = None,
) -> SeriesGrid:
    """Adomian matrix for u^power on a rows x cols component grid.

    Entry (k,l) is A_kl; first indices of every monomial sum to k and second
    indices to l.
    """
    _validate_power(power)
    if rows < 1 or cols < 1:
        raise ValueError(f"extents must be >= 1, got {rows}x{cols}")
    if power == 1:
        return components_2d(rows, cols, family)
    if _fast_available() and _fast.can_pack(power, _fast.packed_width_2d(rows, cols)):
        grid = _packed_grid_2d(power, rows, cols, family)
        if counter is not None:
            for _ in range(power - 1):
                counter.add_pass(rows * cols)
        return grid
    comps = components_2d(rows, cols, family)
    acc = comps
    for _ in range(power - 1):
        acc = truncated_product_2d(comps, acc, counter=counter)
    return acc


def adomian_product(
    factors: Sequence[SeriesGrid], *, counter: CellCounter | None = None
) -> SeriesGrid:
    """Adomian grid of a product of series, e.g. F = u*v or u*v*w.

    Right fold: the last two factor grids are convolved first, then each
    earlier factor in turn. A single factor is returned unchanged.
    """
    factors = list(factors)
    if not factors:
        raise ValueError("need at least one factor grid")
    first = factors[0]
    for other in factors[1:]:
        _check_same_shape(first, other, first.dim)
    acc = factors[-1]
    step = truncated_product_1d if first.dim == 1 else truncated_product_2d
    for grid in reversed(factors[:-1]):
        acc = step(grid, acc, counter=counter)
    return acc


def _grid_scale(grid: SeriesGrid, scalar: int) -> SeriesGrid:
    return grid.map(lambda entry: entry * scalar)


def _grid_add(a: SeriesGrid, b: SeriesGrid) -> SeriesGrid:
    return SeriesGrid(a.shape, tuple(x + y for x, y in zip(a.entries, b.entries)))


def adomian_sum_power(
    terms: Sequence[SeriesGrid],
    power: int,
    *,
    expansion_limit: int = 10_000,
    counter: CellCounter | None = None,
) -> SeriesGrid:
    """Adomian grid of (t_1 + ... + t_P)^power.

    Expands multinomially into products of the term grids, computes the
    Adomian grid of each product, and adds the grids entrywise. The number
    of expansion terms C(power+P-1, power) must not exceed expansion_limit.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("need at least one term grid")
    _validate_power(power)
    for other in terms[1:]:
        _check_same_shape(terms[0], other, terms[0].dim)
    required = comb(power + len(terms) - 1, power)
    if required > expansion_limit:
        raise ExpansionLimitError(required, expansion_limit)
    total: SeriesGrid | None = None
    for exponents in _weak_compositions(power, len(terms)):
        coeff = factorial(power)
        for e in exponents:
            coeff //= factorial(e)
        multiset = [
            grid for grid, e in zip(terms, exponents) for _ in range(e)
        ]
        part = _grid_scale(adomian_product(multiset, counter=counter), coeff)
        total = part if total is None else _grid_add(total, part)
    return total


def _weak_compositions(total: int, parts: int):
    """Ordered tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _weak_compositions(total - head, parts - 1):
            yield (head,) + rest
