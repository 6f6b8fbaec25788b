"""Independent Adomian-polynomial generators used for cross-validation.

Three routes to the same polynomials for the pure power nonlinearity u^N:

* ``oracle_1d`` / ``oracle_2d`` -- definitional brute force: enumerate every
  ordered N-tuple of component indices whose (componentwise) sum hits the
  target and accumulate the products. Slow but self-evidently correct; this
  is the trust anchor the fast generators are checked against.
* ``duan_corollary1`` -- Duan's index recurrence: reduced polynomials built
  by multiplying with u_1, dividing each monomial by its u_1-exponent, and
  adding subscript-shifted copies of earlier rows.
* ``duan_corollary3`` -- Duan's one-step recurrence with an explicit 1/i
  factor in the intermediates.

Both Duan variants finish with the factorial shortcut for d^j(u^N)/du^j,
i.e. the falling factorial N!/(N-j)! times u_0^(N-j), instead of symbolic
differentiation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import perm

from .poly import ComponentVar, Monomial, Polynomial

__all__ = [
    "compositions",
    "duan_corollary1",
    "duan_corollary1_table",
    "duan_corollary3",
    "duan_corollary3_table",
    "oracle_1d",
    "oracle_2d",
    "oracle_series_1d",
]


def _uvar(index: int, family: str = "u") -> ComponentVar:
    return ComponentVar(family, (index,))


def compositions(total: int, parts: int):
    """Yield every ordered tuple of `parts` nonnegative ints summing to `total`.

    Enumerated via bar positions so the hot loop stays in itertools.
    """
    if parts < 1:
        raise ValueError("parts must be >= 1")
    if parts == 1:
        yield (total,)
        return
    slots = total + parts - 1
    for bars in itertools.combinations(range(slots), parts - 1):
        out = []
        prev = -1
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(slots - 1 - prev)
        yield tuple(out)


def _poly_from_index_counts(counts: dict, family: str = "u") -> Polynomial:
    """Build a polynomial from {sorted index tuple: multiplicity} counts."""
    terms = {}
    for key, count in counts.items():
        factors = tuple(
            (_uvar(idx, family), len(tuple(grp)))
            for idx, grp in itertools.groupby(key)
        )
        terms[Monomial(factors)] = count
    return Polynomial(terms)


def oracle_1d(power: int, target: int, family: str = "u") -> Polynomial:
    """A_target for u^power by ordered-tuple enumeration.

    Equals the coefficient of lambda^target in (sum_k u_k lambda^k)^power.
    """
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    if target < 0:
        raise ValueError(f"target must be >= 0, got {target}")
    counts: dict[tuple[int, ...], int] = {}
    if power == 1:
        counts[(target,)] = 1
    else:
        slots = target + power - 1
        for bars in itertools.combinations(range(slots), power - 1):
            parts = []
            prev = -1
            for b in bars:
                parts.append(b - prev - 1)
                prev = b
            parts.append(slots - 1 - prev)
            parts.sort()
            key = tuple(parts)
            if key in counts:
                counts[key] += 1
            else:
                counts[key] = 1
    return _poly_from_index_counts(counts, family)


def oracle_series_1d(power: int, count: int, family: str = "u") -> list[Polynomial]:
    """[A_0 .. A_{count-1}] for u^power via the brute-force oracle."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return [oracle_1d(power, m, family) for m in range(count)]


def oracle_2d(power: int, target: tuple[int, int], family: str = "u") -> Polynomial:
    """A_target for u^power with double-index components u_{ij}.

    Enumerates ordered power-tuples of index pairs summing componentwise to
    the target; pairs of row/column compositions enumerate exactly those.
    """
    if power < 1:
        raise ValueError(f"power must be >= 1, got {power}")
    k, l = target
    if k < 0 or l < 0:
        raise ValueError(f"target must be componentwise >= 0, got {target}")
    counts: dict[tuple[tuple[int, int], ...], int] = {}
    rowsplits = list(compositions(k, power))
    colsplits = list(compositions(l, power))
    for rows in rowsplits:
        for cols in colsplits:
            key = tuple(sorted(zip(rows, cols)))
            if key in counts:
                counts[key] += 1
            else:
                counts[key] = 1
    terms = {}
    for key, count in counts.items():
        factors = tuple(
            (ComponentVar(family, pair), len(tuple(grp)))
            for pair, grp in itertools.groupby(key)
        )
        terms[Monomial(factors)] = count
    return Polynomial(terms)


def duan_corollary1_table(count: int) -> dict[tuple[int, int], Polynomial]:
    """Reduced polynomials Z[i,j] for 1 <= j <= i <= count-1.

    Z[i,1] = u_i. For j >= 2: Z[i,j] is u_1 * Z[i-1,j-1] with every monomial
    divided by its u_1-exponent, plus, for j <= floor(i/2), Z[i-j,j] with all
    subscripts shifted up by one.
    """
    u1 = _uvar(1)
    u1_mono = Monomial.variable(u1)
    table: dict[tuple[int, int], Polynomial] = {}
    for i in range(1, count):
        table[(i, 1)] = Polynomial.variable(_uvar(i))
    for i in range(2, count):
        for j in range(2, i + 1):
            divided = {}
            for mono, coeff in table[(i - 1, j - 1)].items():
                lifted = mono * u1_mono
                divided[lifted] = Fraction(coeff, lifted.exponent_of(u1))
            table[(i, j)] = Polynomial(divided)
        for j in range(2, i // 2 + 1):
            shifted = table[(i - j, j)].map_vars(
                lambda var: _uvar(var.indices[0] + 1)
            )
            table[(i, j)] = table[(i, j)] + shifted
    return table


def _assemble(power: int, count: int, table, row_of) -> list[Polynomial]:
    """A_0..A_{count-1} from reduced polynomials via the factorial shortcut."""
    u0 = _uvar(0)
    u0_pow = [Monomial.of((_uvar(0), e)) for e in range(power + 1)]
    out = [Polynomial.variable(u0) ** power]
    for i in range(1, count):
        def pieces(i=i):
            for j in range(1, min(i, power) + 1):
                ff = perm(power, j)  # N!/(N-j)!; the factorial shortcut
                lead = u0_pow[power - j]
                for mono, coeff in row_of(table, i, j).items():
                    yield mono * lead, coeff * ff
        out.append(Polynomial.from_terms(pieces()))
    return out


def duan_corollary1(power: int, count: int) -> list[Polynomial]:
    """[A_0 .. A_{count-1}] for u^power via Duan's index recurrence."""
    if power < 1 or count < 1:
        raise ValueError("power and count must be >= 1")
    table = duan_corollary1_table(count)
    return _assemble(power, count, table, lambda t, i, j: t[(i, j)])


def duan_corollary3_table(count: int) -> dict[tuple[int, int], Polynomial]:
    """Reduced polynomials C[i,k] for 1 <= k <= i <= count-1.

    C[i,1] = u_i and
    C[i,k] = (1/i) * sum_{j=0..i-k} (j+1) u_{j+1} C[i-1-j, k-1].
    The 1/i factor makes the intermediates genuinely fractional even though
    every assembled A_i has integer coefficients.
    """
    table: dict[tuple[int, int], Polynomial] = {}
    for i in range(1, count):
        table[(i, 1)] = Polynomial.variable(_uvar(i))
        for k in range(2, i + 1):
            acc: dict[Monomial, Fraction] = {}
            for j in range(0, i - k + 1):
                mono_j = Monomial.variable(_uvar(j + 1))
                weight = j + 1
                for mono, coeff in table[(i - 1 - j, k - 1)].items():
                    lifted = mono * mono_j
                    prev = acc.get(lifted)
                    term = coeff * weight
                    acc[lifted] = term if prev is None else prev + term
            inv_i = Fraction(1, i)  # applied once per cell, not per item
            table[(i, k)] = Polynomial(
                {mono: coeff * inv_i for mono, coeff in acc.items()}
            )
    return table


def duan_corollary3(power: int, count: int) -> list[Polynomial]:
    """[A_0 .. A_{count-1}] for u^power via Duan's one-step recurrence."""
    if power < 1 or count < 1:
        raise ValueError("power and count must be >= 1")
    table = duan_corollary3_table(count)
    return _assemble(power, count, table, lambda t, i, k: t[(i, k)])
