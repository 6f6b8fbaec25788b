"""Shared independent helpers for the test suite.

These deliberately avoid the package's own algorithms so they can serve as
cross-checks: a partition counter via the classic two-way recurrence and a
multinomial coefficient from factorials.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from adomian import ComponentVar, UniPoly


@lru_cache(maxsize=None)
def partitions_at_most(total: int, parts: int) -> int:
    """Number of partitions of `total` into at most `parts` parts."""
    if total == 0:
        return 1
    if parts == 0:
        return 0
    if total < 0:
        return 0
    return partitions_at_most(total, parts - 1) + partitions_at_most(total - parts, parts)


def multinomial(total: int, *groups: int) -> int:
    """total! / (g1! * g2! * ... * rest!) with rest = total - sum(groups)."""
    rest = total - sum(groups)
    assert rest >= 0
    out = factorial(total)
    for g in groups:
        out //= factorial(g)
    return out // factorial(rest)


def u(i: int) -> ComponentVar:
    return ComponentVar("u", (i,))


def u2(i: int, j: int) -> ComponentVar:
    return ComponentVar("u", (i, j))


def substitute_unipoly(poly, values: dict) -> UniPoly:
    """Evaluate a symbolic polynomial with UniPoly values for each variable."""
    total = UniPoly.zero()
    for mono, coeff in poly.terms():
        term = UniPoly.constant(Fraction(coeff))
        for var, exp in mono.factors:
            term = term * values[var] ** exp
        total = total + term
    return total
