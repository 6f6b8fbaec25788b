"""Series solver for first-order IVPs u' = a*u + c*u^N + g(x), u(0) = u0.

The decomposition scheme assigns the initial condition and the integrated
forcing to the zeroth component and feeds each Adomian polynomial of the
nonlinearity back through the integral operator::

    u_0(x)     = u0 + integral_0^x g(t) dt
    u_{k+1}(x) = integral_0^x [ a*u_k(t) + c*A_k(t) ] dt

where A_k is the k-th Adomian polynomial of u^N evaluated directly over the
univariate components: the convolution passes of ``matrix`` are generic in
the entry ring, so they fold ``UniPoly`` values just as well as symbolic
ones. Everything is exact rational arithmetic; the truncated sum of a
problem with a polynomial solution reproduces its Taylor coefficients
exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable

from .matrix import truncated_product_1d
from .poly import ParseError, SeriesGrid

__all__ = [
    "IVProblem",
    "SeriesSolution",
    "UniPoly",
    "parse_unipoly",
    "partial_sum",
    "solve",
]


class UniPoly:
    """Univariate polynomial in x with exact rational coefficients.

    Immutable; coefficients are stored densely from x^0 upward with no
    trailing zeros (the zero polynomial stores nothing).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        items = list(coeffs)
        while items and items[-1] == 0:
            items.pop()
        for c in items:
            if not isinstance(c, Rational):
                raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")
        self.coeffs = tuple(items)

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly()

    @staticmethod
    def constant(value) -> "UniPoly":
        return UniPoly((value,))

    @staticmethod
    def x() -> "UniPoly":
        return UniPoly((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, power: int) -> Rational:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    def __add__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "UniPoly":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, Rational):
            return UniPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "UniPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent}")
        result = UniPoly.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def integral(self) -> "UniPoly":
        """Antiderivative vanishing at 0."""
        out = [Fraction(0)]
        out.extend(Fraction(c) / (i + 1) for i, c in enumerate(self.coeffs))
        return UniPoly(out)

    def __call__(self, x: Rational) -> Rational:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, Rational):
            return self.coeffs == (UniPoly.constant(other)).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        pieces = []
        for power, coeff in enumerate(self.coeffs):
            if coeff == 0:
                continue
            negative = coeff < 0
            mag = -coeff if negative else coeff
            if power == 0:
                body = _fmt(mag)
            else:
                xpart = "x" if power == 1 else f"x^{power}"
                body = xpart if mag == 1 else f"{_fmt(mag)}*{xpart}"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" - {body}" if negative else f" + {body}")
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"<UniPoly {self}>"

    def to_json_coeffs(self) -> list[str]:
        """Dense ascending coefficient strings; the zero polynomial is ["0"]."""
        if not self.coeffs:
            return ["0"]
        return [_fmt(c) for c in self.coeffs]


def _fmt(value: Rational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _coerce(value):
    if isinstance(value, UniPoly):
        return value
    if isinstance(value, Rational):
        return UniPoly.constant(value)
    return NotImplemented


def parse_unipoly(text: str) -> UniPoly:
    """Parse polynomial-in-x text such as "1 - x + 1/2*x^2" or "0"."""
    pos = 0
    n = len(text)

    def error(expected: str):
        raise ParseError(text, pos, expected)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos] in " \t":
            pos += 1

    def take(ch: str) -> bool:
        nonlocal pos
        if pos < n and text[pos] == ch:
            pos += 1
            return True
        return False

    def integer() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            error("digit")
        return int(text[start:pos])

    def term() -> tuple[int, Fraction]:
        nonlocal pos
        coeff = Fraction(1)
        power = 0
        have_coeff = False
        if pos < n and text[pos].isdigit():
            num = integer()
            if take("/"):
                dstart = pos
                den = integer()
                if den == 0:
                    pos = dstart
                    error("positive denominator")
                coeff = Fraction(num, den)
            else:
                coeff = Fraction(num)
            have_coeff = True
            if not take("*"):
                return power, coeff
        if not take("x"):
            error("'x'" if have_coeff else "coefficient or 'x'")
        power = 1
        if take("^"):
            power = integer()
        return power, coeff

    skip_ws()
    if pos >= n:
        error("polynomial")
    acc: dict[int, Fraction] = {}
    sign = -1 if take("-") else 1
    skip_ws()
    power, coeff = term()
    acc[power] = acc.get(power, Fraction(0)) + sign * coeff
    while True:
        skip_ws()
        if pos >= n:
            break
        if take("+"):
            sign = 1
        elif take("-"):
            sign = -1
        else:
            error("'+' or '-'")
        skip_ws()
        power, coeff = term()
        acc[power] = acc.get(power, Fraction(0)) + sign * coeff
    top = max(acc) if acc else 0
    return UniPoly(tuple(acc.get(i, Fraction(0)) for i in range(top + 1)))


@dataclass(frozen=True)
class IVProblem:
    """u' = a*u + c*u^power + g(x) with u(0) = u0, truncated at depth."""

    a: Rational
    c: Rational
    power: int
    g: UniPoly
    u0: Rational
    depth: int

    def __post_init__(self):
        if not isinstance(self.power, int) or self.power < 1:
            raise ValueError(f"power must be a positive integer, got {self.power}")
        if not isinstance(self.depth, int) or self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")


@dataclass(frozen=True)
class SeriesSolution:
    """Solution components u_0(x) .. u_depth(x)."""

    components: tuple[UniPoly, ...]

    @property
    def depth(self) -> int:
        return len(self.components) - 1

    def to_json(self) -> dict:
        return {
            "components": [u.to_json_coeffs() for u in self.components],
        }


def _adomian_over_components(components: list[UniPoly], power: int) -> UniPoly:
    """A_k of u^power for the component list [u_0..u_k], evaluated in x.

    Runs the generic convolution fold over UniPoly entries; by the
    dependence property only components up to k matter, so the grid length
    is exactly k+1 and the last entry is A_k.
    """
    grid = SeriesGrid.one_dim(components)
    if power == 1:
        return components[-1]
    acc = grid
    for _ in range(power - 1):
        acc = truncated_product_1d(grid, acc)
    return acc[len(components) - 1]


def solve(problem: IVProblem) -> SeriesSolution:
    """Compute the decomposition components of the problem exactly."""
    a = Fraction(problem.a)
    c = Fraction(problem.c)
    components = [UniPoly.constant(problem.u0) + problem.g.integral()]
    for k in range(problem.depth):
        a_k = _adomian_over_components(components, problem.power)
        integrand = components[k] * a + a_k * c
        components.append(integrand.integral())
    return SeriesSolution(tuple(components))


def partial_sum(solution: SeriesSolution, depth: int) -> UniPoly:
    """Sum of components u_0 .. u_depth as one polynomial."""
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    if depth > solution.depth:
        raise ValueError(
            f"depth {depth} exceeds computed components ({solution.depth})"
        )
    total = UniPoly.zero()
    for u in solution.components[: depth + 1]:
        total = total + u
    return total
