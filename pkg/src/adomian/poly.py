"""Exact sparse multivariate polynomials over series-component symbols.

The building blocks for everything else in this package:

* ``ComponentVar`` -- a subscripted series component such as ``u[3]`` or
  ``u[1,2]`` (one or two nonnegative indices, plus a one-letter family so
  several series can coexist, e.g. ``u`` and ``v``).
* ``Monomial`` -- a product of component variables with positive integer
  exponents, kept in a canonical sorted form.
* ``Polynomial`` -- a sparse sum of monomials with exact rational
  coefficients (Python ints and ``fractions.Fraction``; no floats).
* ``SeriesGrid`` -- a dense 1-D list or 2-D row-major grid of ring entries
  (usually polynomials) indexed from 0.

All values are immutable after construction and every operation is a pure
function, so values can be shared freely across threads.

Canonical text format (also the parser grammar)::

    poly    := ["-"] term ( " + " term | " - " term )*  |  "0"
    term    := [coeff "*"] factor ("*" factor)*  |  coeff
    coeff   := integer | integer "/" positive-integer
    factor  := var ["^" exponent]
    var     := family "[" index ("," index)? "]"

Terms are ordered by ascending total degree; ties are broken by descending
lexicographic comparison of the flattened variable sequence, which yields
e.g. ``u[1]^2 + 2*u[0]*u[2]``. A coefficient of 1 is suppressed and the sign
of a negative coefficient folds into the separating `` - ``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Iterator, Mapping

__all__ = [
    "ComponentVar",
    "MissingAssignmentError",
    "Monomial",
    "ParseError",
    "Polynomial",
    "SeriesGrid",
    "parse_polynomial",
]


class ParseError(ValueError):
    """Raised when polynomial text does not conform to the grammar."""

    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"parse error at position {pos}: expected {expected}")


class MissingAssignmentError(LookupError):
    """Raised when evaluating a polynomial with an incomplete assignment."""

    def __init__(self, var: "ComponentVar"):
        self.var = var
        super().__init__(f"no value assigned to {var}")


class ComponentVar:
    """A series-component symbol ``family[indices]``.

    Totally ordered by family, then dimension, then indices
    lexicographically. Instances are interned: constructing the same symbol
    twice returns the same object, so the comparisons that dominate every
    polynomial operation short-circuit on identity.
    """

    __slots__ = ("family", "dim", "indices", "_key", "_hash")
    _interned: dict = {}

    def __new__(cls, family: str, indices: Iterable[int]):
        idx = tuple(indices)
        cached = cls._interned.get((family, idx))
        if cached is not None:
            return cached
        if len(idx) not in (1, 2):
            raise ValueError(f"indices must have 1 or 2 entries, got {len(idx)}")
        if any(not isinstance(i, int) or i < 0 for i in idx):
            raise ValueError(f"indices must be nonnegative integers, got {idx}")
        if len(family) != 1 or not family.islower() or not family.isalpha():
            raise ValueError(f"family must be one lowercase letter, got {family!r}")
        self = super().__new__(cls)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "dim", len(idx))
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "_key", (family, len(idx), idx))
        object.__setattr__(self, "_hash", hash((family, len(idx), idx)))
        cls._interned[(family, idx)] = self
        return self

    def __setattr__(self, name, value):
        raise AttributeError("ComponentVar is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if isinstance(other, ComponentVar):
            return self._key == other._key
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    def __str__(self) -> str:
        return f"{self.family}[{','.join(str(i) for i in self.indices)}]"

    def __repr__(self) -> str:
        return f"ComponentVar({self.family!r}, {self.indices!r})"

    def __reduce__(self):
        return (ComponentVar, (self.family, self.indices))


def _as_rational(value) -> Rational:
    """Accept ints and Fractions; reject floats and other inexact types."""
    if isinstance(value, Rational):
        return value
    raise TypeError(f"coefficients must be exact rationals, got {type(value).__name__}")


class Monomial:
    """A product of component variables, e.g. ``u[0]*u[1]^2``.

    ``factors`` is sorted by the ComponentVar order and stores no zero
    exponents; the empty tuple is the constant monomial 1.
    """

    __slots__ = ("factors", "_hash")

    def __init__(self, factors: tuple[tuple[ComponentVar, int], ...] = ()):
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "_hash", hash(factors))

    def __setattr__(self, name, value):
        raise AttributeError("Monomial is immutable")

    def __eq__(self, other):
        if isinstance(other, Monomial):
            return self._hash == other._hash and self.factors == other.factors
        return NotImplemented

    def __hash__(self):
        return self._hash

    @staticmethod
    def one() -> "Monomial":
        return _ONE_MONOMIAL

    @staticmethod
    def of(*factors: tuple[ComponentVar, int]) -> "Monomial":
        """Build a monomial from (var, exponent) pairs, merging duplicates."""
        merged: dict[ComponentVar, int] = {}
        for var, exp in factors:
            if exp < 0:
                raise ValueError(f"exponent must be nonnegative, got {exp}")
            if exp:
                merged[var] = merged.get(var, 0) + exp
        return Monomial(tuple(sorted(merged.items())))

    @staticmethod
    def variable(var: ComponentVar) -> "Monomial":
        return Monomial(((var, 1),))

    @property
    def degree(self) -> int:
        return sum(exp for _, exp in self.factors)

    def exponent_of(self, var: ComponentVar) -> int:
        for v, exp in self.factors:
            if v == var:
                return exp
        return 0

    def index_sum(self, axis: int = 0) -> int:
        """Exponent-weighted sum of the given index component."""
        return sum(exp * var.indices[axis] for var, exp in self.factors)

    def __mul__(self, other: "Monomial") -> "Monomial":
        a, b = self.factors, other.factors
        if not a:
            return other
        if not b:
            return self
        if len(b) == 1:
            # dominant case in the recurrences: multiply by a single variable
            var, exp = b[0]
            key = var._key
            for i, (v, e) in enumerate(a):
                if v is var or v._key == key:
                    return Monomial(a[:i] + ((var, e + exp),) + a[i + 1 :])
                if key < v._key:
                    return Monomial(a[:i] + b + a[i:])
            return Monomial(a + b)
        # merge two sorted factor lists
        out: list[tuple[ComponentVar, int]] = []
        i = j = 0
        while i < len(a) and j < len(b):
            if a[i][0] == b[j][0]:
                out.append((a[i][0], a[i][1] + b[j][1]))
                i += 1
                j += 1
            elif a[i][0] < b[j][0]:
                out.append(a[i])
                i += 1
            else:
                out.append(b[j])
                j += 1
        out.extend(a[i:])
        out.extend(b[j:])
        return Monomial(tuple(out))

    def map_vars(self, fn: Callable[[ComponentVar], ComponentVar]) -> "Monomial":
        """Rename every variable through ``fn`` (exponents preserved)."""
        return Monomial.of(*((fn(var), exp) for var, exp in self.factors))

    def sort_key(self):
        """Canonical ordering key: see the module docstring."""
        flat = tuple(
            itertools.chain.from_iterable(
                itertools.repeat(var, exp) for var, exp in self.factors
            )
        )
        return (self.degree, _Reversed(flat))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(
            str(var) + (f"^{exp}" if exp > 1 else "") for var, exp in self.factors
        )

    def __repr__(self) -> str:
        return f"Monomial({self.factors!r})"

    def __reduce__(self):
        return (Monomial, (self.factors,))


_ONE_MONOMIAL = Monomial(())


class _Reversed:
    """Wrapper inverting comparison order, for use inside sort keys."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    def __eq__(self, other):
        return self.value == other.value

    def __lt__(self, other):
        return other.value < self.value


class Polynomial:
    """Sparse exact polynomial: a canonical map ``Monomial -> coefficient``.

    Coefficients are nonzero exact rationals. Supports +, -, * (including
    scalar multiplication by ints/Fractions), integer powers, evaluation,
    and the canonical text format via ``str``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Rational] | None = None):
        canonical: dict[Monomial, Rational] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = _as_rational(coeff)
                if coeff != 0:
                    canonical[mono] = coeff
        self._terms = canonical

    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def constant(value) -> "Polynomial":
        return Polynomial({Monomial.one(): value})

    @staticmethod
    def variable(var: ComponentVar) -> "Polynomial":
        return Polynomial({Monomial.variable(var): 1})

    @staticmethod
    def from_terms(pairs: Iterable[tuple[Monomial, Rational]]) -> "Polynomial":
        """Sum up (monomial, coefficient) pairs, merging and dropping zeros."""
        acc: dict[Monomial, Rational] = {}
        for mono, coeff in pairs:
            coeff = _as_rational(coeff)
            new = acc.get(mono, 0) + coeff
            if new:
                acc[mono] = new
            else:
                acc.pop(mono, None)
        return Polynomial(acc)

    def terms(self) -> Iterator[tuple[Monomial, Rational]]:
        """Iterate (monomial, coefficient) pairs in canonical order."""
        for mono in sorted(self._terms, key=Monomial.sort_key):
            yield mono, self._terms[mono]

    def items(self) -> Iterator[tuple[Monomial, Rational]]:
        """Iterate (monomial, coefficient) pairs in arbitrary order."""
        return iter(self._terms.items())

    def coefficient(self, mono: Monomial) -> Rational:
        return self._terms.get(mono, 0)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1 by convention."""
        if not self._terms:
            return -1
        return max(m.degree for m in self._terms)

    def variables(self) -> set[ComponentVar]:
        return {var for mono in self._terms for var, _ in mono.factors}

    def __add__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            new = out.get(mono, 0) + coeff
            if new:
                out[mono] = new
            else:
                del out[mono]
        result = Polynomial.__new__(Polynomial)
        result._terms = out
        return result

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        result = Polynomial.__new__(Polynomial)
        result._terms = {m: -c for m, c in self._terms.items()}
        return result

    def __sub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Rational):
            if other == 0:
                return Polynomial.zero()
            result = Polynomial.__new__(Polynomial)
            result._terms = {m: c * other for m, c in self._terms.items()}
            return result
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, Rational] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = ma * mb
                new = out.get(mono, 0) + ca * cb
                if new:
                    out[mono] = new
                else:
                    del out[mono]
        result = Polynomial.__new__(Polynomial)
        result._terms = out
        return result

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {exponent}")
        result = Polynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, Rational):
            return self == Polynomial.constant(other)
        return NotImplemented

    __hash__ = None  # mutable-dict backed; compare by value only

    def map_vars(self, fn: Callable[[ComponentVar], ComponentVar]) -> "Polynomial":
        """Rename variables in every monomial (used for subscript shifts)."""
        return Polynomial.from_terms(
            (mono.map_vars(fn), coeff) for mono, coeff in self._terms.items()
        )

    def evaluate(self, assignment: Mapping[ComponentVar, Rational]) -> Rational:
        """Exact value at the assignment; every variable must be assigned."""
        total: Rational = Fraction(0)
        for mono, coeff in self._terms.items():
            value = coeff
            for var, exp in mono.factors:
                if var not in assignment:
                    raise MissingAssignmentError(var)
                value = value * assignment[var] ** exp
            total += value
        return total

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"<Polynomial {self}>"

    def __reduce__(self):
        return (Polynomial, (self._terms,))

    def to_json_terms(self) -> list[dict]:
        """JSON-ready representation: canonical list of term objects."""
        out = []
        for mono, coeff in self.terms():
            out.append(
                {
                    "coeff": _format_rational(coeff),
                    "monomial": [
                        {"var": list(var.indices), "family": var.family, "exp": exp}
                        for var, exp in mono.factors
                    ],
                }
            )
        return out


def _coerce(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Rational):
        return Polynomial.constant(value)
    return NotImplemented


def _format_rational(value: Rational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_polynomial(poly: Polynomial) -> str:
    """Canonical deterministic text form (see module docstring)."""
    if poly.is_zero:
        return "0"
    pieces: list[str] = []
    for mono, coeff in poly.terms():
        negative = coeff < 0
        mag = -coeff if negative else coeff
        if not mono.factors:
            body = _format_rational(mag)
        elif mag == 1:
            body = str(mono)
        else:
            body = f"{_format_rational(mag)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


class _Parser:
    """Recursive-descent parser for the canonical polynomial grammar."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        raise ParseError(self.text, self.pos, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def integer(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("digit")
        return int(self.text[start : self.pos])

    def coefficient(self) -> Fraction:
        num = self.integer()
        if self.take("/"):
            dstart = self.pos
            den = self.integer()
            if den == 0:
                self.pos = dstart
                self.error("positive denominator")
            return Fraction(num, den)
        return Fraction(num)

    def factor(self) -> tuple[ComponentVar, int]:
        ch = self.peek()
        if not (ch.isalpha() and ch.islower()):
            self.error("variable family letter")
        family = ch
        self.pos += 1
        if not self.take("["):
            self.error("'['")
        indices = [self.integer()]
        if self.take(","):
            indices.append(self.integer())
        if not self.take("]"):
            self.error("']' or ','")
        exp = 1
        if self.take("^"):
            exp = self.integer()
        return ComponentVar(family, indices), exp

    def term(self) -> tuple[Monomial, Fraction]:
        coeff = Fraction(1)
        factors: list[tuple[ComponentVar, int]] = []
        if self.peek().isdigit():
            coeff = self.coefficient()
        else:
            factors.append(self.factor())
        while self.take("*"):
            factors.append(self.factor())
        return Monomial.of(*factors), coeff

    def parse(self) -> Polynomial:
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("polynomial")
        negative = self.take("-")
        self.skip_ws()
        terms: list[tuple[Monomial, Fraction]] = []
        mono, coeff = self.term()
        terms.append((mono, -coeff if negative else coeff))
        while True:
            self.skip_ws()
            if self.pos >= len(self.text):
                break
            if self.take("+"):
                sign = 1
            elif self.take("-"):
                sign = -1
            else:
                self.error("'+' or '-'")
            self.skip_ws()
            mono, coeff = self.term()
            terms.append((mono, sign * coeff))
        return Polynomial.from_terms(terms)


def parse_polynomial(text: str) -> Polynomial:
    """Parse canonical polynomial text; inverse of ``format_polynomial``."""
    return _Parser(text).parse()


@dataclass(frozen=True)
class SeriesGrid:
    """Dense 1-D or 2-D grid of ring entries, indexed from 0.

    ``shape`` is ``(n,)`` or ``(rows, cols)``; ``entries`` is row-major.
    Entries are usually Polynomial values but may be anything supporting
    ``+`` and ``*`` (the convolution operations are generic in the entry
    ring; the ADM solver runs them over univariate polynomials).
    """

    shape: tuple[int, ...]
    entries: tuple

    def __post_init__(self):
        if len(self.shape) not in (1, 2):
            raise ValueError(f"shape must be 1-D or 2-D, got {self.shape}")
        if any(extent < 1 for extent in self.shape):
            raise ValueError(f"extents must be >= 1, got {self.shape}")
        expected = self.shape[0] if len(self.shape) == 1 else self.shape[0] * self.shape[1]
        if len(self.entries) != expected:
            raise ValueError(
                f"expected {expected} entries for shape {self.shape}, got {len(self.entries)}"
            )

    @staticmethod
    def one_dim(entries: Iterable) -> "SeriesGrid":
        items = tuple(entries)
        return SeriesGrid((len(items),), items)

    @staticmethod
    def two_dim(rows: Iterable[Iterable]) -> "SeriesGrid":
        rows = [tuple(row) for row in rows]
        if not rows:
            raise ValueError("grid needs at least one row")
        cols = len(rows[0])
        if any(len(row) != cols for row in rows):
            raise ValueError("rows must have equal length")
        return SeriesGrid((len(rows), cols), tuple(itertools.chain.from_iterable(rows)))

    @property
    def dim(self) -> int:
        return len(self.shape)

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            if self.dim != 2:
                raise IndexError("pair index into a 1-D grid")
            k, l = idx
            rows, cols = self.shape
            if not (0 <= k < rows and 0 <= l < cols):
                raise IndexError(f"index {idx} out of range for shape {self.shape}")
            return self.entries[k * cols + l]
        if self.dim != 1:
            raise IndexError("single index into a 2-D grid")
        if not 0 <= idx < self.shape[0]:
            raise IndexError(f"index {idx} out of range for shape {self.shape}")
        return self.entries[idx]

    def __iter__(self):
        return iter(self.entries)

    def map(self, fn: Callable) -> "SeriesGrid":
        return SeriesGrid(self.shape, tuple(fn(e) for e in self.entries))
