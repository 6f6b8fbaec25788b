"""Brute-force oracle and the two Duan recurrences, cross-validated."""

import random
from fractions import Fraction
from math import comb, factorial

import pytest

from adomian import (
    Polynomial,
    duan_corollary1,
    duan_corollary1_table,
    duan_corollary3,
    duan_corollary3_table,
    oracle_1d,
    oracle_2d,
    oracle_series_1d,
    parse_polynomial,
)
from adomian.reference import compositions
from util import u, u2


class TestCompositions:
    @pytest.mark.parametrize("total,parts", [(0, 1), (3, 1), (4, 2), (5, 3), (7, 4)])
    def test_count_and_sums(self, total, parts):
        seen = list(compositions(total, parts))
        assert len(seen) == comb(total + parts - 1, parts - 1)
        assert len(set(seen)) == len(seen)
        assert all(len(c) == parts and sum(c) == total for c in seen)
        assert all(min(c) >= 0 for c in seen)


class TestOracle1D:
    def test_order_zero_is_u0_power(self):
        for n in (1, 2, 5):
            assert oracle_1d(n, 0) == Polynomial.variable(u(0)) ** n

    def test_hand_enumerations(self):
        assert oracle_1d(2, 1) == parse_polynomial("2*u[0]*u[1]")
        assert oracle_1d(2, 2) == parse_polynomial("u[1]^2 + 2*u[0]*u[2]")
        assert oracle_1d(3, 2) == parse_polynomial("3*u[0]*u[1]^2 + 3*u[0]^2*u[2]")

    def test_linear_case(self):
        assert oracle_series_1d(1, 4) == [
            Polynomial.variable(u(k)) for k in range(4)
        ]

    def test_coefficients_are_multinomials(self):
        rng = random.Random(7)
        for _ in range(25):
            power = rng.randint(1, 6)
            target = rng.randint(0, 9)
            poly = oracle_1d(power, target)
            for mono, coeff in poly.terms():
                expected = factorial(power)
                for _, exp in mono.factors:
                    expected //= factorial(exp)
                assert coeff == expected

    def test_validation(self):
        with pytest.raises(ValueError):
            oracle_1d(0, 1)
        with pytest.raises(ValueError):
            oracle_1d(2, -1)


class TestOracle2D:
    def test_origin(self):
        for n in (1, 2, 4):
            assert oracle_2d(n, (0, 0)) == Polynomial.variable(u2(0, 0)) ** n

    def test_hand_enumerations(self):
        assert oracle_2d(2, (0, 1)) == parse_polynomial("2*u[0,0]*u[0,1]")
        assert oracle_2d(2, (1, 1)) == parse_polynomial(
            "2*u[0,1]*u[1,0] + 2*u[0,0]*u[1,1]"
        )

    def test_row_collapse_matches_1d(self):
        # second index pinned to zero reproduces the single-index polynomials
        for power in (2, 3):
            for k in range(5):
                collapsed = oracle_2d(power, (k, 0)).map_vars(
                    lambda var: u(var.indices[0])
                )
                assert collapsed == oracle_1d(power, k)


class TestDuanCorollary1:
    def test_reduced_cell_2_2(self):
        table = duan_corollary1_table(3)
        assert table[(2, 2)] == Polynomial.variable(u(1)) ** 2 * Fraction(1, 2)

    def test_first_column_is_components(self):
        table = duan_corollary1_table(6)
        for i in range(1, 6):
            assert table[(i, 1)] == Polynomial.variable(u(i))

    def test_subscript_shift_cell(self):
        # Z[4,2] = u1*u3 + (shift of Z[2,2]) = u1*u3 + u2^2/2
        table = duan_corollary1_table(5)
        assert table[(4, 2)] == parse_polynomial("u[1]*u[3] + 1/2*u[2]^2")

    def test_known_series(self):
        assert duan_corollary1(2, 3) == [
            parse_polynomial("u[0]^2"),
            parse_polynomial("2*u[0]*u[1]"),
            parse_polynomial("u[1]^2 + 2*u[0]*u[2]"),
        ]
        assert duan_corollary1(1, 2) == [
            Polynomial.variable(u(0)),
            Polynomial.variable(u(1)),
        ]
        assert duan_corollary1(3, 2) == [
            parse_polynomial("u[0]^3"),
            parse_polynomial("3*u[0]^2*u[1]"),
        ]


class TestDuanCorollary3:
    def test_reduced_cell_2_2(self):
        table = duan_corollary3_table(3)
        assert table[(2, 2)] == Polynomial.variable(u(1)) ** 2 * Fraction(1, 2)

    def test_intermediates_fractional_but_results_integral(self):
        table = duan_corollary3_table(8)
        fractional = [
            cell for cell, poly in table.items()
            if any(c.denominator != 1 for _, c in poly.terms())
        ]
        assert fractional, "the 1/i factor should appear in intermediates"
        for power in (2, 3, 7):
            for poly in duan_corollary3(power, 8):
                for _, coeff in poly.terms():
                    assert coeff.denominator == 1

    def test_known_series(self):
        assert duan_corollary3(2, 3) == duan_corollary1(2, 3)
        assert duan_corollary3(3, 2) == [
            parse_polynomial("u[0]^3"),
            parse_polynomial("3*u[0]^2*u[1]"),
        ]

    def test_validation(self):
        with pytest.raises(ValueError):
            duan_corollary3(0, 3)
        with pytest.raises(ValueError):
            duan_corollary1(2, 0)


class TestReducedTables:
    @pytest.mark.parametrize("builder", [duan_corollary1_table, duan_corollary3_table])
    def test_row_index_sum_and_cell_degree(self, builder):
        table = builder(10)
        for (i, k), poly in table.items():
            for mono, _ in poly.terms():
                assert mono.index_sum(0) == i, (i, k, str(poly))
                assert mono.degree == k, (i, k, str(poly))


class TestTripleEquivalence:
    @pytest.mark.parametrize("power", [1, 2, 3, 5, 10])
    def test_all_routes_agree(self, power):
        count = 12
        reference = oracle_series_1d(power, count)
        assert duan_corollary1(power, count) == reference
        assert duan_corollary3(power, count) == reference

    def test_prefix_stability(self):
        # A_i does not depend on how many polynomials are requested
        long = duan_corollary1(3, 9)
        short = duan_corollary1(3, 5)
        assert long[:5] == short
        long3 = duan_corollary3(3, 9)
        assert long3[:5] == duan_corollary3(3, 5)
