from fractions import Fraction
from math import comb, factorial

import pytest

from colored_eulerian.arith import Poly, ordered_partition_count, stirling2
from colored_eulerian.errors import BudgetExceeded
from colored_eulerian.eulerian import (
    ROUTES,
    classical_eulerian,
    coefficient_by_descent_sum,
    coefficient_sum_check,
    colored_eulerian,
    colored_eulerian_closed_form,
    colored_eulerian_descents,
    colored_eulerian_from_complex,
    colored_eulerian_recurrence,
    descent_distribution,
    f_polynomial_by_blocks,
    gamma_coefficient,
    log_concavity_check,
    real_rootedness_report,
    theorem_main_sides,
    verify_euler_char_of_Pn,
    verify_fubini_half,
    verify_power_sum_corollary,
    verify_theorem_main,
)
from colored_eulerian.structures import colored_descent_set, enumerate_colored_permutations

from oracles import COLORED_EULERIAN, TWO_COLORED_ROWS, colored_descent_counts, descent_counts


class TestClassical:
    def test_small(self):
        assert classical_eulerian(1).poly == Poly([0, 1])
        assert classical_eulerian(3).poly == Poly([0, 1, 4, 1])
        assert classical_eulerian(4).poly == Poly([0, 1, 11, 11, 1])

    def test_recurrence_branch_matches_enumeration(self):
        from colored_eulerian.eulerian import _descent_distribution_by_recurrence

        for n in range(1, 9):
            assert _descent_distribution_by_recurrence(n) == descent_counts(n)
        assert descent_distribution(9) == [1, 502, 14608, 88234, 156190, 88234, 14608, 502, 1]

    def test_invariants(self):
        for n in range(1, 11):
            c = classical_eulerian(n).poly.int_coeffs()
            assert c[0] == 0 and len(c) == n + 1
            assert sum(c) == factorial(n)
            assert c[1:] == c[1:][::-1]

    def test_descent_form(self):
        assert classical_eulerian(3).descent_form() == Poly([1, 4, 1])

    def test_rejects_n0(self):
        with pytest.raises(ValueError):
            classical_eulerian(0)


class TestRoutes:
    @pytest.mark.parametrize("route", ROUTES)
    def test_two_colored_rows(self, route):
        for n, row in TWO_COLORED_ROWS.items():
            assert colored_eulerian(n, 2, route).coefficients == row

    @pytest.mark.parametrize("route", ROUTES)
    def test_brute_force_rows(self, route):
        for (n, alpha), row in COLORED_EULERIAN.items():
            assert colored_eulerian(n, alpha, route).coefficients == row

    def test_closed_form_examples(self):
        assert colored_eulerian_closed_form(3, 1).coefficients == [1, 4, 1]
        assert colored_eulerian_closed_form(3, 3).coefficients == [1, 16, 37]

    def test_descents_examples(self):
        assert colored_eulerian_descents(2, 3).coefficients == [1, 5]
        for alpha in range(1, 5):
            assert colored_eulerian_descents(1, alpha).coefficients == [1]

    def test_descents_vectorized_matches_loop(self):
        """The bitmask route against a plain loop over the enumerator."""
        for n, alpha in [(3, 2), (4, 3), (5, 2)]:
            counts = [0] * n
            for tau in enumerate_colored_permutations(n, alpha):
                counts[len(colored_descent_set(tau))] += 1
            assert colored_eulerian_descents(n, alpha).coefficients == counts
            assert counts == colored_descent_counts(n, alpha)

    def test_descents_budget(self):
        with pytest.raises(BudgetExceeded) as err:
            colored_eulerian_descents(6, 2, budget=1000)
        assert "1000" in str(err.value)

    def test_from_complex_examples(self):
        assert f_polynomial_by_blocks(3, 2) == Poly([1, 12, 24])
        assert colored_eulerian_from_complex(2, 2).coefficients == [1, 3]
        assert colored_eulerian_from_complex(1, 5).coefficients == [1]

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            colored_eulerian(3, 2, "bogus")

    def test_four_routes_agree(self):
        for n in range(1, 7):
            for alpha in range(1, 5):
                polys = [colored_eulerian(n, alpha, r) for r in ROUTES]
                assert all(p == polys[0] for p in polys), (n, alpha)

    def test_alpha_one_is_classical(self):
        for n in range(1, 9):
            classical = classical_eulerian(n).descent_form()
            assert colored_eulerian_closed_form(n, 1).poly == classical

    def test_not_palindromic_for_more_colors(self):
        for n in range(2, 8):
            for alpha in range(2, 5):
                c = colored_eulerian(n, alpha).coefficients
                assert c[0] == 1 and c[-1] > 1

    def test_descent_sum_coefficients(self):
        for n in range(1, 7):
            for alpha in range(1, 5):
                want = colored_eulerian(n, alpha).coefficients
                assert [coefficient_by_descent_sum(n, m, alpha) for m in range(n)] == want


class TestGamma:
    @pytest.mark.parametrize("n,i,alpha,expected", [(3, 2, 2, 13), (3, 0, 2, 1), (4, 2, 2, 91)])
    def test_values(self, n, i, alpha, expected):
        assert gamma_coefficient(n, i, alpha) == expected

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            gamma_coefficient(3, 3, 2)

    def test_literal_lower_index_is_shifted_by_one(self):
        """With lower summation index n-i instead of n-1-i the alternating
        sum produces the coefficient of t^(i-1), and zero for i = 0."""
        def shifted(n, i, alpha):
            return sum(
                stirling2(n, n - j) * factorial(n - j) * alpha ** (n - j - 1) * comb(j, n - i) * (-1) ** (j - n + i)
                for j in range(n - i, n)
            )

        for n in range(2, 7):
            for alpha in range(1, 4):
                coeffs = colored_eulerian(n, alpha).coefficients
                assert shifted(n, 0, alpha) == 0
                assert [shifted(n, i, alpha) for i in range(1, n)] == coeffs[:-1]


class TestRecurrence:
    def test_two_colors_row_four(self):
        rows, report = colored_eulerian_recurrence(4, 2)
        assert rows[4] == [1, 25, 91, 75]
        assert report.discrepancies == []

    def test_classical_row_five(self):
        rows, report = colored_eulerian_recurrence(5, 1)
        assert rows[5] == [1, 26, 66, 26, 1]
        assert report.discrepancies == []

    def test_three_colors_discrepancy(self):
        _, report = colored_eulerian_recurrence(3, 3, n_min=3)
        first = report.first
        assert (first.n, first.k, first.printed, first.oracle) == (3, 1, 18, 16)

    def test_printed_bracket_already_fails_at_n2(self):
        _, report = colored_eulerian_recurrence(3, 3)
        first = report.first
        assert (first.n, first.k, first.printed, first.oracle) == (2, 1, 7, 5)
        third = [d for d in report.discrepancies if (d.n, d.k) == (3, 1)][0]
        assert (third.printed, third.propagated) == (18, 22)

    def test_printed_matches_for_one_and_two_colors(self):
        for alpha in (1, 2):
            _, report = colored_eulerian_recurrence(8, alpha, oracle="descents")
            assert report.discrepancies == []

    def test_amended_bracket_matches_oracle(self):
        for alpha in range(1, 5):
            _, report = colored_eulerian_recurrence(7, alpha, variant="amended", oracle="descents")
            assert report.discrepancies == [], alpha
            # iterating the amended recurrence from the base row also stays exact
            _, report = colored_eulerian_recurrence(7, alpha, variant="amended")
            assert all(d.propagated == d.oracle for d in report.discrepancies)

    def test_report_json(self):
        _, report = colored_eulerian_recurrence(3, 3, n_min=3)
        obj = report.to_json()
        assert obj["matches"] is False
        assert obj["discrepancies"][0] == {"n": 3, "k": 1, "printed": 18, "oracle": 16, "propagated": 22}

    def test_rejects_n1(self):
        with pytest.raises(ValueError):
            colored_eulerian_recurrence(1, 2)


class TestIdentities:
    def test_theorem_main(self):
        for n in range(1, 11):
            assert verify_theorem_main(n)

    def test_theorem_main_sides_at_two(self):
        lhs, rhs = theorem_main_sides(3)
        assert lhs(2) == rhs(2) == 74
        lhs, rhs = theorem_main_sides(1)
        assert lhs == rhs == Poly([0, 1])

    def test_theorem_main_pointwise(self):
        """Direct rational evaluation at a few alpha, away from 0 and -1."""
        for n in range(1, 8):
            a_n = classical_eulerian(n).poly
            for alpha in (Fraction(1), Fraction(2), Fraction(1, 3), Fraction(-1, 3)):
                lhs = (alpha + 1) ** n / alpha * a_n(alpha / (alpha + 1))
                rhs = sum(ordered_partition_count(n, k) * alpha ** (k - 1) for k in range(1, n + 1))
                assert lhs == rhs

    def test_fubini_half(self):
        assert 8 * classical_eulerian(3).poly(Fraction(1, 2)) == 13
        assert 16 * classical_eulerian(4).poly(Fraction(1, 2)) == 75
        for n in range(1, 11):
            assert verify_fubini_half(n)

    @pytest.mark.parametrize("n,alpha,K,rhs", [(1, 1, 60, 2), (2, 1, 80, 6), (3, 2, 200, 222)])
    def test_power_sum(self, n, alpha, K, rhs):
        lhs, exact, tail = verify_power_sum_corollary(n, alpha, K)
        assert exact == rhs
        assert abs(lhs - exact) <= tail < Fraction(1, 10**6)

    def test_power_sum_negative_alpha(self):
        lhs, rhs, tail = verify_power_sum_corollary(2, Fraction(-1, 4), 60)
        assert abs(lhs - rhs) <= tail

    def test_power_sum_rejects(self):
        for bad in (0, Fraction(-1, 2), -1):
            with pytest.raises(ValueError):
                verify_power_sum_corollary(2, bad, 10)

    def test_euler_char_of_Pn(self):
        for n in range(1, 11):
            assert verify_euler_char_of_Pn(n)

    def test_euler_char_literal_factorial_reading_fails(self):
        """Weighting by k! instead of (n-k)! does not give 1."""
        n = 3
        literal = sum((-1) ** k * stirling2(n, n - k) * factorial(k) for k in range(n))
        assert literal != 1

    def test_real_roots(self):
        assert real_rootedness_report(3, 2) == (True, 2)
        assert real_rootedness_report(2, 5) == (True, 1)
        assert real_rootedness_report(6, 2) == (True, 5)

    def test_coefficient_sum(self):
        assert colored_eulerian(6, 2).poly(1) == 23040
        for n in range(1, 9):
            for alpha in range(1, 6):
                assert coefficient_sum_check(n, alpha)

    def test_log_concavity(self):
        for n in range(3, 9):
            for alpha in range(1, 6):
                assert log_concavity_check(n, alpha)
