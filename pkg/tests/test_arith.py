import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colored_eulerian.arith import (
    Poly,
    TruncatedSeries,
    egf_colored_fubini,
    exp_minus_one,
    f_to_h,
    is_squarefree,
    multinomial,
    partial_power_sum,
    poly_gcd,
    poly_reverse,
    poly_shift,
    power_sum_tail_bound,
    stirling2,
    sturm_count_real_roots,
    truncation_for,
)

from oracles import Q_SIZES, sign_changes_on_grid, stirling2_brute


@pytest.mark.parametrize("n,k,expected", [(3, 3, 1), (3, 2, 3), (4, 2, 7), (0, 0, 1), (4, 0, 0), (2, 5, 0)])
def test_stirling2_values(n, k, expected):
    assert stirling2(n, k) == expected


def test_stirling2_matches_enumeration():
    for n in range(0, 11):
        for k in range(0, n + 1):
            assert stirling2(n, k) == stirling2_brute(n, k), (n, k)


@pytest.mark.parametrize("parts,expected", [((1, 1, 1), 6), ((3,), 1), ((2, 1), 3), ((2, 2, 1), 30)])
def test_multinomial(parts, expected):
    assert multinomial(parts) == expected


def test_multinomial_rejects_zero_part():
    with pytest.raises(ValueError):
        multinomial((2, 0))


class TestPoly:
    def test_zero_has_no_degree(self):
        assert Poly().degree is None
        assert Poly([0, 0]).degree is None
        assert Poly([1, 0, 0]).degree == 0

    def test_arithmetic(self):
        t = Poly.t()
        p = (t + 1) ** 3
        assert p == Poly([1, 3, 3, 1])
        assert p - p == Poly()
        assert 2 * p == Poly([2, 6, 6, 2])
        assert p(Fraction(1, 2)) == Fraction(27, 8)

    def test_divmod(self):
        a = Poly([1, 0, 0, 1])  # t^3 + 1
        q, r = a.divmod(Poly([1, 1]))
        assert q == Poly([1, -1, 1]) and r == Poly()
        q, r = Poly([2, 0, 1]).divmod(Poly([0, 2]))
        assert q * Poly([0, 2]) + r == Poly([2, 0, 1])

    def test_gcd(self):
        t = Poly.t()
        assert poly_gcd((t - 1) ** 2 * (t + 2), (t - 1) * (t + 3)) == t - 1

    def test_json_round_trip(self):
        p = Poly([Fraction(1, 3), -2, 0, 5])
        obj = p.to_json()
        assert obj == {"coeffs": [[1, 3], [-2, 1], [0, 1], [5, 1]]}
        assert Poly.from_json(obj) == p

    def test_immutable(self):
        with pytest.raises(AttributeError):
            Poly([1]).coeffs = ()

    def test_pretty(self):
        assert Poly([1, 10, 13]).pretty(descending=True) == "13t^2+10t+1"
        assert Poly([0, -1, 1]).pretty() == "-t+t^2"


class TestShiftReverse:
    def test_shift_square(self):
        assert poly_shift(Poly([0, 0, 1]), -1) == Poly([1, -2, 1])

    def test_shift_two_colored_pipeline(self):
        assert poly_shift(Poly([24, 12, 1]), -1) == Poly([13, 10, 1])

    def test_shift_constant(self):
        assert poly_shift(Poly([5]), Fraction(7, 3)) == Poly([5])

    def test_reverse(self):
        assert poly_reverse(Poly([13, 10, 1]), 2) == Poly([1, 10, 13])
        assert poly_reverse(Poly([1]), 0) == Poly([1])
        assert poly_reverse(Poly([0, 1]), 3) == Poly([0, 0, 1])

    def test_reverse_rejects_small_degree(self):
        with pytest.raises(ValueError):
            poly_reverse(Poly([1, 1, 1]), 1)

    @given(st.lists(st.integers(-50, 50), max_size=8), st.integers(0, 4))
    def test_reverse_involution(self, coeffs, extra):
        p = Poly(coeffs)
        d = (p.degree or 0) + extra
        assert poly_reverse(poly_reverse(p, d), d) == p

    @given(st.lists(st.integers(-20, 20), max_size=7), st.fractions(max_denominator=7))
    def test_shift_agrees_with_composition(self, coeffs, a):
        p = Poly(coeffs)
        assert poly_shift(p, a) == p(Poly([a, 1]))


class TestFToH:
    def test_two_colored_n3(self):
        assert f_to_h(Poly([1, 12, 24]), 3) == Poly([1, 10, 13])

    def test_point(self):
        assert f_to_h(Poly([1]), 1) == Poly([1])

    def test_hexagon(self):
        assert f_to_h(Poly([1, 6, 6]), 3) == Poly([1, 4, 1])

    def test_rejects_high_degree(self):
        with pytest.raises(ValueError):
            f_to_h(Poly([1, 1, 1, 1]), 3)

    def test_matches_shift_then_reverse(self):
        rng = random.Random(20261019)
        for _ in range(100):
            n = rng.randint(1, 8)
            f_blocks = Poly([rng.randint(-30, 30) for _ in range(n)])
            # blocks-indexed exponent b-1 is dimension n-b, so the dimension form is the reversal
            f_dim = poly_reverse(f_blocks, n - 1)
            assert f_to_h(f_blocks, n) == poly_reverse(poly_shift(f_dim, -1), n - 1)


class TestRoots:
    @pytest.mark.parametrize("coeffs,expected", [
        ([-1, 0, 1], 2),
        ([1, 0, 1], 0),
        ([1, 10, 13], 2),
        ([1, -2, 1], 1),
        ([7], 0),
        ([0, 1], 1),
    ])
    def test_sturm_counts(self, coeffs, expected):
        assert sturm_count_real_roots(Poly(coeffs)) == expected

    def test_sturm_rejects_zero(self):
        with pytest.raises(ValueError):
            sturm_count_real_roots(Poly())

    @pytest.mark.parametrize("coeffs,expected", [([1, -2, 1], False), ([1, 10, 13], True), ([0, 1], True)])
    def test_squarefree(self, coeffs, expected):
        assert is_squarefree(Poly(coeffs)) is expected

    def test_sturm_agrees_with_grid_on_random_cubics(self):
        rng = random.Random(7)
        checked = 0
        while checked < 50:
            # roots spaced at least 1/2 apart so a grid of step 1/64 separates them
            roots = sorted(rng.sample(range(-12, 13), 3))
            roots = [Fraction(r, 2) for r in roots]
            real = rng.random() < 0.5
            t = Poly.t()
            if real:
                p = (t - roots[0]) * (t - roots[1]) * (t - roots[2])
            else:
                p = (t - roots[0]) * ((t - roots[1]) ** 2 + 1)
            p = p * rng.choice([-3, -1, 2, 5])
            assert is_squarefree(p)
            assert sturm_count_real_roots(p) == sign_changes_on_grid(p.coeffs, -8, 8, 1024)
            checked += 1


class TestSeries:
    def test_exp_minus_one(self):
        s = exp_minus_one(4)
        assert s.coeffs == (0, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24))

    def test_compose_rejects_constant_term(self):
        with pytest.raises(ValueError):
            TruncatedSeries([1, 1], 3).compose(TruncatedSeries([1, 1], 3))

    def test_geometric_inverse(self):
        x = TruncatedSeries([0, 1], 5)
        geometric = TruncatedSeries([1] * 6, 5)
        one_minus_x = TruncatedSeries([1, -1], 5)
        assert geometric * one_minus_x == TruncatedSeries([1], 5)
        assert geometric.compose(x) == geometric

    def test_fubini_coefficients(self):
        assert egf_colored_fubini(1, 3)[3] == Fraction(13, 6)
        assert egf_colored_fubini(2, 3)[3] == Fraction(37, 6)
        for alpha in range(1, 6):
            assert egf_colored_fubini(alpha, 1)[1] == 1

    def test_egf_counts_match_enumeration(self):
        from math import factorial

        for (n, alpha), size in Q_SIZES.items():
            assert egf_colored_fubini(alpha, n)[n] * factorial(n) == size

    def test_egf_coefficients_integral(self):
        from math import factorial

        for alpha in range(1, 5):
            s = egf_colored_fubini(alpha, 8)
            for n in range(1, 9):
                assert (s[n] * factorial(n)).denominator == 1


class TestPowerSums:
    def test_geometric_limit(self):
        assert abs(partial_power_sum(1, Fraction(1, 2), 40) - 2) < Fraction(1, 10**6)

    def test_zero_to_the_zero(self):
        assert partial_power_sum(0, 0, 5) == 1

    def test_cubic_limit(self):
        assert abs(partial_power_sum(3, Fraction(2, 3), 200) - 222) < Fraction(1, 10**6)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 4), st.fractions(min_value=Fraction(-3, 4), max_value=Fraction(3, 4), max_denominator=8))
    def test_tail_bound_is_an_upper_bound(self, n, x):
        K = 30
        bound = power_sum_tail_bound(n, x, K)
        if bound is None:
            return
        far = partial_power_sum(n, x, 400)
        # the terms beyond 400 are far below the bound for these x
        assert abs(far - partial_power_sum(n, x, K)) <= bound

    def test_truncation_for(self):
        K = truncation_for(3, Fraction(2, 3), Fraction(1, 10**6))
        assert power_sum_tail_bound(3, Fraction(2, 3), K) <= Fraction(1, 10**6)
        prev = power_sum_tail_bound(3, Fraction(2, 3), K - 1)
        assert prev is None or prev > Fraction(1, 10**6)
