"""Classical and colored Eulerian polynomials.

The colored polynomial A_n^alpha(t) is computed four independent ways:

* ``closed``    sum over S_n of (alpha t)^d (1 + (alpha-1) t)^(n-1-d)
* ``descents``  direct enumeration of colored permutations with fixed last color
* ``complex``   h-polynomial of the colored permutohedron's face counts
* ``gamma``     explicit alternating-sum formula for each coefficient

Classical A_n(x) keeps the convention sum over S_n of x^(1 + d(pi)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from math import comb, factorial

import numpy as np

from .arith import Number, Poly, f_to_h, is_squarefree, ordered_partition_count, \
    partial_power_sum, power_sum_tail_bound, stirling2, sturm_count_real_roots
from .errors import BudgetExceeded

ENUMERATION_BUDGET = 10**8
DESCENT_ENUMERATION_MAX_N = 8
ROUTES = ("closed", "descents", "complex", "gamma")


# ---------------------------------------------------------------------------
# Classical
# ---------------------------------------------------------------------------

def _descent_distribution_by_enumeration(n: int) -> list[int]:
    counts = [0] * n
    for pi in permutations(range(n)):
        counts[sum(1 for i in range(n - 1) if pi[i] > pi[i + 1])] += 1
    return counts


def _descent_distribution_by_recurrence(n: int) -> list[int]:
    row = [1]
    for m in range(2, n + 1):
        prev = row + [0]
        row = [(k + 1) * prev[k] + (m - k) * (prev[k - 1] if k else 0) for k in range(m)]
    return row


def descent_distribution(n: int) -> list[int]:
    """Number of permutations of [n] with exactly d descents, for d = 0..n-1.

    Enumerates for small n and switches to the classical insertion recurrence
    beyond ``DESCENT_ENUMERATION_MAX_N``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if n <= DESCENT_ENUMERATION_MAX_N:
        return _descent_distribution_by_enumeration(n)
    return _descent_distribution_by_recurrence(n)


@dataclass(frozen=True)
class EulerianPolynomial:
    """A_n(x) = sum over S_n of x^(1 + d(pi))."""

    poly: Poly
    n: int
    convention: str = field(default="x^(1+d)")

    def descent_form(self) -> Poly:
        """The shifted convention sum over S_n of x^d(pi)."""
        return Poly(self.poly.coeffs[1:])

    def __call__(self, x):
        return self.poly(x)


def classical_eulerian(n: int) -> EulerianPolynomial:
    return EulerianPolynomial(Poly([0] + descent_distribution(n)), n)


# ---------------------------------------------------------------------------
# Colored: the four routes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ColoredEulerianPolynomial:
    poly: Poly
    n: int
    alpha: int

    @property
    def coefficients(self) -> list[int]:
        """A^alpha(n, k) for k = 0..n-1."""
        cs = self.poly.int_coeffs()
        return cs + [0] * (self.n - len(cs))

    def __eq__(self, other):
        if not isinstance(other, ColoredEulerianPolynomial):
            return NotImplemented
        return (self.n, self.alpha, self.poly) == (other.n, other.alpha, other.poly)

    def __hash__(self):
        return hash((self.n, self.alpha, self.poly))


def _check(n: int, alpha: int):
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if alpha < 1:
        raise ValueError(f"alpha must be at least 1, got {alpha}")


def colored_eulerian_closed_form(n: int, alpha: int) -> ColoredEulerianPolynomial:
    _check(n, alpha)
    scaled_t = Poly([0, alpha])
    colored_ascent = Poly([1, alpha - 1])
    total = Poly()
    for d, count in enumerate(descent_distribution(n)):
        if count:
            total = total + count * scaled_t**d * colored_ascent ** (n - 1 - d)
    return ColoredEulerianPolynomial(total, n, alpha)


def colored_permutation_count(n: int, alpha: int) -> int:
    return alpha ** (n - 1) * factorial(n)


def _mask_popcounts(bits: int) -> np.ndarray:
    table = np.zeros(1 << bits, dtype=np.int64)
    for m in range(1, 1 << bits):
        table[m] = table[m >> 1] + (m & 1)
    return table


def colored_eulerian_descents(n: int, alpha: int, budget: int = ENUMERATION_BUDGET) -> ColoredEulerianPolynomial:
    """Count colored permutations with fixed last color by number of descents.

    Every (word, coloring) pair is visited. A descent is recorded as a bit in
    a mask of positions 1..n-1, the word and color masks are OR-ed so that a
    position with both a word descent and a color change counts once.
    """
    _check(n, alpha)
    size = colored_permutation_count(n, alpha)
    if size > budget:
        raise BudgetExceeded(f"descent enumeration of colored permutations (n={n}, alpha={alpha})", size, budget)
    if n == 1:
        return ColoredEulerianPolynomial(Poly([1]), n, alpha)

    word_masks = np.fromiter(
        (sum(1 << i for i in range(n - 1) if w[i] > w[i + 1]) for w in permutations(range(n))),
        dtype=np.int64,
    )
    heads = np.array(list(product(range(alpha), repeat=n - 1)), dtype=np.int64)
    colors = np.hstack([heads, np.zeros((len(heads), 1), dtype=np.int64)])
    changes = colors[:, :-1] != colors[:, 1:]
    color_masks = (changes * (1 << np.arange(n - 1))).sum(axis=1)

    pop = _mask_popcounts(n - 1)
    counts = np.zeros(n, dtype=np.int64)
    chunk = max(1, 2_000_000 // len(color_masks))
    for start in range(0, len(word_masks), chunk):
        union = word_masks[start:start + chunk, None] | color_masks[None, :]
        counts += np.bincount(pop[union].ravel(), minlength=n)
    return ColoredEulerianPolynomial(Poly(int(c) for c in counts), n, alpha)


def f_polynomial_by_blocks(n: int, alpha: int) -> Poly:
    """sum_k S(n,k) k! alpha^(k-1) x^(k-1): faces counted by number of blocks."""
    return Poly(ordered_partition_count(n, k) * alpha ** (k - 1) for k in range(1, n + 1))


def f_polynomial_by_dimension(n: int, alpha: int) -> Poly:
    """sum_d f_d x^d with f_d the number of d-dimensional faces."""
    return Poly(ordered_partition_count(n, n - d) * alpha ** (n - d - 1) for d in range(n))


def colored_eulerian_from_complex(n: int, alpha: int) -> ColoredEulerianPolynomial:
    _check(n, alpha)
    return ColoredEulerianPolynomial(f_to_h(f_polynomial_by_blocks(n, alpha), n), n, alpha)


def gamma_coefficient(n: int, i: int, alpha: int) -> int:
    """Coefficient of t^i in A_n^alpha(t) from the alternating Stirling sum.

    Sums over face dimensions j >= n-1-i of
    S(n, n-j) (n-j)! alpha^(n-j-1) C(j, n-1-i) (-1)^(j-n+1+i).
    """
    _check(n, alpha)
    if not 0 <= i <= n - 1:
        raise ValueError(f"coefficient index {i} outside 0..{n - 1}")
    low = n - 1 - i
    total = 0
    for j in range(low, n):
        faces = stirling2(n, n - j) * factorial(n - j) * alpha ** (n - j - 1)
        total += faces * comb(j, low) * (-1) ** (j - low)
    return total


def colored_eulerian_gamma(n: int, alpha: int) -> ColoredEulerianPolynomial:
    return ColoredEulerianPolynomial(Poly(gamma_coefficient(n, i, alpha) for i in range(n)), n, alpha)


def colored_eulerian(n: int, alpha: int, route: str = "closed") -> ColoredEulerianPolynomial:
    builders = {
        "closed": colored_eulerian_closed_form,
        "descents": colored_eulerian_descents,
        "complex": colored_eulerian_from_complex,
        "gamma": colored_eulerian_gamma,
    }
    try:
        return builders[route](n, alpha)
    except KeyError:
        raise ValueError(f"unknown route {route!r}; choose from {ROUTES}") from None


def coefficient_by_descent_sum(n: int, m: int, alpha: int) -> int:
    """Coefficient of t^m via the sum over d(pi) <= m of
    alpha^d (alpha-1)^(m-d) C(n-1-d, m-d)."""
    dist = descent_distribution(n)
    return sum(
        count * alpha**d * (alpha - 1) ** (m - d) * comb(n - 1 - d, m - d)
        for d, count in enumerate(dist)
        if d <= m
    )


# ---------------------------------------------------------------------------
# Recurrence audit
# ---------------------------------------------------------------------------

def printed_bracket(n: int, k: int, alpha: int) -> int:
    return alpha + n - k - 1 + (k - 1) * (alpha - 1) + (alpha - 1) * factorial(alpha - 1)


def amended_bracket(n: int, k: int, alpha: int) -> int:
    return alpha + n - k - 1 + (k - 1) * (alpha - 1) + (alpha - 1)


BRACKETS = {"printed": printed_bracket, "amended": amended_bracket}


def recurrence_step(prev: list[int], n: int, alpha: int, bracket=printed_bracket) -> list[int]:
    """Row n of the three-term recurrence computed from row n-1."""

    def get(k):
        return prev[k] if 0 <= k < len(prev) else 0

    return [
        (k + 1) * get(k)
        + bracket(n, k, alpha) * get(k - 1)
        + (alpha - 1) * (n - k) * get(k - 2)
        for k in range(n)
    ]


@dataclass(frozen=True)
class Discrepancy:
    n: int
    k: int
    printed: int      # recurrence applied to the true row n-1
    oracle: int
    propagated: int   # recurrence iterated from the base row n = 1

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "printed": self.printed,
                "oracle": self.oracle, "propagated": self.propagated}


@dataclass
class DiscrepancyReport:
    alpha: int
    variant: str
    oracle: str
    rows: dict[int, list[int]]
    discrepancies: list[Discrepancy]

    @property
    def first(self) -> Discrepancy | None:
        return self.discrepancies[0] if self.discrepancies else None

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "variant": self.variant,
            "oracle": self.oracle,
            "rows": {str(n): row for n, row in sorted(self.rows.items())},
            "matches": not self.discrepancies,
            "discrepancies": [d.to_json() for d in self.discrepancies],
        }


def colored_eulerian_recurrence(
    n: int,
    alpha: int,
    *,
    n_min: int = 2,
    variant: str = "printed",
    oracle: str = "closed",
) -> tuple[dict[int, list[int]], DiscrepancyReport]:
    """Audit the three-term recurrence for rows n_min..n.

    Each row is checked locally: the recurrence is applied to the oracle's
    row n-1 and compared entrywise with the oracle's row n. The value
    obtained by iterating the recurrence from the base row (1) is recorded
    alongside, since an early error propagates.
    """
    if n < 2 or n_min < 2 or n_min > n:
        raise ValueError("recurrence rows start at n = 2")
    _check(n, alpha)
    bracket = BRACKETS[variant]
    propagated = {1: [1]}
    for m in range(2, n + 1):
        propagated[m] = recurrence_step(propagated[m - 1], m, alpha, bracket)

    truth = {m: colored_eulerian(m, alpha, oracle).coefficients for m in range(n_min - 1, n + 1)}
    rows, bad = {}, []
    for m in range(n_min, n + 1):
        local = recurrence_step(truth[m - 1], m, alpha, bracket)
        rows[m] = local
        for k in range(m):
            if local[k] != truth[m][k]:
                bad.append(Discrepancy(m, k, local[k], truth[m][k], propagated[m][k]))
    return rows, DiscrepancyReport(alpha, variant, oracle, rows, bad)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------

def colored_fubini(n: int, alpha: Number) -> Number:
    """|Q_n^alpha| = sum_k S(n,k) k! alpha^(k-1); alpha may be any nonzero rational."""
    return sum(ordered_partition_count(n, k) * Fraction(alpha) ** (k - 1) for k in range(1, n + 1))


def theorem_main_sides(n: int) -> tuple[Poly, Poly]:
    """Both sides of (a+1)^n A_n(a/(a+1)) = a * |Q_n^a| as polynomials in a.

    The left side is homogenized term by term:
    x^j -> a^j (a+1)^(n-j), which is exact because deg A_n = n.
    """
    a_n = classical_eulerian(n).poly
    a, a_plus_1 = Poly.t(), Poly([1, 1])
    lhs = Poly()
    for j, c in enumerate(a_n.coeffs):
        if c:
            lhs = lhs + c * a**j * a_plus_1 ** (n - j)
    rhs = Poly([0] + [ordered_partition_count(n, k) for k in range(1, n + 1)])
    return lhs, rhs


def verify_theorem_main(n: int) -> bool:
    lhs, rhs = theorem_main_sides(n)
    return lhs == rhs


def verify_fubini_half(n: int) -> bool:
    return 2**n * classical_eulerian(n)(Fraction(1, 2)) == colored_fubini(n, 1)


def verify_power_sum_corollary(n: int, alpha: Number, K: int) -> tuple[Fraction, Fraction, Fraction]:
    """(partial sum to K, exact limit, tail bound) for x = alpha/(alpha+1)."""
    alpha = Fraction(alpha)
    if alpha == 0 or alpha <= Fraction(-1, 2):
        raise ValueError("alpha must be nonzero and greater than -1/2")
    if K < 1:
        raise ValueError("K must be at least 1")
    x = alpha / (alpha + 1)
    lhs = partial_power_sum(n, x, K)
    rhs = (alpha + 1) * alpha * colored_fubini(n, alpha)
    bound = power_sum_tail_bound(n, x, K)
    if bound is None:
        raise ValueError(f"K={K} too small for a geometric tail bound")
    return lhs, rhs, bound


def verify_euler_char_of_Pn(n: int) -> bool:
    """Alternating sum of the permutohedron's face counts by dimension equals 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return sum((-1) ** k * ordered_partition_count(n, n - k) for k in range(n)) == 1


def real_rootedness_report(n: int, alpha: int) -> tuple[bool, int]:
    if n < 2:
        raise ValueError("n must be at least 2")
    p = colored_eulerian_closed_form(n, alpha).poly
    return is_squarefree(p), sturm_count_real_roots(p)


def coefficient_sum_check(n: int, alpha: int) -> bool:
    return colored_eulerian_closed_form(n, alpha).poly(1) == alpha ** (n - 1) * factorial(n)


def log_concavity_check(n: int, alpha: int) -> bool:
    c = colored_eulerian_closed_form(n, alpha).coefficients
    return all(c[k] ** 2 >= c[k - 1] * c[k + 1] for k in range(1, len(c) - 1))
