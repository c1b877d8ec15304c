"""Exact integer/rational arithmetic: dense polynomials, truncated series,
combinatorial number tables and Sturm-chain root counting.

Integers are Python ints and rationals are :class:`fractions.Fraction`, so
nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _frac(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Number tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_row(n - 1) + (0,)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = k * prev[k] + prev[k - 1]
    return tuple(row)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k) via the triangle recurrence."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 takes nonnegative arguments")
    if k > n:
        return 0
    return _stirling_row(n)[k]


def multinomial(parts: Iterable[int]) -> int:
    """n! / (c_1! ... c_k!) for a composition with positive parts."""
    parts = tuple(parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"multinomial needs positive parts, got {parts}")
    result, total = 1, 0
    for p in parts:
        total += p
        result *= comb(total, p)
    return result


def ordered_partition_count(n: int, k: int) -> int:
    """Number of ordered set partitions of [n] into k blocks, S(n,k)*k!."""
    return stirling2(n, k) * factorial(k)


# ---------------------------------------------------------------------------
# Dense polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Immutable dense univariate polynomial with rational coefficients.

    ``coeffs[i]`` is the coefficient of t**i. Trailing zeros are stripped, so
    the zero polynomial has no coefficients and ``degree`` None.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def int_coeffs(self) -> list[int]:
        """Coefficients as ints; raises if any is not integral."""
        out = []
        for c in self.coeffs:
            if c.denominator != 1:
                raise ValueError(f"non-integral coefficient {c}")
            out.append(c.numerator)
        return out

    # arithmetic -----------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation; ``x`` may be a number or another Poly."""
        acc = Poly() if isinstance(x, Poly) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = len(other.coeffs) - 1
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dg, 0)
        for i in range(len(rem) - 1, dg - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dg] = c
                for j, b in enumerate(other.coeffs):
                    rem[i - dg + j] -= c * b
        return Poly(quot), Poly(rem[:dg])

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        return Poly([c / self.leading() for c in self.coeffs])

    def scale_argument(self, a: Number) -> "Poly":
        """p(a*t)."""
        a = _frac(a)
        return Poly([c * a**i for i, c in enumerate(self.coeffs)])

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        return cls(Fraction(num, den) for num, den in obj["coeffs"])

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        return f"Poly({[str(c) for c in self.coeffs]})"

    def pretty(self, var: str = "t", descending: bool = False) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and c == 1:
                s = mono
            elif mono and c == -1:
                s = "-" + mono
            else:
                s = f"{c}{mono}"
            terms.append(s)
        if descending:
            terms.reverse()
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_shift(p: Poly, a: Number) -> Poly:
    """q(t) = p(t + a), via repeated synthetic division (Taylor shift)."""
    a = _frac(a)
    cs = list(p.coeffs)
    n = len(cs)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            cs[j] += a * cs[j + 1]
    return Poly(cs)


def poly_reverse(p: Poly, d: int) -> Poly:
    """t**d * p(1/t)."""
    if d < 0:
        raise ValueError("reversal degree must be nonnegative")
    if p.degree is not None and p.degree > d:
        raise ValueError(f"cannot reverse degree {p.degree} polynomial in degree {d}")
    cs = [p[d - i] for i in range(d + 1)]
    return Poly(cs)


def f_to_h(f: Poly, n: int) -> Poly:
    """h(t) = (1-t)^(n-1) f(t/(1-t)) for an f-polynomial indexed by codimension.

    ``f`` has the number of faces with b blocks at exponent b-1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if f.degree is not None and f.degree > n - 1:
        raise ValueError(f"f has degree {f.degree} > n-1 = {n - 1}")
    one_minus_t = Poly([1, -1])
    t = Poly.t()
    h = Poly()
    for k, c in enumerate(f.coeffs):
        if c:
            h = h + c * t**k * one_minus_t ** (n - 1 - k)
    return h


# ---------------------------------------------------------------------------
# Real roots
# ---------------------------------------------------------------------------

def sturm_chain(p: Poly) -> list[Poly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        chain.append(-(chain[-2] % chain[-1]))
    return chain[:-1]


def _sign_variations(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: Poly) -> Fraction:
    """Every complex root of p has modulus strictly less than this value."""
    lead = p.leading()
    return 1 + max((abs(c / lead) for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_count_real_roots(p: Poly) -> int:
    """Number of distinct real roots of a nonzero polynomial."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    chain = sturm_chain(p)
    m = cauchy_bound(p)
    return _sign_variations([q(-m) for q in chain]) - _sign_variations([q(m) for q in chain])


def is_squarefree(p: Poly) -> bool:
    if p.is_zero():
        raise ValueError("zero polynomial")
    return poly_gcd(p, p.derivative()).degree == 0


# ---------------------------------------------------------------------------
# Truncated power series
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Power series modulo x^(N+1) with exact rational coefficients."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Number], order: int):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = [_frac(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise ValueError("series truncated at different orders")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries((a + b for a, b in zip(self.coeffs, other.coeffs)), self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries((c * other for c in self.coeffs), self.order)
        self._check(other)
        N = self.order
        out = [Fraction(0)] * (N + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, N)

    __rmul__ = __mul__

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner(x)); inner must have zero constant term."""
        self._check(inner)
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        acc = TruncatedSeries([0], self.order)
        for c in reversed(self.coeffs):
            acc = acc * inner + TruncatedSeries([c], self.order)
        return acc

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and (self.order, self.coeffs) == (other.order, other.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coeffs]}, order={self.order})"


def exp_minus_one(N: int) -> TruncatedSeries:
    return TruncatedSeries([0] + [Fraction(1, factorial(k)) for k in range(1, N + 1)], N)


def egf_colored_fubini(alpha: int, N: int) -> TruncatedSeries:
    """(e^x - 1) / (1 - alpha (e^x - 1)) modulo x^(N+1).

    Built as the composition of x/(1 - alpha x) with e^x - 1.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if alpha < 1:
        raise ValueError("alpha must be a positive integer")
    outer = TruncatedSeries([0] + [alpha ** (m - 1) for m in range(1, N + 1)], N)
    return outer.compose(exp_minus_one(N))


def partial_power_sum(n: int, x: Number, K: int) -> Fraction:
    """sum_{k=0}^{K} k^n x^k, with 0^0 = 1."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    x = _frac(x)
    total = Fraction(0)
    xk = Fraction(1)
    for k in range(K + 1):
        total += (k**n if k or n else 1) * xk
        xk *= x
    return total


def power_sum_tail_bound(n: int, x: Number, K: int) -> Fraction | None:
    """Upper bound on |sum_{k>K} k^n x^k|, or None if not yet geometric.

    For k > K the ratio of consecutive terms is at most
    rho = ((K+2)/(K+1))^n |x|; when rho < 1 the tail is dominated by a
    geometric series starting at the (K+1)-th term.
    """
    ax = abs(_frac(x))
    if ax >= 1:
        raise ValueError("power sum diverges for |x| >= 1")
    rho = Fraction(K + 2, K + 1) ** n * ax
    if rho >= 1:
        return None
    return Fraction(K + 1) ** n * ax ** (K + 1) / (1 - rho)


def truncation_for(n: int, x: Number, eps: Number) -> int:
    """Smallest K whose geometric tail bound is at most eps."""
    eps = _frac(eps)
    K = 0
    while True:
        b = power_sum_tail_bound(n, x, K)
        if b is not None and b <= eps:
            return K
        K += 1
