"""Compositions, colored ordered set partitions and colored permutations.

Labels are 1..n. Colors are integers 0..alpha-1 and the last block (or last
letter) always carries color 0, which plays the role of the fixed color.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterator, NamedTuple, Sequence

Permutation = tuple[int, ...]


# ---------------------------------------------------------------------------
# Compositions and descents
# ---------------------------------------------------------------------------

class Composition(tuple):
    """An ordered tuple of positive parts. ``n`` is the sum."""

    def __new__(cls, parts: Sequence[int]):
        parts = tuple(parts)
        if not parts or any(not isinstance(p, int) or p < 1 for p in parts):
            raise ValueError(f"not a composition: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def breaks(self) -> frozenset[int]:
        """Partial sums strictly below n (the descent set this composition encodes)."""
        out, s = [], 0
        for p in self[:-1]:
            s += p
            out.append(s)
        return frozenset(out)

    @classmethod
    def from_breaks(cls, breaks, n: int) -> "Composition":
        cuts = sorted(breaks)
        if any(not 1 <= c <= n - 1 for c in cuts):
            raise ValueError(f"break positions must lie in 1..{n - 1}")
        edges = [0] + cuts + [n]
        return cls([b - a for a, b in zip(edges, edges[1:])])

    def __repr__(self):
        return f"Composition{tuple(self)}"


def compositions_of(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, ordered by break bitmask."""
    if n < 1:
        raise ValueError("n must be at least 1")
    for mask in range(1 << (n - 1)):
        yield Composition.from_breaks([i + 1 for i in range(n - 1) if mask >> i & 1], n)


def refines(c: Composition, d: Composition) -> bool:
    """True iff c <= d in Comp(n), i.e. d arises from c by merging adjacent parts."""
    if c.n != d.n:
        raise ValueError(f"compositions of different sizes: {c.n} vs {d.n}")
    return d.breaks() <= c.breaks()


def lower_ideal(c: Composition) -> Iterator[Composition]:
    """Every composition below c, i.e. every refinement of c."""
    n = c.n
    extra = sorted(set(range(1, n)) - c.breaks())
    base = c.breaks()
    for r in range(len(extra) + 1):
        for add in combinations(extra, r):
            yield Composition.from_breaks(base | set(add), n)


def check_permutation(pi: Sequence[int]) -> Permutation:
    pi = tuple(pi)
    if sorted(pi) != list(range(1, len(pi) + 1)):
        raise ValueError(f"not a permutation of 1..{len(pi)}: {pi}")
    return pi


def descent_set(pi: Sequence[int]) -> frozenset[int]:
    return frozenset(i + 1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def descent_count(pi: Sequence[int]) -> int:
    return sum(1 for i in range(len(pi) - 1) if pi[i] > pi[i + 1])


def descent_composition(pi: Sequence[int]) -> Composition:
    pi = check_permutation(pi)
    return Composition.from_breaks(descent_set(pi), len(pi))


# ---------------------------------------------------------------------------
# Colored ordered set partitions
# ---------------------------------------------------------------------------

class ColoredOrderedSetPartition(NamedTuple):
    """Element of Q_n^alpha: blocks are sorted tuples, one color per block."""

    blocks: tuple[tuple[int, ...], ...]
    colors: tuple[int, ...]
    alpha: int

    @classmethod
    def make(cls, blocks, colors, alpha: int) -> "ColoredOrderedSetPartition":
        """Validating constructor. The enumerators bypass it for speed."""
        blocks = tuple(tuple(sorted(b)) for b in blocks)
        colors = tuple(colors)
        if alpha < 1:
            raise ValueError("alpha must be at least 1")
        if not blocks or any(not b for b in blocks):
            raise ValueError("blocks must be nonempty")
        labels = sorted(x for b in blocks for x in b)
        if labels != list(range(1, len(labels) + 1)):
            raise ValueError(f"blocks do not partition 1..{len(labels)}")
        if len(colors) != len(blocks):
            raise ValueError("need exactly one color per block")
        if any(not 0 <= c < alpha for c in colors):
            raise ValueError(f"colors must lie in 0..{alpha - 1}")
        if colors[-1] != 0:
            raise ValueError("the last block must carry the fixed color 0")
        return cls(blocks, colors, alpha)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def rank(self) -> int:
        return self.n - len(self.blocks)

    def to_json(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks], "colors": list(self.colors), "alpha": self.alpha}

    @classmethod
    def from_json(cls, obj: dict) -> "ColoredOrderedSetPartition":
        return cls.make(obj["blocks"], obj["colors"], obj["alpha"])


def ordered_set_partitions_of(labels: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Ordered set partitions of ``labels``; first block in lexicographic order."""
    if not labels:
        yield ()
        return
    firsts = sorted(
        sub for r in range(1, len(labels) + 1) for sub in combinations(labels, r)
    )
    for first in firsts:
        chosen = set(first)
        rest = tuple(x for x in labels if x not in chosen)
        for tail in ordered_set_partitions_of(rest):
            yield (first,) + tail


def ordered_set_partitions(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Uncolored ordered set partitions of [n] (elements of Q_n)."""
    return ordered_set_partitions_of(tuple(range(1, n + 1)))


def _check_params(n: int, alpha: int):
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if alpha < 1:
        raise ValueError(f"alpha must be at least 1, got {alpha}")


def enumerate_Q(n: int, alpha: int) -> Iterator[ColoredOrderedSetPartition]:
    """Every element of Q_n^alpha exactly once, in a fixed order."""
    _check_params(n, alpha)
    color_range = range(alpha)
    make = ColoredOrderedSetPartition
    for blocks in ordered_set_partitions(n):
        for head in product(color_range, repeat=len(blocks) - 1):
            yield make(blocks, head + (0,), alpha)


def type_of(tau: ColoredOrderedSetPartition) -> Composition:
    return Composition([len(b) for b in tau.blocks])


def is_alternating(tau: ColoredOrderedSetPartition) -> bool:
    c = tau.colors
    return all(c[i] != c[i + 1] for i in range(len(c) - 1))


def upper_covers(tau: ColoredOrderedSetPartition) -> Iterator[ColoredOrderedSetPartition]:
    """Elements obtained by merging one adjacent same-colored pair."""
    b, c = tau.blocks, tau.colors
    for i in range(len(b) - 1):
        if c[i] == c[i + 1]:
            merged = tuple(sorted(b[i] + b[i + 1]))
            yield ColoredOrderedSetPartition(b[:i] + (merged,) + b[i + 2:], c[:i] + c[i + 1:], tau.alpha)


def covers_in_Q(tau: ColoredOrderedSetPartition, sigma: ColoredOrderedSetPartition) -> bool:
    """True iff sigma covers tau in Q_n^alpha."""
    if tau.alpha != sigma.alpha or tau.n != sigma.n:
        raise ValueError("elements come from different posets")
    if len(sigma.blocks) != len(tau.blocks) - 1:
        return False
    return any(s == sigma for s in upper_covers(tau))


def maximal_element_above(tau: ColoredOrderedSetPartition) -> ColoredOrderedSetPartition:
    """Merge every maximal run of equal colors; the unique alternating element above tau."""
    blocks, colors = [], []
    for b, c in zip(tau.blocks, tau.colors):
        if colors and colors[-1] == c:
            blocks[-1] = blocks[-1] + b
        else:
            blocks.append(b)
            colors.append(c)
    return ColoredOrderedSetPartition(tuple(tuple(sorted(b)) for b in blocks), tuple(colors), tau.alpha)


def forget_map(tau: ColoredOrderedSetPartition) -> Permutation:
    """Concatenate the (already sorted) blocks into a one-line permutation."""
    return tuple(x for b in tau.blocks for x in b)


def fiber_size(pi: Sequence[int], alpha: int) -> int:
    """Number of elements of Q_n^alpha that forget to pi."""
    pi = check_permutation(pi)
    d = descent_count(pi)
    return (alpha + 1) ** (len(pi) - d - 1) * alpha**d


def alternating_fiber_size(pi: Sequence[int], alpha: int) -> int:
    """Number of alternating elements of Q_n^alpha that forget to pi."""
    pi = check_permutation(pi)
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    # 0**0 == 1 keeps the alpha = 1 case (single block only) correct
    return sum((alpha - 1) ** (len(c) - 1) for c in lower_ideal(descent_composition(pi)))


# ---------------------------------------------------------------------------
# Colored permutations
# ---------------------------------------------------------------------------

class ColoredPermutation(NamedTuple):
    word: Permutation
    colors: tuple[int, ...]
    alpha: int

    @classmethod
    def make(cls, word, colors, alpha: int) -> "ColoredPermutation":
        word = check_permutation(word)
        colors = tuple(colors)
        if alpha < 1:
            raise ValueError("alpha must be at least 1")
        if len(colors) != len(word):
            raise ValueError("need exactly one color per letter")
        if any(not 0 <= c < alpha for c in colors):
            raise ValueError(f"colors must lie in 0..{alpha - 1}")
        if colors[-1] != 0:
            raise ValueError("the last letter must carry the fixed color 0")
        return cls(word, colors, alpha)

    @property
    def n(self) -> int:
        return len(self.word)

    def to_json(self) -> dict:
        return {"word": list(self.word), "colors": list(self.colors), "alpha": self.alpha}

    @classmethod
    def from_json(cls, obj: dict) -> "ColoredPermutation":
        return cls.make(obj["word"], obj["colors"], obj["alpha"])


def enumerate_colored_permutations(n: int, alpha: int) -> Iterator[ColoredPermutation]:
    _check_params(n, alpha)
    heads = list(product(range(alpha), repeat=n - 1))
    for word in permutations(range(1, n + 1)):
        for head in heads:
            yield ColoredPermutation(word, head + (0,), alpha)


def colored_descent_set(tau: ColoredPermutation) -> frozenset[int]:
    """Positions with a word descent or a color change (each counted once)."""
    w, c = tau.word, tau.colors
    return frozenset(i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1] or c[i] != c[i + 1])
