"""
Permutations in one-line notation, their ascending runs, and pattern occurrences.

A permutation of ``[n] = {1, ..., n}`` is a plain tuple of ints, e.g.
``(1, 3, 9, 2, 7, 8, 4, 5, 6)``.  The empty tuple is the empty permutation.

>>> run_decompose((1, 3, 9, 2, 7, 8, 4, 5, 6)).runs
((1, 3, 9), (2, 7, 8), (4, 5, 6))
>>> is_flattened((1, 3, 9, 2, 7, 8, 4, 5, 6))
True
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Perm", "InvalidPermutation", "DomainError",
    "RunDecomposition", "as_perm", "parse_perm", "format_perm",
    "run_decompose", "runs", "run_lengths", "is_flattened",
    "flatten_set_partition", "standardize", "is_order_isomorphic",
    "contains", "count_occurrences", "patterns_contained", "avoids",
    "is_motzkin_permutation", "inversions",
    "PATTERNS",
]

# a permutation of [n] in one-line notation
Perm = tuple[int, ...]

# the six classical patterns of length three
PATTERNS: tuple[Perm, ...] = ((1, 2, 3), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1))

MAX_N = 20


class InvalidPermutation(ValueError):
    """Raised when a word is not a rearrangement of 1..n."""


class DomainError(ValueError):
    """Raised when a map receives a permutation outside the class it is defined on."""


def as_perm(word: Iterable[int]) -> Perm:
    """Validate ``word`` as a permutation of ``1..len(word)`` and return it as a tuple."""
    p = tuple(int(x) for x in word)
    if len(p) > MAX_N:
        raise InvalidPermutation(f"length {len(p)} exceeds the supported maximum {MAX_N}")
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidPermutation(f"{p!r} is not a permutation of 1..{len(p)}")
    return p


def parse_perm(text: str) -> Perm:
    """
    Parse compact (``"139278456"``) or comma (``"1,3,9,2,7,8,4,5,6"``) form.

    Any text containing a comma, or a single integer, is read in comma form.
    Compact digits are only unambiguous up to n = 9.
    """
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        parts = [s.strip() for s in text.split(",")]
    else:
        parts = list(text)
    try:
        return as_perm(int(s) for s in parts)
    except ValueError as exc:
        if isinstance(exc, InvalidPermutation):
            raise
        raise InvalidPermutation(f"cannot parse {text!r} as a permutation") from exc


def format_perm(p: Sequence[int], style: str = "auto") -> str:
    """Render ``p`` in ``"compact"`` or ``"comma"`` form; ``"auto"`` picks compact for n <= 9."""
    if style == "auto":
        style = "compact" if len(p) <= 9 else "comma"
    if style == "compact":
        if len(p) > 9:
            raise ValueError("compact form is ambiguous for n >= 10")
        return "".join(str(x) for x in p)
    if style == "comma":
        return ",".join(str(x) for x in p)
    raise ValueError(f"unknown style {style!r}")


@dataclass(frozen=True)
class RunDecomposition:
    """Maximal ascending runs of a permutation, left to right."""
    runs: tuple[Perm, ...]

    @property
    def starts(self) -> tuple[int, ...]:
        return tuple(r[0] for r in self.runs)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.runs)

    def word(self) -> Perm:
        return tuple(x for r in self.runs for x in r)

    def __str__(self) -> str:
        style = "compact" if sum(self.lengths) <= 9 else "comma"
        return "|".join(format_perm(r, style) for r in self.runs)


def run_decompose(p: Sequence[int]) -> RunDecomposition:
    """Split ``p`` at every descent."""
    if not p:
        return RunDecomposition(())
    out = []
    current = [p[0]]
    for prev, x in zip(p, p[1:]):
        if x > prev:
            current.append(x)
        else:
            out.append(tuple(current))
            current = [x]
    out.append(tuple(current))
    return RunDecomposition(tuple(out))


def runs(p: Sequence[int]) -> int:
    """Number of maximal ascending runs."""
    if not p:
        return 0
    return 1 + sum(1 for a, b in zip(p, p[1:]) if a > b)


def run_lengths(p: Sequence[int]) -> tuple[int, ...]:
    return run_decompose(p).lengths


def is_flattened(p: Sequence[int]) -> bool:
    """True iff the starting points of the runs of ``p`` strictly increase."""
    last_start = 0
    for i, x in enumerate(p):
        if i == 0 or x < p[i - 1]:
            if x <= last_start:
                return False
            last_start = x
    return True


def flatten_set_partition(blocks: Iterable[Iterable[int]]) -> Perm:
    """
    Sort each block, order blocks by their minima, and concatenate.

    >>> flatten_set_partition([{1, 3, 9}, {4, 5, 6}, {2, 7, 8}])
    (1, 3, 9, 2, 7, 8, 4, 5, 6)
    """
    bs = [sorted(b) for b in blocks]
    if any(not b for b in bs):
        raise ValueError("set partition has an empty block")
    word = [x for b in sorted(bs, key=lambda b: b[0]) for x in b]
    if sorted(word) != list(range(1, len(word) + 1)):
        raise ValueError("blocks must be disjoint with union {1..n}")
    return tuple(word)


def standardize(w: Sequence[int]) -> Perm:
    """Replace each entry of a word of distinct integers by its rank (1-based)."""
    if len(set(w)) != len(w):
        raise ValueError(f"word {tuple(w)!r} has repeated entries")
    rank = {x: i for i, x in enumerate(sorted(w), 1)}
    return tuple(rank[x] for x in w)


def is_order_isomorphic(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    return all(
        (a[i] < a[j]) == (b[i] < b[j])
        for i in range(len(a)) for j in range(i + 1, len(a))
    )


def contains(p: Sequence[int], t: Sequence[int]) -> bool:
    """True iff some subsequence of ``p`` is order-isomorphic to ``t``."""
    return any(is_order_isomorphic(c, t) for c in combinations(p, len(t)))


def count_occurrences(p: Sequence[int], t: Sequence[int]) -> int:
    """Number of index sets of ``p`` whose subsequence is order-isomorphic to ``t``."""
    return sum(1 for c in combinations(p, len(t)) if is_order_isomorphic(c, t))


def patterns_contained(p: Sequence[int], k: int = 3) -> frozenset[Perm]:
    """All patterns of length ``k`` occurring in ``p``, in one pass over k-subsets."""
    return frozenset(standardize(c) for c in combinations(p, k))


def avoids(p: Sequence[int], patterns: Iterable[Sequence[int]]) -> bool:
    return not any(contains(p, t) for t in patterns)


def is_motzkin_permutation(p: Sequence[int]) -> bool:
    """
    132-avoiding, and no ``i < j`` with ``p[i] < p[j] < p[j+1]``.

    The second condition is a generalized pattern where the last two letters
    must be adjacent.
    """
    n = len(p)
    for j in range(1, n - 1):
        if p[j] < p[j + 1] and any(p[i] < p[j] for i in range(j)):
            return False
    return not contains(p, (1, 3, 2))


def inversions(p: Sequence[int]) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
