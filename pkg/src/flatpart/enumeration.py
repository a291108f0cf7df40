"""
Generating and counting flattened partitions that avoid sets of patterns.

Three independent routes are provided and cross-checked in the test suite:

* ``brute_avoiding`` filters all ``n!`` permutations through the definitions;
* ``enumerate_avoiding`` builds words left to right, keeping only prefixes that
  can still be flattened and that contain no pattern occurrence;
* ``count_avoiding`` (method ``"direct"``) counts without listing, by memoizing
  on a standardized summary of the prefix.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from functools import cache
from itertools import combinations, permutations
from typing import Iterable, Iterator, Sequence

from .core import (
    PATTERNS, DomainError, Perm, avoids, format_perm, is_flattened,
    is_order_isomorphic, patterns_contained, run_decompose,
)

__all__ = [
    "BRUTE_MAX", "DIRECT_MAX", "GuardError",
    "PatternSet", "parse_patterns", "pattern_key", "all_pattern_sets",
    "all_permutations", "all_flattened", "enumerate_avoiding", "brute_avoiding",
    "avoiding_permutations", "motzkin_permutations", "count_avoiding",
    "CountTable", "build_table",
    "PQDecomposition", "decompose_213", "compose_213",
    "SplitAtMax", "split_at_max", "first_run_length_table",
]

BRUTE_MAX = 10
DIRECT_MAX = 16

PatternSet = tuple[Perm, ...]


class GuardError(ValueError):
    """Raised when ``n`` is outside the range a routine is allowed to run on."""


def _guard(n: int, lo: int, hi: int) -> None:
    if not lo <= n <= hi:
        raise GuardError(f"n={n} outside the allowed range {lo}..{hi}")


def pattern_key(ps: Iterable[Sequence[int]]) -> str:
    """Canonical spelling of a pattern set, e.g. ``"213+231"``; ``"none"`` if empty."""
    words = sorted(format_perm(t) for t in canonical_patterns(ps))
    return "+".join(words) if words else "none"


def canonical_patterns(ps: Iterable[Sequence[int]]) -> PatternSet:
    out = tuple(sorted({tuple(t) for t in ps}))
    if len(out) > 2:
        raise ValueError("at most two patterns are supported")
    for t in out:
        if sorted(t) != list(range(1, len(t) + 1)):
            raise ValueError(f"{t!r} is not a pattern")
    return out


def parse_patterns(text: str) -> PatternSet:
    """``"231,213"`` -> ``((2, 1, 3), (2, 3, 1))``.  Empty text or ``"none"`` is the empty set."""
    text = text.strip()
    if not text or text == "none":
        return ()
    words = [w.strip() for w in text.replace("+", ",").split(",")]
    if len(set(words)) != len(words):
        raise ValueError(f"repeated pattern in {text!r}")
    return canonical_patterns(tuple(int(c) for c in w) for w in words)


def all_pattern_sets() -> list[PatternSet]:
    """The 6 single patterns followed by the 15 pairs, in lexicographic order."""
    return [(t,) for t in PATTERNS] + [pair for pair in combinations(PATTERNS, 2)]


def all_permutations(n: int, limit: int = BRUTE_MAX) -> Iterator[Perm]:
    _guard(n, 1, limit)
    return permutations(range(1, n + 1))


def brute_avoiding(n: int, ps: Iterable[Sequence[int]] = (), flattened: bool = True,
                   limit: int = BRUTE_MAX) -> Iterator[Perm]:
    """Definitional filter over all permutations of ``[n]``."""
    ps = canonical_patterns(ps)
    for p in all_permutations(n, limit):
        if flattened and not is_flattened(p):
            continue
        if avoids(p, ps):
            yield p


def _completes_occurrence(patterns: PatternSet):
    """Return ``f(word, v)``: does appending ``v`` to ``word`` create an occurrence?"""
    checks = []
    for t in patterns:
        if len(t) == 3:
            up01, up02, up12 = t[0] < t[1], t[0] < t[2], t[1] < t[2]

            def check3(word, v, up01=up01, up02=up02, up12=up12):
                n = len(word)
                for j in range(1, n):
                    b = word[j]
                    if (b < v) != up12:
                        continue
                    for i in range(j):
                        a = word[i]
                        if (a < b) == up01 and (a < v) == up02:
                            return True
                return False
            checks.append(check3)
        else:
            def check(word, v, t=t):
                return any(is_order_isomorphic(c + (v,), t)
                           for c in combinations(word, len(t) - 1))
            checks.append(check)
    return lambda word, v: any(c(word, v) for c in checks)


def _generate(n: int, patterns: PatternSet, flattened: bool) -> Iterator[Perm]:
    completes = _completes_occurrence(patterns)
    word: list[int] = []
    unused = list(range(1, n + 1))  # kept sorted

    def rec() -> Iterator[Perm]:
        if not unused:
            yield tuple(word)
            return
        for idx, v in enumerate(list(unused)):
            if flattened:
                # a descent must land on the smallest unused value
                if not word:
                    if idx != 0:
                        break
                elif v < word[-1] and idx != 0:
                    continue
            if patterns and completes(word, v):
                continue
            word.append(v)
            del unused[idx]
            yield from rec()
            unused.insert(idx, v)
            word.pop()

    return rec()


def all_flattened(n: int, limit: int = DIRECT_MAX) -> Iterator[Perm]:
    """Flattened partitions of ``[n]`` in lexicographic order, built run by run."""
    _guard(n, 1, limit)
    return _generate(n, (), True)


def enumerate_avoiding(n: int, ps: Iterable[Sequence[int]] = (),
                       limit: int = DIRECT_MAX) -> Iterator[Perm]:
    """Flattened partitions of ``[n]`` avoiding every pattern in ``ps``, in lexicographic order."""
    _guard(n, 1, limit)
    return _generate(n, canonical_patterns(ps), True)


def avoiding_permutations(n: int, ps: Iterable[Sequence[int]] = (),
                          limit: int = DIRECT_MAX) -> Iterator[Perm]:
    """All permutations of ``[n]`` (flattened or not) avoiding ``ps``.  ``n = 0`` yields ``()``."""
    _guard(n, 0, limit)
    return _generate(n, canonical_patterns(ps), False)


def motzkin_permutations(n: int, limit: int = DIRECT_MAX) -> Iterator[Perm]:
    """132-avoiding permutations of ``[n]`` with no ``i < j``, ``p[i] < p[j] < p[j+1]``."""
    for p in avoiding_permutations(n, [(1, 3, 2)], limit):
        if not any(p[j] < p[j + 1] and min(p[:j]) < p[j] for j in range(1, n - 1)):
            yield p


def _transfer_counter(patterns: PatternSet, flattened: bool):
    # State after placing a prefix, with the m unused values relabelled 0..m-1:
    #   gaps: bitmask of the gaps 0..m (gap g lies between unused g-1 and g)
    #         holding at least one placed value
    #   forb: bitmask of unused values that would complete an occurrence
    #         together with two placed values
    #   last: gap of the last placed value, -1 for the empty prefix
    shapes = [(t[0] < t[1], t[0] < t[2], t[1] < t[2]) for t in patterns]

    @cache
    def count(m: int, gaps: int, forb: int, last: int) -> int:
        if m == 0:
            return 1
        total = 0
        gap_list = [g for g in range(m + 1) if gaps >> g & 1]
        for i in range(m):
            if forb >> i & 1:
                continue
            if flattened:
                if last < 0:
                    if i != 0:
                        break
                elif i < last and i != 0:
                    continue
            new_forb = 0
            for j in range(m):
                if j == i:
                    continue
                bad = bool(forb >> j & 1)
                if not bad:
                    up12 = i < j
                    for g in gap_list:
                        key = (g <= i, g <= j, up12)
                        if key in shapes:
                            bad = True
                            break
                if bad:
                    new_forb |= 1 << (j if j < i else j - 1)
            new_gaps = 1 << i
            for g in gap_list:
                new_gaps |= 1 << (g if g <= i else g - 1)
            total += count(m - 1, new_gaps, new_forb, i)
        return total

    return count


_counters: dict[tuple[PatternSet, bool], object] = {}


def _memo_count(n: int, patterns: PatternSet, flattened: bool = True) -> int:
    key = (patterns, flattened)
    if key not in _counters:
        _counters[key] = _transfer_counter(patterns, flattened)
    return _counters[key](n, 0, 0, -1)


def count_avoiding(n: int, ps: Iterable[Sequence[int]] = (), method: str = "direct",
                   limit: int | None = None) -> int:
    """
    ``|F(n; ps)|``, the number of flattened partitions of ``[n]`` avoiding ``ps``.

    ``method`` is ``"direct"`` (memoized counting, falling back to the generator
    for patterns longer than three), ``"enumerate"`` (length of the generator
    output) or ``"brute"`` (filter over all permutations).
    """
    ps = canonical_patterns(ps)
    if method == "brute":
        return sum(1 for _ in brute_avoiding(n, ps, limit=limit or BRUTE_MAX))
    _guard(n, 1, limit or DIRECT_MAX)
    if method == "direct" and all(len(t) == 3 for t in ps):
        return _memo_count(n, ps)
    if method in ("direct", "enumerate"):
        return sum(1 for _ in _generate(n, ps, True))
    raise ValueError(f"unknown method {method!r}")


@dataclass
class CountTable:
    """
    Exact counts keyed by ``(n, pattern_key)``, each with the methods that produced it.

    Adding a cell under a second method must reproduce the first value.
    """
    entries: dict[tuple[int, str], int] = field(default_factory=dict)
    methods: dict[tuple[int, str], set[str]] = field(default_factory=dict)

    def add(self, n: int, ps: Iterable[Sequence[int]] | str, count: int, method: str) -> None:
        key = ps if isinstance(ps, str) else pattern_key(ps)
        cell = (n, key)
        if cell in self.entries and self.entries[cell] != count:
            raise ValueError(
                f"disagreement at n={n}, {key}: {self.entries[cell]} "
                f"({','.join(sorted(self.methods[cell]))}) vs {count} ({method})")
        self.entries[cell] = count
        self.methods.setdefault(cell, set()).add(method)

    def merge(self, other: CountTable) -> CountTable:
        out = CountTable()
        for table in (self, other):
            for cell, count in table.entries.items():
                for method in table.methods[cell]:
                    out.add(cell[0], cell[1], count, method)
        return out

    def get(self, n: int, ps: Iterable[Sequence[int]] | str) -> int:
        key = ps if isinstance(ps, str) else pattern_key(ps)
        return self.entries[(n, key)]

    def row(self, ps: Iterable[Sequence[int]] | str) -> list[int]:
        key = ps if isinstance(ps, str) else pattern_key(ps)
        return [c for (n, k), c in sorted(self.entries.items()) if k == key]

    def _keys(self) -> list[str]:
        order = {pattern_key(ps): i for i, ps in enumerate(all_pattern_sets())}
        keys = {k for _, k in self.entries}
        return sorted(keys, key=lambda k: (order.get(k, len(order)), k))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "patterns", "count", "method"])
        for key in self._keys():
            for n in sorted(n for n, k in self.entries if k == key):
                for method in sorted(self.methods[(n, key)]):
                    writer.writerow([n, key, self.entries[(n, key)], method])
        return buf.getvalue()

    def to_json(self) -> str:
        data = {}
        for key in self._keys():
            data[key] = {
                str(n): {"count": self.entries[(n, key)],
                         "method": "+".join(sorted(self.methods[(n, key)]))}
                for n in sorted(n for n, k in self.entries if k == key)
            }
        return json.dumps(data, indent=2)


def build_table(n_max: int, methods: Sequence[str] = ("direct",),
                pattern_sets: Sequence[PatternSet] | None = None) -> CountTable:
    """Counts for every pattern set and ``1 <= n <= n_max`` under each requested method."""
    from .series import closed_form_count

    if pattern_sets is None:
        pattern_sets = all_pattern_sets()
    for method in methods:
        if method == "brute":
            _guard(n_max, 1, BRUTE_MAX)
        else:
            _guard(n_max, 1, DIRECT_MAX)
    table = CountTable()
    for method in methods:
        if method == "brute":
            # one pass over all permutations classifies every pattern set at once
            for n in range(1, n_max + 1):
                tallies = dict.fromkeys(pattern_sets, 0)
                for p in all_permutations(n):
                    if not is_flattened(p):
                        continue
                    present = patterns_contained(p)
                    for ps in pattern_sets:
                        if not any(t in present for t in ps):
                            tallies[ps] += 1
                for ps, c in tallies.items():
                    table.add(n, ps, c, "brute")
        elif method == "closed-form":
            for ps in pattern_sets:
                for n in range(1, n_max + 1):
                    c = closed_form_count(n, ps)
                    if c is not None:
                        table.add(n, ps, c, "closed-form")
        else:
            for ps in pattern_sets:
                for n in range(1, n_max + 1):
                    table.add(n, ps, count_avoiding(n, ps, method="direct"), "direct")
    return table


@dataclass(frozen=True)
class PQDecomposition:
    """
    A 213-avoiding flattened partition written as ``p1 q1 | p2 q2 | ... | pr``.

    Reading ``p1 p2 ... pr`` and then ``q_{r-1} ... q1`` spells ``1 2 ... n``.
    """
    p_words: tuple[Perm, ...]
    q_words: tuple[Perm, ...]

    def compose(self) -> Perm:
        out: list[int] = []
        for i, p in enumerate(self.p_words):
            out.extend(p)
            if i < len(self.q_words):
                out.extend(self.q_words[i])
        return tuple(out)

    def identity_word(self) -> Perm:
        return tuple(x for w in self.p_words + self.q_words[::-1] for x in w)

    def cuts(self) -> frozenset[int]:
        """Gap positions (1..n-1) separating consecutive blocks of ``identity_word``."""
        out, pos = set(), 0
        for w in (self.p_words + self.q_words[::-1])[:-1]:
            pos += len(w)
            out.add(pos)
        return frozenset(out)


def _check_in_class(p: Sequence[int], ps: PatternSet, what: str) -> None:
    if not p or not is_flattened(p) or not avoids(p, ps):
        raise DomainError(f"{tuple(p)!r} is not in {what}")


def decompose_213(p: Sequence[int]) -> PQDecomposition:
    """Recover the p/q words of a 213-avoiding flattened partition."""
    p = tuple(p)
    _check_in_class(p, ((2, 1, 3),), "F(n; 213)")
    p_words: list[Perm] = []
    q_words: list[Perm] = []
    offset = 0
    rest = p
    while True:
        first = run_decompose(rest).runs[0]
        if len(first) == len(rest):
            p_words.append(tuple(x + offset for x in rest))
            break
        k = 0
        while k < len(first) and first[k] == k + 1:
            k += 1
        p_words.append(tuple(x + offset for x in first[:k]))
        q_words.append(tuple(x + offset for x in first[k:]))
        offset += k
        rest = tuple(x - k for x in rest[len(first):])
    return PQDecomposition(tuple(p_words), tuple(q_words))


def compose_213(n: int, cuts: Iterable[int]) -> Perm:
    """
    Cut ``1 2 ... n`` at an even number of gaps into ``p1..pr, q_{r-1}..q1``
    and interleave them as ``p1 q1 p2 q2 ... p_{r-1} q_{r-1} pr``.

    >>> compose_213(8, {2, 3, 5, 6})
    (1, 2, 7, 8, 3, 6, 4, 5)
    """
    cuts = sorted(set(cuts))
    if n < 1:
        raise ValueError("n must be positive")
    if any(not 1 <= c <= n - 1 for c in cuts):
        raise ValueError(f"cut positions must lie in 1..{n - 1}")
    if len(cuts) % 2:
        raise ValueError("the number of cuts must be even")
    bounds = [0] + cuts + [n]
    blocks = [tuple(range(a + 1, b + 1)) for a, b in zip(bounds, bounds[1:])]
    r = (len(blocks) + 1) // 2
    return PQDecomposition(tuple(blocks[:r]), tuple(blocks[r:][::-1])).compose()


@dataclass(frozen=True)
class SplitAtMax:
    k: int
    left: Perm
    right: Perm


def split_at_max(p: Sequence[int]) -> SplitAtMax:
    """
    Split a 231-avoiding flattened partition around its largest entry.

    Everything left of ``n`` is below ``k`` (the position of ``n``) and
    everything right of it is at least ``k``.
    """
    p = tuple(p)
    _check_in_class(p, ((2, 3, 1),), "F(n; 231)")
    n = len(p)
    if n < 2:
        raise DomainError("n must be at least 2")
    k = p.index(n) + 1
    left, right = p[:k - 1], p[k:]
    if any(x >= k for x in left) or any(x < k for x in right):
        raise AssertionError(f"split of {p!r} at position {k} is not separating")
    return SplitAtMax(k, left, tuple(x - (k - 1) for x in right))


def first_run_length_table(n: int, limit: int = DIRECT_MAX) -> dict[int, int]:
    """Number of (213, 231)-avoiding flattened partitions of ``[n]`` by first-run length ``1..n``."""
    _guard(n, 2, limit)
    table = dict.fromkeys(range(1, n + 1), 0)
    for p in enumerate_avoiding(n, [(2, 1, 3), (2, 3, 1)], limit):
        table[run_decompose(p).lengths[0]] += 1
    return table
