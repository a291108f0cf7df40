"""
Invertible maps between pattern classes, and extensional certificates for them.

Every map checks that its argument lies in the class it is defined on and
raises ``DomainError`` otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .core import (
    DomainError, Perm, avoids, format_perm, inversions, is_flattened,
    is_motzkin_permutation, run_decompose, run_lengths, runs, standardize,
)
from .enumeration import (
    DIRECT_MAX, GuardError, avoiding_permutations, enumerate_avoiding,
    motzkin_permutations,
)

__all__ = [
    "f_312_to_213", "g_213_to_312", "swap23", "h_321", "h_inverse_321",
    "alpha_motzkin", "alpha_inverse", "fixed_points_of_f",
    "BijectionCertificate", "MAPS", "certify",
]

P213 = ((2, 1, 3),)
P312 = ((3, 1, 2),)
P321 = ((3, 2, 1),)
P231 = ((2, 3, 1),)


def _require(p: Sequence[int], flattened: bool, ps, label: str) -> Perm:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise DomainError(f"{p!r} is not a permutation")
    if (flattened and (not p or not is_flattened(p))) or not avoids(p, ps):
        raise DomainError(f"{format_perm(p, 'comma')} is not in {label}")
    return p


def _consecutive_prefix(run: Perm) -> int:
    k = 0
    while k < len(run) and run[k] == k + 1:
        k += 1
    return k


def _f(p: Perm) -> Perm:
    n = len(p)
    first = run_decompose(p).runs[0]
    if len(first) == n:
        return p
    k = _consecutive_prefix(first)
    q1 = first[k:]
    t = q1[-1]
    if q1 != tuple(range(k + 2, t + 1)):
        raise AssertionError(f"first run of {p!r} is not 1..k (k+2)..t")
    head = first[:k] + tuple(x + n - t for x in q1)
    tail = _f(standardize(p[len(first):]))
    return head + tuple(x + k for x in tail)


def f_312_to_213(p: Sequence[int]) -> Perm:
    """
    Run-length preserving bijection from 312-avoiding to 213-avoiding flattened partitions.

    The first run ``1..k (k+2)..t`` becomes ``1..k (k+2+n-t)..n``; the rest is
    standardized, mapped recursively and shifted up by ``k``.

    >>> f_312_to_213((1, 3, 2, 4, 6, 5))
    (1, 6, 2, 3, 5, 4)
    """
    return _f(_require(p, True, P312, "F(n; 312)"))


def _g(p: Perm) -> Perm:
    n = len(p)
    first = run_decompose(p).runs[0]
    if len(first) == n:
        return p
    k = _consecutive_prefix(first)
    length = len(first) - k
    t = k + 1 + length
    tail = _g(tuple(x - k for x in p[len(first):]))
    # values left for the tail, in increasing order
    values = (k + 1,) + tuple(range(t + 1, n + 1))
    return first[:k] + tuple(range(k + 2, t + 1)) + tuple(values[x - 1] for x in tail)


def g_213_to_312(p: Sequence[int]) -> Perm:
    """Inverse of :func:`f_312_to_213`."""
    return _g(_require(p, True, P213, "F(n; 213)"))


def swap23(p: Sequence[int]) -> Perm:
    """Exchange the values 2 and 3 in a 312-avoiding flattened partition."""
    if len(p) < 3:
        raise DomainError("swap23 needs n >= 3")
    p = _require(p, True, P312, "F(n; 312)")
    return tuple({2: 3, 3: 2}.get(x, x) for x in p)


def h_321(p: Sequence[int]) -> Perm:
    """Delete the leading 1 and decrement: ``F(n; 321) -> S(n-1; 321)``."""
    p = _require(p, True, P321, "F(n; 321)")
    return tuple(x - 1 for x in p[1:])


def h_inverse_321(s: Sequence[int]) -> Perm:
    """Increment and prepend 1: ``S(n-1; 321) -> F(n; 321)``."""
    s = _require(s, False, P321, "S(n; 321)")
    return (1,) + tuple(x + 1 for x in s)


def alpha_motzkin(s: Sequence[int]) -> Perm:
    """
    Increment, reverse, prepend 1: Motzkin permutations of ``[n-1]`` -> ``F(n; 231)``.

    >>> alpha_motzkin((2, 1)), alpha_motzkin((1, 2))
    ((1, 2, 3), (1, 3, 2))
    """
    s = tuple(s)
    if sorted(s) != list(range(1, len(s) + 1)) or not is_motzkin_permutation(s):
        raise DomainError(f"{format_perm(s, 'comma')} is not a Motzkin permutation")
    return (1,) + tuple(x + 1 for x in reversed(s))


def alpha_inverse(p: Sequence[int]) -> Perm:
    """Strip the leading 1, reverse, decrement."""
    p = _require(p, True, P231, "F(n; 231)")
    return tuple(x - 1 for x in reversed(p[1:]))


def fixed_points_of_f(n: int) -> set[Perm]:
    if not 3 <= n <= 12:
        raise GuardError("fixed_points_of_f needs 3 <= n <= 12")
    return {p for p in enumerate_avoiding(n, P312) if _f(p) == p}


STATISTICS: dict[str, Callable[[Perm], object]] = {
    "run_lengths": run_lengths,
    "runs": runs,
    "inv": inversions,
}


@dataclass(frozen=True)
class MapSpec:
    func: Callable[[Sequence[int]], Perm]
    domain: Callable[[int], Iterable[Perm]]
    codomain: Callable[[int], Iterable[Perm]]
    preserved: tuple[str, ...] = ()
    min_n: int = 1


# ``n`` is the size of the flattened side for h, h-inv, alpha and alpha-inv
MAPS: dict[str, MapSpec] = {
    "f": MapSpec(f_312_to_213, lambda n: enumerate_avoiding(n, P312),
                 lambda n: enumerate_avoiding(n, P213), ("run_lengths", "runs")),
    "g": MapSpec(g_213_to_312, lambda n: enumerate_avoiding(n, P213),
                 lambda n: enumerate_avoiding(n, P312), ("run_lengths", "runs")),
    "swap23": MapSpec(swap23, lambda n: enumerate_avoiding(n, P312),
                      lambda n: enumerate_avoiding(n, P312), min_n=3),
    "h": MapSpec(h_321, lambda n: enumerate_avoiding(n, P321),
                 lambda n: avoiding_permutations(n - 1, P321), ("inv",)),
    "h-inv": MapSpec(h_inverse_321, lambda n: avoiding_permutations(n - 1, P321),
                     lambda n: enumerate_avoiding(n, P321), ("inv",)),
    "alpha": MapSpec(alpha_motzkin, lambda n: motzkin_permutations(n - 1),
                     lambda n: enumerate_avoiding(n, P231)),
    "alpha-inv": MapSpec(alpha_inverse, lambda n: enumerate_avoiding(n, P231),
                         lambda n: motzkin_permutations(n - 1)),
}


@dataclass
class BijectionCertificate:
    """Every (input, output) pair of a map on one size, for extensional checking."""
    name: str
    n: int
    pairs: list[tuple[Perm, Perm]]
    preserved_statistics: list[str] = field(default_factory=list)

    def problems(self) -> list[str]:
        """Empty iff the pairs witness a bijection that preserves the listed statistics."""
        spec = MAPS[self.name]
        out = []
        inputs = [a for a, _ in self.pairs]
        outputs = [b for _, b in self.pairs]
        if len(set(inputs)) != len(inputs) or set(inputs) != set(spec.domain(self.n)):
            out.append("inputs do not list the domain exactly once")
        if len(set(outputs)) != len(outputs) or set(outputs) != set(spec.codomain(self.n)):
            out.append("outputs do not list the codomain exactly once")
        for stat in self.preserved_statistics:
            fn = STATISTICS[stat]
            bad = [(a, b) for a, b in self.pairs if fn(a) != fn(b)]
            if bad:
                a, b = bad[0]
                out.append(f"{stat} differs on {format_perm(a)} -> {format_perm(b)}")
        return out

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "pairs": [[format_perm(a), format_perm(b)] for a, b in self.pairs],
            "preserved": list(self.preserved_statistics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def certify(name: str, n: int) -> BijectionCertificate:
    if name not in MAPS:
        raise KeyError(f"unknown map {name!r}; choose from {', '.join(MAPS)}")
    spec = MAPS[name]
    if not spec.min_n <= n <= DIRECT_MAX:
        raise GuardError(f"{name} certificates need {spec.min_n} <= n <= {DIRECT_MAX}")
    pairs = [(p, spec.func(p)) for p in spec.domain(n)]
    return BijectionCertificate(name, n, pairs, list(spec.preserved))
