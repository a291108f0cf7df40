"""
Reference sequences, statistic polynomials and the first-run generating function.

All arithmetic is on Python ints.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cache
from math import comb
from typing import Sequence

from .core import inversions, runs
from .enumeration import (
    DIRECT_MAX, GuardError, canonical_patterns, count_avoiding, enumerate_avoiding,
    first_run_length_table,
)

__all__ = [
    "catalan", "motzkin", "fibonacci", "powers_of_two_shifted",
    "QPolynomial", "IdentityViolation", "Report",
    "runs_distribution", "runs_closed_form", "inv_distribution", "inv_closed_form",
    "verify_motzkin_recurrence", "verify_pair_recurrences",
    "BivariateSeries", "expand_pair_ogf", "closed_form_count",
]


class IdentityViolation(AssertionError):
    """A computed quantity disagrees with the formula it is supposed to satisfy."""


def _nonneg(n: int) -> None:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")


def catalan(n: int) -> int:
    _nonneg(n)
    return comb(2 * n, n) // (n + 1)


@cache
def motzkin(n: int) -> int:
    """M(n) = M(n-1) + sum_{i=0}^{n-2} M(i) M(n-2-i), M(0) = M(1) = 1  (OEIS A001006)."""
    _nonneg(n)
    if n < 2:
        return 1
    return motzkin(n - 1) + sum(motzkin(i) * motzkin(n - 2 - i) for i in range(n - 1))


def fibonacci(n: int) -> int:
    """F(1) = F(2) = 1."""
    if n < 1:
        raise ValueError(f"fibonacci needs n >= 1, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def powers_of_two_shifted(n: int) -> int:
    """1 for n = 1, else 2^(n-2)  (OEIS A011782 from its second term)."""
    if n < 1:
        raise ValueError(f"powers_of_two_shifted needs n >= 1, got {n}")
    return 1 if n == 1 else 2 ** (n - 2)


@dataclass(frozen=True)
class QPolynomial:
    """Integer polynomial in q; ``coeffs[d]`` is the coefficient of q^d."""
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (0,))

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> QPolynomial:
        if not counts:
            return cls((0,))
        top = max(counts)
        return cls(tuple(counts.get(d, 0) for d in range(top + 1)))

    def __call__(self, q: int) -> int:
        return sum(c * q ** d for d, c in enumerate(self.coeffs))

    def __str__(self) -> str:
        terms = []
        for d, c in enumerate(self.coeffs):
            terms.append(str(c) if d == 0 else f"{c}*q" if d == 1 else f"{c}*q^{d}")
        return " + ".join(terms)


def runs_closed_form(n: int) -> QPolynomial:
    """sum_{r>=1} C(n-1, 2r-2) q^r, stopping once the binomial vanishes."""
    if n < 2:
        raise ValueError("runs distribution needs n >= 2")
    counts = {r: comb(n - 1, 2 * r - 2) for r in range(1, (n + 1) // 2 + 1)}
    return QPolynomial.from_counts(counts)


def runs_distribution(n: int, check: bool = True) -> QPolynomial:
    """Number of runs over the 213-avoiding flattened partitions of ``[n]``."""
    if n < 2:
        raise ValueError("runs distribution needs n >= 2")
    poly = QPolynomial.from_counts(Counter(runs(p) for p in enumerate_avoiding(n, [(2, 1, 3)])))
    if check and poly != runs_closed_form(n):
        raise IdentityViolation(f"n={n}: {poly} != {runs_closed_form(n)}")
    return poly


def inv_closed_form(n: int) -> QPolynomial:
    """(1 + q)^(n-2)."""
    if n < 2:
        raise ValueError("inversion distribution needs n >= 2")
    return QPolynomial(tuple(comb(n - 2, d) for d in range(n - 1)))


def inv_distribution(n: int, check: bool = True) -> QPolynomial:
    """Inversion numbers over the 312-avoiding flattened partitions of ``[n]``."""
    if n < 2:
        raise ValueError("inversion distribution needs n >= 2")
    poly = QPolynomial.from_counts(Counter(inversions(p) for p in enumerate_avoiding(n, [(3, 1, 2)])))
    if check and poly != inv_closed_form(n):
        raise IdentityViolation(f"n={n}: {poly} != {inv_closed_form(n)}")
    return poly


@dataclass
class Report:
    """Outcome of checking one identity family over a range of n."""
    identity: str
    n_range: tuple[int, int]
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "fail" if self.failures else "pass"

    def expect(self, ok: bool, message: str) -> None:
        if not ok:
            self.failures.append(message)

    def to_dict(self) -> dict:
        d = {"identity": self.identity, "n_range": list(self.n_range),
             "status": self.status, "failures": list(self.failures)}
        if self.notes:
            d["notes"] = list(self.notes)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _check_range(n_max: int, lo: int = 3) -> None:
    if not lo <= n_max <= DIRECT_MAX:
        raise GuardError(f"n_max={n_max} outside {lo}..{DIRECT_MAX}")


def verify_motzkin_recurrence(n_max: int) -> Report:
    """|F(n;231)| = |F(n-1;231)| + sum_{k=2}^{n-1} |F(k-1;231)| |F(n-k;231)|, and = M(n-1)."""
    _check_range(n_max)
    report = Report("motzkin_recurrence_231", (3, n_max))
    c = {n: count_avoiding(n, [(2, 3, 1)]) for n in range(1, n_max + 1)}
    for n in range(1, n_max + 1):
        report.expect(c[n] == motzkin(n - 1), f"n={n}: count {c[n]} != M({n - 1}) = {motzkin(n - 1)}")
    for n in range(3, n_max + 1):
        rhs = c[n - 1] + sum(c[k - 1] * c[n - k] for k in range(2, n))
        report.expect(c[n] == rhs, f"n={n}: {c[n]} != recurrence value {rhs}")
    return report


def verify_pair_recurrences(n_max: int) -> Report:
    _check_range(n_max)
    report = Report("pair_recurrences", (3, n_max))

    def counts(*ps):
        return {n: count_avoiding(n, ps) for n in range(1, n_max + 1)}

    fib_a = counts((2, 1, 3), (2, 3, 1))
    fib_b = counts((3, 1, 2), (2, 3, 1))
    lin = counts((2, 1, 3), (3, 1, 2))
    tri = counts((2, 1, 3), (3, 2, 1))
    pow2 = counts((2, 3, 1), (3, 2, 1))
    for n in range(1, n_max + 1):
        for name, c in (("213+231", fib_a), ("231+312", fib_b)):
            report.expect(c[n] == fibonacci(n), f"{name} n={n}: {c[n]} != F({n})")
        report.expect(tri[n] == comb(n - 1, 2) + 1, f"213+321 n={n}: {tri[n]} != C(n-1,2)+1")
        if n >= 2:
            report.expect(pow2[n] == 2 ** (n - 2), f"231+321 n={n}: {pow2[n]} != 2^(n-2)")
            report.expect(tri[n] == tri[n - 1] + n - 2,
                          f"213+321 n={n}: {tri[n]} != {tri[n - 1]} + {n - 2}")
        if n >= 3:
            for name, c in (("213+231", fib_a), ("231+312", fib_b)):
                report.expect(c[n] == c[n - 1] + c[n - 2], f"{name} n={n}: not the sum of the two previous")
            report.expect(lin[n] == lin[n - 1] + 1, f"213+312 n={n}: {lin[n]} != {lin[n - 1]} + 1")
    return report


@dataclass
class BivariateSeries:
    """Coefficients of u^n x^k for 0 <= n <= order."""
    order: int
    coeffs: dict[tuple[int, int], int]

    def coefficient(self, n: int, k: int) -> int:
        if n > self.order:
            raise ValueError(f"series truncated at order {self.order}")
        return self.coeffs.get((n, k), 0)

    def row(self, n: int) -> dict[int, int]:
        return {k: self.coefficient(n, k) for k in range(n + 1)}

    def row_sum(self, n: int) -> int:
        return sum(self.row(n).values())


def _poly_add(*terms: tuple[int, Sequence[int], int]) -> list[int]:
    # each term: (coefficient, polynomial in x, power of x to multiply by)
    size = max(len(p) + s for _, p, s in terms)
    out = [0] * size
    for c, p, s in terms:
        for k, a in enumerate(p):
            out[k + s] += c * a
    return out


def expand_pair_ogf(n_max: int, check: bool = True) -> BivariateSeries:
    """
    Expand (1 - u - u^2 + u^3 x^2) / ((1 - ux)(1 - u - u^2)) up to u^n_max.

    Multiplying out, the denominator is 1 - (1+x)u - (1-x)u^2 + x u^3, so the
    coefficient of u^n obeys
    A_n = N_n + (1+x) A_{n-1} + (1-x) A_{n-2} - x A_{n-3}.
    """
    if not 2 <= n_max <= 30:
        raise ValueError("truncation order must be in 2..30")
    numerator = {0: [1], 1: [-1], 2: [-1], 3: [0, 0, 1]}
    rows: list[list[int]] = []
    for n in range(n_max + 1):
        terms = [(1, numerator.get(n, [0]), 0)]
        if n >= 1:
            terms += [(1, rows[n - 1], 0), (1, rows[n - 1], 1)]
        if n >= 2:
            terms += [(1, rows[n - 2], 0), (-1, rows[n - 2], 1)]
        if n >= 3:
            terms += [(-1, rows[n - 3], 1)]
        rows.append(_poly_add(*terms))
    coeffs = {(n, k): c for n, row in enumerate(rows) for k, c in enumerate(row) if c}
    series = BivariateSeries(n_max, coeffs)
    if check:
        for n in range(2, min(n_max, 12) + 1):
            table = first_run_length_table(n)
            if any(series.coefficient(n, k) != table[k] for k in range(n + 1) if k in table) \
                    or series.coefficient(n, 0) != 0:
                raise IdentityViolation(f"n={n}: {series.row(n)} != {table}")
    return series


def closed_form_count(n: int, ps) -> int | None:
    """Known formula for ``|F(n; ps)|``, or None for pattern sets without one."""
    key = tuple("".join(map(str, t)) for t in canonical_patterns(ps))
    if n < 1:
        raise ValueError("n must be positive")
    two = powers_of_two_shifted(n)
    forms = {
        ("123",): lambda: int(n <= 3),
        ("132",): lambda: 1,
        ("213",): lambda: two,
        ("312",): lambda: two,
        ("231",): lambda: motzkin(n - 1),
        ("321",): lambda: catalan(n - 1),
        ("123", "132"): lambda: int(n <= 2),
        ("213", "231"): lambda: fibonacci(n),
        ("231", "312"): lambda: fibonacci(n),
        ("213", "312"): lambda: max(n - 1, 1),
        ("213", "321"): lambda: comb(n - 1, 2) + 1,
        ("231", "321"): lambda: two,
        ("312", "321"): lambda: two,
    }
    for other in ("213", "231", "312", "321"):
        forms[("123", other)] = lambda: int(n <= 3)
        forms[("132", other)] = lambda: 1
    form = forms.get(key)
    return None if form is None else form()
