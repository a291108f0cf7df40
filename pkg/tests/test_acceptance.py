"""
End-to-end acceptance checks, one marker per criterion.

The terminal summary prints one PASS/FAIL line per criterion.
"""

import csv
import io
import time
from math import comb

import pytest

from flatpart.bijections import (
    alpha_motzkin, f_312_to_213, fixed_points_of_f, g_213_to_312, h_321, h_inverse_321,
)
from flatpart.cli import main
from flatpart.core import run_decompose
from flatpart.enumeration import (
    all_pattern_sets, avoiding_permutations, brute_avoiding, count_avoiding,
    enumerate_avoiding, first_run_length_table, motzkin_permutations, pattern_key,
)
from flatpart.series import (
    catalan, expand_pair_ogf, fibonacci, inv_distribution, motzkin, runs_distribution,
    verify_motzkin_recurrence,
)

P213, P231, P312, P321 = (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)

# single-pattern counts for n = 1..7, as published
SINGLE_TABLE = {
    "123": [1, 1, 1, 0, 0, 0, 0],
    "132": [1, 1, 1, 1, 1, 1, 1],
    "213": [1, 1, 2, 4, 8, 16, 32],
    "231": [1, 1, 2, 4, 9, 21, 51],
    "312": [1, 1, 2, 4, 8, 16, 32],
    "321": [1, 1, 2, 5, 14, 42, 132],
}

# pair counts for n = 1..7, transcribed row by row from the published summary
_FIB = [1, 1, 2, 3, 5, 8, 13]
_ONES = [1, 1, 1, 1, 1, 1, 1]
_POW2 = [1, 1, 2, 4, 8, 16, 32]
_LIN = [1, 1, 2, 3, 4, 5, 6]
_ZERO2 = [1, 1, 0, 0, 0, 0, 0]
_ZERO3 = [1, 1, 1, 0, 0, 0, 0]
PAIR_TABLE = {
    "213+231": _FIB, "231+312": _FIB,
    "132+213": _ONES, "132+231": _ONES, "132+312": _ONES, "132+321": _ONES,
    "213+321": _POW2, "231+321": _POW2, "312+321": _POW2,
    "213+312": _LIN,
    "123+132": _ZERO2,
    "123+213": _ZERO3, "123+231": _ZERO3, "123+312": _ZERO3, "123+321": _ZERO3,
}


def table_via_cli(capsys, n_max, method):
    code = main(["table", "--n-max", str(n_max), "--method", method])
    out = capsys.readouterr().out
    assert code == 0
    rows = {}
    for r in csv.DictReader(io.StringIO(out)):
        rows.setdefault(r["patterns"], {})[int(r["n"])] = int(r["count"])
    return rows


@pytest.mark.criterion(1, "single-pattern table, n <= 7, exact")
@pytest.mark.parametrize("method", ["direct", "brute"])
def test_single_pattern_table(capsys, method):
    start = time.perf_counter()
    rows = table_via_cli(capsys, 7, method)
    elapsed = time.perf_counter() - start
    for key, expected in SINGLE_TABLE.items():
        assert [rows[key][n] for n in range(1, 8)] == expected, key
    assert elapsed < 10


@pytest.mark.criterion(2, "pattern-pair table, n <= 7, exact")
@pytest.mark.parametrize("key", list(PAIR_TABLE))
def test_pair_table(key):
    start = time.perf_counter()
    ps = [tuple(int(c) for c in w) for w in key.split("+")]
    got = [count_avoiding(n, ps, method="brute") for n in range(1, 8)]
    assert time.perf_counter() - start < 10
    assert got == PAIR_TABLE[key]


@pytest.mark.criterion(3, "generator equals brute-force filter, every pattern set, n <= 9")
def test_oracle_equivalence():
    start = time.perf_counter()
    for ps in [()] + all_pattern_sets():
        for n in range(1, 10):
            assert set(enumerate_avoiding(n, ps)) == set(brute_avoiding(n, ps)), (pattern_key(ps), n)
    assert time.perf_counter() - start < 300


@pytest.mark.criterion(4, "runs distribution over 213-avoiders, 2 <= n <= 12")
def test_runs_distribution():
    for n in range(2, 13):
        poly = runs_distribution(n, check=False)
        expected = [0] + [comb(n - 1, 2 * r - 2) for r in range(1, (n + 1) // 2 + 1)]
        while expected[-1] == 0:
            expected.pop()
        assert list(poly.coeffs) == expected, n
        assert poly(1) == 2 ** (n - 2)


@pytest.mark.criterion(5, "inversion distribution over 312-avoiders is (1+q)^(n-2), 2 <= n <= 12")
def test_inv_distribution():
    for n in range(2, 13):
        assert list(inv_distribution(n, check=False).coeffs) == [comb(n - 2, d) for d in range(n - 1)]


@pytest.mark.criterion(6, "f is a run-length preserving bijection 312 -> 213 with fixed points F(n;213,312)")
def test_f_bijection():
    for n in range(3, 11):
        src = list(enumerate_avoiding(n, [P312]))
        dst = set(enumerate_avoiding(n, [P213]))
        image = [f_312_to_213(p) for p in src]
        assert len(set(image)) == len(src) and set(image) == dst
        for p, q in zip(src, image):
            assert run_decompose(p).lengths == run_decompose(q).lengths
            assert g_213_to_312(q) == p
        for q in dst:
            assert f_312_to_213(g_213_to_312(q)) == q
        assert fixed_points_of_f(n) == set(enumerate_avoiding(n, [P213, P312]))


@pytest.mark.criterion(7, "h is a bijection F(n;321) -> S(n-1;321) and counts are Catalan")
def test_h_bijection():
    for n in range(1, 11):
        src = list(enumerate_avoiding(n, [P321]))
        image = [h_321(p) for p in src]
        assert len(set(image)) == len(src)
        assert set(image) == set(avoiding_permutations(n - 1, [P321]))
        assert [h_inverse_321(s) for s in image] == src
        assert len(src) == catalan(n - 1)
    assert catalan(9) == 4862 == count_avoiding(10, [P321])


@pytest.mark.criterion(8, "Motzkin recurrence for 231-avoiders, 3 <= n <= 14")
def test_motzkin_recurrence():
    c = {n: count_avoiding(n, [P231]) for n in range(1, 15)}
    for n in range(3, 15):
        assert c[n] == c[n - 1] + sum(c[k - 1] * c[n - k] for k in range(2, n))
    for n in range(1, 15):
        assert c[n] == motzkin(n - 1)
    assert verify_motzkin_recurrence(14).status == "pass"


@pytest.mark.criterion(9, "alpha maps Motzkin permutations of length n-1 onto F(n;231), n <= 9")
def test_alpha_image():
    for n in range(1, 10):
        image = [alpha_motzkin(s) for s in motzkin_permutations(n - 1)]
        assert len(set(image)) == len(image)
        assert set(image) == set(enumerate_avoiding(n, [P231]))


@pytest.mark.criterion(10, "first-run generating function matches the table; row sums are Fibonacci")
def test_first_run_series():
    series = expand_pair_ogf(12, check=False)
    for n in range(2, 13):
        table = first_run_length_table(n)
        for k in range(0, n + 1):
            assert series.coefficient(n, k) == table.get(k, 0), (n, k)
        assert series.row_sum(n) == fibonacci(n) == sum(table.values())
        # the k = 1 coefficient is 0, not Fibonacci(n - 1); this is recorded, not a failure
        assert table[1] == 0


@pytest.mark.criterion(11, "closed forms for (213,321) and (231,321), n <= 12")
def test_pair_closed_forms():
    for n in range(1, 13):
        assert count_avoiding(n, [P213, P321]) == comb(n - 1, 2) + 1
        if n >= 2:
            assert count_avoiding(n, [P231, P321]) == 2 ** (n - 2)
    assert count_avoiding(1, [P231, P321]) == 1
