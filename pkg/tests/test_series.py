import json
from collections import Counter
from math import comb

import pytest
from hypothesis import given, strategies as st

from flatpart.enumeration import GuardError, all_pattern_sets, count_avoiding, pattern_key
from flatpart.series import (
    BivariateSeries, IdentityViolation, QPolynomial, Report, catalan, closed_form_count,
    expand_pair_ogf, fibonacci, inv_closed_form, inv_distribution, motzkin,
    powers_of_two_shifted, runs_closed_form, runs_distribution,
    verify_motzkin_recurrence, verify_pair_recurrences,
)

import oracles


def test_reference_sequences():
    assert [catalan(n) for n in range(7)] == [1, 1, 2, 5, 14, 42, 132]
    assert [motzkin(n) for n in range(7)] == [1, 1, 2, 4, 9, 21, 51]
    assert [fibonacci(n) for n in range(1, 8)] == [1, 1, 2, 3, 5, 8, 13]
    assert [powers_of_two_shifted(n) for n in range(1, 7)] == [1, 1, 2, 4, 8, 16]
    assert motzkin(20) == 50852019


@pytest.mark.parametrize("fn, n", [(catalan, -1), (motzkin, -1), (fibonacci, 0),
                                   (powers_of_two_shifted, 0)])
def test_reference_sequence_domains(fn, n):
    with pytest.raises(ValueError):
        fn(n)


def test_qpolynomial():
    p = QPolynomial((0, 1, 3, 0, 0))
    assert p.coeffs == (0, 1, 3)
    assert str(p) == "0 + 1*q + 3*q^2"
    assert p(1) == 4 and p(2) == 14
    assert QPolynomial.from_counts({}) == QPolynomial(()) == QPolynomial((0,))
    assert QPolynomial.from_counts({2: 1}).coeffs == (0, 0, 1)


def test_runs_distribution_examples():
    assert runs_distribution(2).coeffs == (0, 1)
    assert runs_distribution(4).coeffs == (0, 1, 3)
    assert runs_distribution(7)(1) == 32


def test_runs_distribution_against_oracle():
    for n in range(2, 10):
        counts = Counter(len(oracles.starting_points(p))
                         for p in oracles.flattened_avoiders(n, [(2, 1, 3)])) if n <= 8 else None
        poly = runs_distribution(n)
        if counts is not None:
            assert poly == QPolynomial.from_counts(counts)
        assert poly.coeffs == tuple([0] + [comb(n - 1, 2 * r - 2) for r in range(1, len(poly.coeffs))])


def test_inv_distribution_examples():
    assert inv_distribution(2).coeffs == (1,)
    assert inv_distribution(4).coeffs == (1, 2, 1)
    assert inv_distribution(3).coeffs == (1, 1)


def test_inv_distribution_against_oracle():
    for n in range(2, 9):
        counts = Counter(oracles.inv(p) for p in oracles.flattened_avoiders(n, [(3, 1, 2)]))
        assert inv_distribution(n) == QPolynomial.from_counts(counts) == inv_closed_form(n)


@pytest.mark.parametrize("fn", [runs_distribution, inv_distribution, runs_closed_form,
                                inv_closed_form])
def test_distribution_domain(fn):
    with pytest.raises(ValueError):
        fn(1)


def test_identity_violation_is_raised(monkeypatch):
    import flatpart.series as series
    monkeypatch.setattr(series, "runs_closed_form", lambda n: QPolynomial((0, 2)))
    with pytest.raises(IdentityViolation):
        series.runs_distribution(3)
    assert series.runs_distribution(3, check=False).coeffs == (0, 1, 1)


def test_recurrence_reports_pass():
    for n_max in (3, 8, 12):
        assert verify_motzkin_recurrence(n_max).status == "pass"
        assert verify_pair_recurrences(n_max).status == "pass"


@pytest.mark.parametrize("fn", [verify_motzkin_recurrence, verify_pair_recurrences])
@pytest.mark.parametrize("n_max", [2, 17])
def test_recurrence_guards(fn, n_max):
    with pytest.raises(GuardError):
        fn(n_max)


@pytest.mark.parametrize("ps, n, expected", [
    (((2, 1, 3), (3, 2, 1)), 5, 7),
    (((2, 3, 1), (3, 2, 1)), 6, 16),
    (((2, 1, 3), (3, 1, 2)), 7, 6),
    (((2, 1, 3), (3, 1, 2)), 5, 4),
    (((2, 3, 1),), 8, 127),
    (((3, 2, 1),), 9, 1430),
])
def test_oracle_counts(ps, n, expected):
    assert count_avoiding(n, ps) == expected
    if n <= 8:
        assert len(oracles.flattened_avoiders(n, ps)) == expected


@pytest.mark.parametrize("ps", all_pattern_sets(), ids=pattern_key)
def test_closed_forms(ps):
    for n in range(1, 13):
        assert closed_form_count(n, ps) == count_avoiding(n, ps)


def test_closed_form_absent_for_empty_set():
    assert closed_form_count(4, ()) is None
    with pytest.raises(ValueError):
        closed_form_count(0, ((2, 3, 1),))


def test_ogf_coefficients():
    s = expand_pair_ogf(20)
    assert s.coefficient(0, 0) == 1
    assert s.coefficient(5, 3) == 1
    assert s.coefficient(1, 1) == 1
    assert s.coefficient(2, 2) == 1
    for n in range(2, 21):
        assert s.coefficient(n, 1) == 0
        assert s.coefficient(n, n) == 1
        for k in range(2, n):
            assert s.coefficient(n, k) == fibonacci(n - k)


def test_ogf_row_sums_are_fibonacci():
    s = expand_pair_ogf(30)
    for n in range(1, 31):
        assert s.row_sum(n) == fibonacci(n)


def test_ogf_bounds():
    s = expand_pair_ogf(5, check=False)
    with pytest.raises(ValueError):
        s.coefficient(6, 0)
    for order in (1, 31):
        with pytest.raises(ValueError):
            expand_pair_ogf(order)


def test_bivariate_series_row():
    s = BivariateSeries(2, {(0, 0): 1, (2, 2): 1})
    assert s.row(2) == {0: 0, 1: 0, 2: 1}
    assert s.row_sum(0) == 1


@given(st.integers(2, 30), st.integers(0, 30))
def test_ogf_coefficients_non_negative(n, k):
    s = expand_pair_ogf(30, check=False)
    assert s.coefficient(n, k) >= 0
    if k > n:
        assert s.coefficient(n, k) == 0


def test_report_json():
    r = Report("demo", (3, 5))
    r.expect(True, "never")
    assert r.status == "pass"
    assert json.loads(r.to_json()) == {"identity": "demo", "n_range": [3, 5],
                                       "status": "pass", "failures": []}
    r.expect(False, "n=4: off by one")
    r.notes.append("a note")
    d = r.to_dict()
    assert d["status"] == "fail" and d["failures"] == ["n=4: off by one"]
    assert d["notes"] == ["a note"]
