"""
One-shot checking of every structural property, bijection and identity.

``run(scope, n_max)`` returns a list of :class:`~flatpart.series.Report`;
each report names one identity family and lists any failing instances.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, permutations

from . import bijections as bij
from .core import (
    flatten_set_partition, is_flattened, is_motzkin_permutation,
    patterns_contained, run_decompose, run_lengths,
)
from .enumeration import (
    DIRECT_MAX, GuardError, all_flattened, all_pattern_sets, avoiding_permutations,
    brute_avoiding, compose_213, count_avoiding, decompose_213, enumerate_avoiding,
    motzkin_permutations, pattern_key, split_at_max,
)
from .series import (
    Report, catalan, expand_pair_ogf, fibonacci, first_run_length_table,
    inv_closed_form, inv_distribution, motzkin, powers_of_two_shifted,
    runs_closed_form, runs_distribution, verify_motzkin_recurrence,
    verify_pair_recurrences,
)

SCOPES = ("all", "core", "bijections", "series")

# counts for n = 1..7 with their OEIS numbers
SINGLE_PATTERN_REFERENCE = {
    "123": ((1, 1, 1, 0, 0, 0, 0), None),
    "132": ((1, 1, 1, 1, 1, 1, 1), "A000012"),
    "213": ((1, 1, 2, 4, 8, 16, 32), "A011782"),
    "231": ((1, 1, 2, 4, 9, 21, 51), "A001006"),
    "312": ((1, 1, 2, 4, 8, 16, 32), "A011782"),
    "321": ((1, 1, 2, 5, 14, 42, 132), "A000108"),
}

_FIB = ((1, 1, 2, 3, 5, 8, 13), "A000045")
_ONES = ((1, 1, 1, 1, 1, 1, 1), "A000012")
_POW2 = ((1, 1, 2, 4, 8, 16, 32), "A011782")
_ZERO3 = ((1, 1, 1, 0, 0, 0, 0), None)
PAIR_REFERENCE = {
    "213+231": _FIB, "231+312": _FIB,
    "132+213": _ONES, "132+231": _ONES, "132+312": _ONES, "132+321": _ONES,
    "231+321": _POW2, "312+321": _POW2,
    # C(n-1,2) + 1: a leading 1 followed by the central polygonal numbers
    "213+321": ((1, 1, 2, 4, 7, 11, 16), "A000124"),
    "213+312": ((1, 1, 2, 3, 4, 5, 6), "A028310"),
    "123+132": ((1, 1, 0, 0, 0, 0, 0), None),
    "123+213": _ZERO3, "123+231": _ZERO3, "123+312": _ZERO3, "123+321": _ZERO3,
}

P213, P231, P312, P321 = (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)


def set_partitions(n: int):
    """All set partitions of [n] as lists of blocks, via restricted growth strings."""
    def rec(i, blocks):
        if i > n:
            yield [list(b) for b in blocks]
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()
    yield from rec(1, [])


# ---- core and enumeration ----------------------------------------------------

def check_runs(n_max: int) -> Report:
    top = min(n_max, 8)
    r = Report("run_decomposition", (1, top))
    for n in range(1, top + 1):
        for p in permutations(range(1, n + 1)):
            d = run_decompose(p)
            cuts = [i + 1 for i in range(n - 1) if p[i] > p[i + 1]]
            bounds = [0] + cuts + [n]
            alt = tuple(p[a:b] for a, b in zip(bounds, bounds[1:]))
            r.expect(d.word() == p and d.runs == alt, f"{p}: {d}")
            if is_flattened(p):
                r.expect(p[0] == 1, f"{p} is flattened but does not start with 1")
    return r


def check_set_partitions(n_max: int) -> Report:
    top = min(n_max, 7)
    r = Report("flatten_set_partition", (1, top))
    for n in range(1, top + 1):
        image = {flatten_set_partition(sp) for sp in set_partitions(n)}
        r.expect(all(is_flattened(p) for p in image), f"n={n}: non-flattened image")
        r.expect(image == set(all_flattened(n)), f"n={n}: image is not every flattened partition")
    return r


def check_oracle_equivalence(n_max: int) -> Report:
    top = min(n_max, 9)
    r = Report("generator_matches_filter", (1, top))
    sets = [()] + all_pattern_sets()
    for n in range(1, top + 1):
        brute = {ps: [] for ps in sets}
        for p in permutations(range(1, n + 1)):
            if not is_flattened(p):
                continue
            present = patterns_contained(p)
            for ps in sets:
                if not any(t in present for t in ps):
                    brute[ps].append(p)
        for ps in sets:
            direct = list(enumerate_avoiding(n, ps))
            r.expect(direct == brute[ps], f"n={n} {pattern_key(ps)}: generator differs from filter")
    return r


def check_counter(n_max: int) -> Report:
    top = min(n_max, 11)
    r = Report("counter_matches_generator", (1, top))
    for ps in [()] + all_pattern_sets():
        for n in range(1, top + 1):
            if ps == () and n > 9:
                continue
            a, b = count_avoiding(n, ps), sum(1 for _ in enumerate_avoiding(n, ps))
            r.expect(a == b, f"n={n} {pattern_key(ps)}: counted {a}, generated {b}")
    return r


def check_reference_tables(n_max: int) -> list[Report]:
    top = min(n_max, 7)
    out = []
    for name, ref in (("single_pattern_counts", SINGLE_PATTERN_REFERENCE),
                      ("pattern_pair_counts", PAIR_REFERENCE)):
        r = Report(name, (1, top))
        for key, (row, _) in ref.items():
            got = tuple(count_avoiding(n, [tuple(map(int, w)) for w in key.split("+")])
                        for n in range(1, top + 1))
            r.expect(got == row[:top], f"{key}: {got} != {row[:top]}")
        out.append(r)
    out[1].notes.append("213+321 is counted by C(n-1,2)+1, which departs from 2^(n-2) at n=5 (7 vs 8)")
    return out


def check_213_structure(n_max: int) -> list[Report]:
    top = min(n_max, 10)
    end = Report("n_ends_first_run_213", (1, top))
    pq = Report("pq_words_213", (1, top))
    for n in range(1, top + 1):
        cls = list(enumerate_avoiding(n, [P213]))
        for p in cls:
            end.expect(run_decompose(p).runs[0][-1] == n, f"{p}: first run does not end with n")
            d = decompose_213(p)
            pq.expect(d.identity_word() == tuple(range(1, n + 1)), f"{p}: words do not spell 1..n")
            pq.expect(d.compose() == p and compose_213(n, d.cuts()) == p, f"{p}: round trip failed")
        image = set()
        for m in range(0, n, 2):
            for cuts in combinations(range(1, n), m):
                q = compose_213(n, cuts)
                pq.expect(decompose_213(q).cuts() == frozenset(cuts), f"n={n} cuts {cuts}: round trip failed")
                image.add(q)
        pq.expect(image == set(cls), f"n={n}: compositions do not give F(n;213)")
    return [end, pq]


def check_prefix_lemmas(n_max: int) -> list[Report]:
    top = min(n_max, 10)
    s312 = Report("starts_12_or_13_312", (3, top))
    split = Report("split_at_max_231", (2, top))
    forced = Report("forced_first_run_213_231", (1, top))
    s1n = Report("starts_12_or_1n_213_231", (2, top))
    one13 = Report("unique_13_start_213_312", (3, top))
    for n in range(1, top + 1):
        if n >= 3:
            for p in enumerate_avoiding(n, [P312]):
                s312.expect(p[:2] in ((1, 2), (1, 3)), f"{p}")
            starts13 = [p for p in enumerate_avoiding(n, [P213, P312]) if p[:2] == (1, 3)]
            one13.expect(len(starts13) == 1, f"n={n}: {len(starts13)} elements start with 13")
            for p in starts13:
                rs = run_decompose(p).runs
                one13.expect(len(rs) >= 2 and rs[1] == (2,), f"{p}: 2 is not a singleton second run")
        if n >= 2:
            for p in enumerate_avoiding(n, [P231]):
                s = split_at_max(p)
                ok = (p[s.k - 1] == n and all(x < s.k for x in p[:s.k - 1])
                      and all(x >= s.k for x in p[s.k:])
                      and is_flattened(s.left) and not patterns_contained(s.left) & {P231}
                      and (not s.right or is_flattened(s.right))
                      and not patterns_contained(s.right) & {P231})
                split.expect(ok, f"{p}: split at {s.k} fails")
        for p in enumerate_avoiding(n, [P213, P231]):
            k = p.index(n) + 1
            ok = (k >= 2 or n == 1) and p[:k - 1] == tuple(range(1, k)) and all(x >= k for x in p[k:])
            forced.expect(ok, f"{p}")
            if n >= 2:
                s1n.expect(p[:2] in ((1, 2), (1, n)), f"{p}")
    return [s312, split, forced, s1n, one13]


# ---- bijections --------------------------------------------------------------

def check_f(n_max: int) -> list[Report]:
    top = min(n_max, 10)
    fr = Report("run_length_bijection_312_213", (3, top))
    fixed = Report("fixed_points_of_run_length_bijection", (3, top))
    for n in range(3, top + 1):
        for name in ("f", "g"):
            for prob in bij.certify(name, n).problems():
                fr.failures.append(f"{name} n={n}: {prob}")
        for p in enumerate_avoiding(n, [P312]):
            fr.expect(bij.g_213_to_312(bij.f_312_to_213(p)) == p, f"g(f({p})) != {p}")
        for p in enumerate_avoiding(n, [P213]):
            fr.expect(bij.f_312_to_213(bij.g_213_to_312(p)) == p, f"f(g({p})) != {p}")
        a = Counter(run_lengths(p) for p in enumerate_avoiding(n, [P312]))
        b = Counter(run_lengths(p) for p in enumerate_avoiding(n, [P213]))
        fr.expect(a == b, f"n={n}: run-length multisets differ")
        both = set(enumerate_avoiding(n, [P213, P312]))
        fixed.expect(bij.fixed_points_of_f(n) == both, f"n={n}: fixed points != F(n;213,312)")
        only213 = set(enumerate_avoiding(n, [P213])) - both
        only312 = set(enumerate_avoiding(n, [P312])) - both
        fixed.expect(len(only213) == len(only312), f"n={n}: {len(only213)} != {len(only312)}")
        fixed.expect({bij.f_312_to_213(p) for p in only312} == only213,
                     f"n={n}: f does not carry the 213-containing part onto the 312-containing part")
    return [fr, fixed]


def check_swap23(n_max: int) -> Report:
    top = min(n_max, 10)
    r = Report("swap23_involution_312", (3, top))
    for n in range(3, top + 1):
        cls = list(enumerate_avoiding(n, [P312]))
        s12 = {p for p in cls if p[:2] == (1, 2)}
        s13 = {p for p in cls if p[:2] == (1, 3)}
        for p in cls:
            q = bij.swap23(p)
            r.expect(bij.swap23(q) == p, f"{p}: not an involution")
        r.expect({bij.swap23(p) for p in s12} == s13, f"n={n}: 12-class does not map onto 13-class")
        r.expect(len(s12) == len(s13), f"n={n}: {len(s12)} != {len(s13)}")
    return r


def check_h(n_max: int) -> Report:
    top = min(n_max, 10)
    r = Report("catalan_bijection_321", (1, top))
    for n in range(1, top + 1):
        for name in ("h", "h-inv"):
            for prob in bij.certify(name, n).problems():
                r.failures.append(f"{name} n={n}: {prob}")
        for s in avoiding_permutations(n - 1, [P321]):
            r.expect(is_flattened(bij.h_inverse_321(s)), f"h'({s}) is not flattened")
        r.expect(count_avoiding(n, [P321]) == catalan(n - 1), f"n={n}: count != C({n - 1})")
    return r


def check_alpha(n_max: int) -> Report:
    top = min(n_max, 9)
    r = Report("motzkin_permutation_bijection_231", (1, top))
    for n in range(1, top + 1):
        for name in ("alpha", "alpha-inv"):
            for prob in bij.certify(name, n).problems():
                r.failures.append(f"{name} n={n}: {prob}")
        mot = list(motzkin_permutations(n - 1))
        brute = [p for p in permutations(range(1, n)) if is_motzkin_permutation(p)]
        r.expect(mot == brute, f"n={n}: Motzkin permutation generator differs from filter")
        r.expect(len(mot) == motzkin(n - 1), f"n={n}: {len(mot)} Motzkin permutations != M({n - 1})")
        image = {bij.alpha_motzkin(s) for s in mot}
        r.expect(image == set(brute_avoiding(n, [P231])), f"n={n}: image != F(n;231)")
    return r


# ---- series ------------------------------------------------------------------

def check_runs_statistic(n_max: int) -> Report:
    top = min(n_max, 12)
    r = Report("runs_q_statistic_213", (2, top))
    for n in range(2, top + 1):
        poly = runs_distribution(n, check=False)
        r.expect(poly == runs_closed_form(n), f"n={n}: {poly} != {runs_closed_form(n)}")
        r.expect(poly(1) == 2 ** (n - 2), f"n={n}: total {poly(1)} != 2^{n - 2}")
    return r


def check_inv_statistic(n_max: int) -> Report:
    top = min(n_max, 12)
    r = Report("inversion_q_statistic_312", (2, top))
    for n in range(2, top + 1):
        poly = inv_distribution(n, check=False)
        r.expect(poly == inv_closed_form(n), f"n={n}: {poly} != {inv_closed_form(n)}")
    r.notes.append("n=1 is excluded: (1+q)^(n-2) is not a polynomial there; |F(1;312)| = 1")
    return r


def check_ogf(n_max: int) -> Report:
    top = min(n_max, 12)
    r = Report("first_run_generating_function", (2, top))
    series = expand_pair_ogf(max(top, 2), check=False)
    for n in range(2, top + 1):
        table = first_run_length_table(n)
        for k in range(0, n + 1):
            got = series.coefficient(n, k)
            r.expect(got == table.get(k, 0), f"n={n} k={k}: series {got} != enumerated {table.get(k, 0)}")
            if 2 <= k < n:
                r.expect(got == fibonacci(n - k), f"n={n} k={k}: {got} != F({n - k})")
        r.expect(table[n] == 1, f"n={n}: first run of full length occurs {table[n]} times")
    r.notes.append("first-run length k=1 never occurs for n >= 2 (coefficient 0), "
                   "so F(n,k) = F(n-k) holds for 2 <= k < n only")
    return r


def check_row_sums(_: int) -> Report:
    r = Report("first_run_row_sums_fibonacci", (2, 20))
    series = expand_pair_ogf(20, check=False)
    for n in range(2, 21):
        r.expect(series.row_sum(n) == fibonacci(n), f"n={n}: row sum {series.row_sum(n)} != F({n})")
    return r


def check_reference_sequences(n_max: int) -> Report:
    r = Report("reference_sequences", (1, n_max))
    for n in range(1, n_max + 1):
        pairs = [
            ([P321], catalan(n - 1), "C"), ([P231], motzkin(n - 1), "M"),
            ([P213], powers_of_two_shifted(n), "2^"), ([P312], powers_of_two_shifted(n), "2^"),
            ([P213, P231], fibonacci(n), "F"), ([P231, P312], fibonacci(n), "F"),
        ]
        for ps, expected, label in pairs:
            got = count_avoiding(n, ps)
            r.expect(got == expected, f"n={n} {pattern_key(ps)}: {got} != {label}{expected}")
    return r


def run(scope: str = "all", n_max: int = 9) -> list[Report]:
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {', '.join(SCOPES)}")
    if not 3 <= n_max <= DIRECT_MAX:
        raise GuardError(f"n_max={n_max} outside 3..{DIRECT_MAX}")
    reports: list[Report] = []
    if scope in ("all", "core"):
        reports += [check_runs(n_max), check_set_partitions(n_max),
                    check_oracle_equivalence(n_max), check_counter(n_max)]
        reports += check_reference_tables(n_max)
        reports += check_213_structure(n_max)
        reports += check_prefix_lemmas(n_max)
    if scope in ("all", "bijections"):
        reports += check_f(n_max)
        reports += [check_swap23(n_max), check_h(n_max), check_alpha(n_max)]
    if scope in ("all", "series"):
        reports += [
            check_runs_statistic(n_max), check_inv_statistic(n_max),
            verify_motzkin_recurrence(n_max), verify_pair_recurrences(n_max),
            check_ogf(n_max), check_row_sums(n_max), check_reference_sequences(n_max),
        ]
    return reports
