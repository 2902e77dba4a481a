"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Everything is exact arithmetic; the only tolerances are the two wall-clock
budgets (criteria 1 and 9).  Criterion 7 is implemented exactly as stated
and is expected to fail: its universal vanishing claim does not hold (see
the companion test below it, which verifies the statement that is actually
true: the vanishing window is equivalent to passing the integrality check).
"""

import random
import time
from fractions import Fraction

from grassnest.chern import (
    complete_homogeneous,
    quadratic_gram_determinant,
    quotient_total_chern,
    smoothness_certificate,
    tautological_total_chern,
    trunc_mul,
    verify_homogeneous_identities,
)
from grassnest.ffield import field_make, invertible_matrices
from grassnest.grassmann import gaussian_binomial, incidence_graph
from grassnest.nesting import (
    find_bijective_nesting,
    hall_subset_stats,
    linear_nesting_classifier,
    perp,
    standard_alternating_form,
    symplectic_nesting_map,
    verify_matching_nesting,
)
from grassnest.schwarzenberger import (
    ChernCandidate,
    binomial_root_sum,
    classify_chern_splits,
    cyclotomic,
    enumerate_cyclotomic_products,
    euler_phi,
    schwarzenberger_check,
)

MATCHING_CONFIGS = [
    (2, 4, 1, 3, 15),
    (3, 4, 1, 3, 40),
    (2, 5, 2, 3, 155),
    (2, 6, 2, 4, 651),
    (2, 6, 1, 5, 63),
]

_INCIDENCES = {}


def _incidence(q, n, i, j):
    key = (q, n, i, j)
    if key not in _INCIDENCES:
        _INCIDENCES[key] = incidence_graph(i, j, n, field_make(q))
    return _INCIDENCES[key]


def _report(num, ok, detail):
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def test_criterion_01_bijective_nesting_matchings():
    t0 = time.monotonic()
    sizes = []
    for q, n, i, j, expected in MATCHING_CONFIGS:
        inc = _incidence(q, n, i, j)
        matching = find_bijective_nesting(inc)
        assert matching.perfect, (q, n, i, j)
        assert len(matching.pairs) == expected == gaussian_binomial(n, i, q)
        assert verify_matching_nesting(matching)  # incident, injective
        assert set(matching.pairs.values()) == set(range(len(inc.right)))  # surjective
        sizes.append(len(matching.pairs))
    elapsed = time.monotonic() - t0
    ok = sizes == [e for *_, e in MATCHING_CONFIGS] and elapsed < 60
    _report(1, ok, f"perfect matchings of sizes {sizes} in {elapsed:.2f}s (< 60s)")


def test_criterion_02_symplectic_perp_cross_witness():
    checked = 0
    for q in (2, 3):
        for n in (4, 6):
            field = field_make(q)
            form = standard_alternating_form(field, n)
            matching = symplectic_nesting_map(form)
            assert matching.perfect
            assert len(matching.pairs) == gaussian_binomial(n, 1, q)
            assert verify_matching_nesting(matching)
            for line in matching.left:
                assert perp(perp(line, form), form).id == line.id
            checked += len(matching.pairs)
    _report(2, True, f"perp map perfect and involutive on {checked} lines "
                     "over GF(2), GF(3), n in {4, 6}")


def test_criterion_03_hall_diagnostics():
    worst = None
    for q, n, i, j, _ in MATCHING_CONFIGS:
        inc = _incidence(q, n, i, j)
        big_n = inc.left_degree
        rng = random.Random(0)
        num_left = len(inc.left)
        for _ in range(1000):
            k = rng.randint(1, num_left)
            stats = hall_subset_stats(inc, rng.sample(range(num_left), k))
            assert stats.pairs == stats.k_n == k * big_n
            assert stats.slack >= 0, (q, n, i, j, k)
            if worst is None or stats.slack < worst:
                worst = stats.slack
    _report(3, worst is not None and worst >= 0,
            f"5000 sampled subsets, min union slack {worst} >= 0, "
            "double count exact on every sample")


def test_criterion_04_whitney_truncation_identity():
    checked = 0
    for i in (1, 2, 3):
        for n in range(i + 1, 10):
            prod = trunc_mul(quotient_total_chern(i, n),
                             tautological_total_chern(i, n - i))
            assert prod.is_one(), (i, n)
            checked += 1
    _report(4, True, f"product with the tautological class is exactly 1 "
                     f"for all {checked} pairs (i <= 3, n <= 9)")


def test_criterion_05_homogeneous_sum_identities():
    report = verify_homogeneous_identities(12)
    _report(5, report.ok, "recursion and derivative identities exact for d <= 12")


def test_criterion_06_boundary_gcd_certificate():
    chain = smoothness_certificate(50)
    det = quadratic_gram_determinant(complete_homogeneous(2, 3, 2))
    ok = chain.passed and det == Fraction(1, 2)
    _report(6, ok, f"gcd(u_d, u_(d-1)) = 1 for d = 2..50; quadric Gram det = {det}")


def _hypothesis_pairs(max_rank=8, max_m=10):
    for cand in enumerate_cyclotomic_products(max_rank):
        for m in range(cand.rank + 2, max_m + 1):
            yield cand, m


def _zero_window_holds(cand, m):
    interior = all(binomial_root_sum(cand, s, m) == 0 for s in range(1, m - 1))
    column = all(binomial_root_sum(cand, 1, k) == 0 for k in range(3, m + 1))
    return interior and column


def test_criterion_07_vanishing_window_as_stated():
    # As stated: every squarefree cyclotomic product with r <= m - 2, m <= 10
    # has vanishing sums on the window.  The bound |B| < 1 does hold, but the
    # universal vanishing claim is false (e.g. 1 + t^3 at m = 5 gives 1/8);
    # the sums vanish only for candidates whose sums are a priori integers.
    bound_failures = []
    zero_failures = []
    pairs = 0
    for cand, m in _hypothesis_pairs():
        pairs += 1
        for s in range(1, m - 1):
            value = binomial_root_sum(cand, s, m)
            if not abs(value) < 1:
                bound_failures.append((cand.coeffs, s, m, value))
        if not _zero_window_holds(cand, m):
            zero_failures.append((cand.coeffs, m))
    ok = not bound_failures and not zero_failures
    detail = (
        f"{pairs} (candidate, m) pairs; bound failures: {len(bound_failures)}; "
        f"vanishing failures: {len(zero_failures)}"
    )
    if zero_failures:
        detail += f"; first counterexample {zero_failures[0]}"
    _report(7, ok, detail)


def test_criterion_07_companion_vanishing_iff_integral():
    # The statement that is actually true (and what the classification uses):
    # under the same hypotheses the window vanishes exactly for the candidates
    # passing the integrality check, and the bound |B| <= r/m < 1 always holds.
    survivors = set()
    for cand, m in _hypothesis_pairs():
        for s in range(1, m - 1):
            assert abs(binomial_root_sum(cand, s, m)) <= Fraction(cand.rank, m)
        passed = schwarzenberger_check(cand, m).passed
        assert _zero_window_holds(cand, m) == passed, (cand.coeffs, m)
        if passed:
            survivors.add(cand.coeffs)
    assert survivors == {(1, 1), (1, -1), (1, 0, -1)}
    print("criterion 7 (companion): PASS - vanishing window <=> integrality; "
          "bound |B| <= r/m < 1 everywhere; integral candidates are exactly "
          "1 + t, 1 - t, 1 - t^2")


def test_criterion_08_classification():
    for n in range(3, 13):
        table = classify_chern_splits(n)
        if n % 2:
            assert table.survivors == (), n
        else:
            got = {(e.j, e.p_coeffs, e.q_coeffs) for e in table.survivors}
            rest = tuple(_mul_all(d for d in range(2, n + 1) if n % d == 0 and d > 2))
            assert got == {(n - 1, (1, 1), rest), (2, rest, (1, 1))}, n
            j2 = next(e for e in table.survivors if e.j == 2)
            assert j2.annotation is not None
    # rank 1 and rank 2 outcomes: only 1 +- t and 1 - t^2 pass
    small = [c for c in enumerate_cyclotomic_products(2)]
    for m in range(4, 11):
        passing = {c.coeffs for c in small if schwarzenberger_check(c, m).passed}
        assert passing == {(1, 1), (1, -1), (1, 0, -1)}, m
    rank1 = [c for c in small if c.rank == 1]
    assert {c.coeffs for c in rank1} == {(1, 1), (1, -1)}
    _report(8, True, "odd n in 3..12 give no splits; even n give exactly "
                     "{j = 2, j = n-1}; rank-1 passes are 1 +- t, rank-2 pass is 1 - t^2")


def _mul_all(ds):
    out = (1,)
    for d in ds:
        factor = tuple(reversed(cyclotomic(d)))
        new = [0] * (len(out) + len(factor) - 1)
        for a, x in enumerate(out):
            for b, y in enumerate(factor):
                new[a + b] += x * y
        out = tuple(new)
    return out


def test_criterion_09_alternating_iff_nesting_sweep():
    t0 = time.monotonic()
    field = field_make(2)
    total = 0
    alternating = 0
    for gram in invertible_matrices(field, 4):
        verdict = linear_nesting_classifier(gram)
        assert verdict.agree, gram.entries
        total += 1
        alternating += verdict.is_alternating
    elapsed = time.monotonic() - t0
    # 28 = |GL(4,2)| / |Sp(4,2)| = 20160 / 720 nondegenerate alternating forms
    ok = total == 20160 and alternating == 28 and elapsed < 30
    _report(9, ok, f"all {total} invertible matrices agree "
                   f"({alternating} alternating) in {elapsed:.2f}s (< 30s)")


def test_criterion_10_integrality_reduction_soundness():
    rng = random.Random(0)
    pool = [d for d in range(1, 31) if euler_phi(d) <= 6]
    checked = 0
    while checked < 100:
        ds = set(rng.sample(pool, rng.randint(1, 3)))
        if sum(euler_phi(d) for d in ds) > 8:
            continue
        cand = ChernCandidate.from_coeffs(_mul_all(sorted(ds)))
        m = rng.randint(1, 8)
        reduced = schwarzenberger_check(cand, m).passed
        exhaustive = all(
            binomial_root_sum(cand, s, m).denominator == 1 for s in range(-50, 51)
        )
        assert reduced == exhaustive, (cand.coeffs, m)
        checked += 1
    _report(10, True, "100 seeded candidates: s in {0..m} verdict matches "
                      "exhaustive s in [-50, 50]")
