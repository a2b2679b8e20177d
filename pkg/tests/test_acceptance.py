"""Acceptance criteria, one test each.

Every test checks its values at the stated tolerance and its wall-clock
limit.  A PASS/FAIL line per criterion is printed in the terminal summary
(see ``conftest.pytest_terminal_summary``).  Run directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import sys
import time
from fractions import Fraction
from itertools import combinations_with_replacement, product

import numpy as np
import pytest

from linform.counting import (
    PointSet,
    TwoColoring,
    count_solutions_in_set,
    lambda_bruteforce,
    monochromatic_count,
    solution_density,
)
from linform.equation import (
    canceling_pair_partition,
    classify,
    classify_inhomogeneous,
    make_equation,
)
from linform.field import GroupVector, character, field_of_order, vector_space
from linform.forge import (
    forge,
    forge_freevar_odd,
    forge_inhom,
    forge_nonsidorenko_odd,
    forge_uncommon_even,
    sample_commonness_values,
    verify_certificate,
)
from linform.fourier import GroupFunction, inverse, lambda_spectral, transform
from linform.hilbert import find_cube_embedding, verify_embedding
from linform.refuter import exhaustive_common_search, exhaustive_sidorenko_search

from conftest import perfect_matching_exists


class Timer:
    def __init__(self, limit: float):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def expected_verdict(F, codes, free, homogeneous):
    """Case analysis from a brute-force matching search, independent of the library."""
    if not homogeneous:
        return False, len(codes) % 2 == 1 and free == 0
    if perfect_matching_exists(F, codes):
        return True, True
    if free >= 1 or len(codes) % 2 == 0:
        return False, False
    return False, True


def test_criterion_1_classification_table():
    """1. classification matches the pairing case analysis (q in 2,3,5; k in 2..4; l in 0,1; < 5 s)"""
    checked = 0
    with Timer(5.0):
        for q in (2, 3, 5):
            F = field_of_order(q)
            for k in (2, 3, 4):
                for codes in product(range(1, q), repeat=k):
                    for free in (0, 1):
                        L = make_equation(F, list(codes), free)
                        v = classify(L)
                        assert (v.sidorenko, v.common) == expected_verdict(F, codes, free, True), L.spec()
                        w = classify_inhomogeneous(L.with_rhs("nonzero"))
                        assert (w.sidorenko, w.common) == expected_verdict(F, codes, free, False), L.spec()
                        checked += 1
    assert checked == 2 * sum((q - 1) ** k for q in (2, 3, 5) for k in (2, 3, 4))


def test_criterion_2_spectral_matches_bruteforce():
    """2. |lambda_spectral - lambda_bruteforce| <= 1e-9, 100 real f per configuration (< 60 s)"""
    rng = np.random.default_rng(2024)
    worst = 0.0
    with Timer(60.0):
        for q, n, k, b, free in product((2, 3, 4, 5), (1, 2), (1, 2, 3, 4), (0, 1), (0, 1)):
            F = field_of_order(q)
            L = make_equation(F, list(rng.integers(1, q, size=k)), free, "zero" if b == 0 else "nonzero")
            for _ in range(100):
                f = GroupFunction(F, n, rng.random(q**n))
                diff = abs(lambda_spectral(L, b, f) - lambda_bruteforce(L, b, f))
                worst = max(worst, diff)
    assert worst <= 1e-9, worst


def test_criterion_3_nonzero_set_density_exact():
    """3. density of solutions in F_q minus {0} equals (1-1/q)^k + (-1/q)^k (q-1) exactly (< 5 s)"""
    rng = np.random.default_rng(3)
    with Timer(5.0):
        for q in (3, 5, 7):
            F = field_of_order(q)
            A = PointSet.from_indices(F, 1, range(1, q))
            for k in (2, 3, 4, 5):
                expected = (1 - Fraction(1, q)) ** k + Fraction(-1, q) ** k * (q - 1)
                for coeffs in ([1] * k, list(rng.integers(1, q, size=k))):
                    L = make_equation(F, coeffs)
                    assert solution_density(L, None, A) == expected, (q, coeffs)


def _unpairable(F, k, rng):
    while True:
        codes = list(rng.integers(1, F.q, size=k))
        if canceling_pair_partition([F(c) for c in codes]) is None:
            return make_equation(F, codes)


def test_criterion_4_forge_coverage():
    """4. every forge construction returns a verified certificate in its range (< 120 s)"""
    rng = np.random.default_rng(4)
    with Timer(120.0):
        for q, k in product((3, 5, 7, 9), (4, 6)):
            F = field_of_order(q)
            for _ in range(50):
                L = _unpairable(F, k, rng)
                cert = forge_uncommon_even(L, seed=0, max_tries=10_000)
                assert cert.margin >= 1e-6 and verify_certificate(cert), L.spec()

        for q, k in product((3, 5, 7, 9), (3, 5)):
            F = field_of_order(q)
            for codes in combinations_with_replacement(range(1, q), k):
                cert = forge_nonsidorenko_odd(make_equation(F, list(codes)))
                closed = 2.0**-k + (q - 1) * (-1 / (2 * q)) ** k
                assert abs(cert.value - closed) <= 1e-12

        for q, k, free in product((3, 5), (2, 3), (0, 1, 2)):
            F = field_of_order(q)
            for codes in combinations_with_replacement(range(1, q), k):
                L = make_equation(F, list(codes), free)
                if k % 2 == 1 and free >= 1:
                    assert verify_certificate(forge_freevar_odd(L))
                if k % 2 == 0 or free >= 1:
                    assert verify_certificate(forge_inhom(L.with_rhs("nonzero")))


def test_criterion_5_sampling_mean():
    """5. mean commonness over 10^4 random spectra is 2^(1-k) within 3 SE (q=5, k=4; < 30 s)"""
    F = field_of_order(5)
    with Timer(30.0):
        for coeffs in ([1, 1, 1, 1], [1, 2, 2, 3], [1, 1, 2, 3]):
            L = make_equation(F, coeffs)
            assert canceling_pair_partition(L.coeffs) is None
            vals = sample_commonness_values(L, 10_000, seed=5)
            se = vals.std(ddof=1) / np.sqrt(vals.size)
            assert abs(vals.mean() - 2.0**-3) <= 3 * se, (coeffs, vals.mean(), se)


def _pairing_positive(F, k_max=4):
    """Canonical pairable coefficient lists: first coefficient 1, pairs (a, -a) sorted."""
    neg = F.neg_table
    reps = sorted({min(a, int(neg[a])) for a in range(1, F.q)})
    for half in range(1, k_max // 2 + 1):
        for chosen in combinations_with_replacement(reps, half):
            if chosen[0] != 1 and 1 in reps:
                continue
            codes = []
            for a in chosen:
                codes += [a, int(neg[a])]
            yield codes


def test_criterion_6_refuter():
    """6. witness for x1 - 2x2 + x3 over F_5; no witness for pairable equations at q^n <= 16 (< 60 s)"""
    with Timer(60.0):
        F5 = field_of_order(5)
        L = make_equation(F5, [1, -2, 1])
        res = exhaustive_sidorenko_search(L, n=1)
        assert res.found and res.threshold_lhs < res.threshold_rhs
        A = PointSet.from_indices(F5, 1, [1, 2, 4])
        assert 5 * count_solutions_in_set(L, None, A) == 25 < 27 == A.size**3

        spaces = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)] + [(q, 1) for q in (5, 7, 8, 9, 11, 13, 16)]
        runs = 0
        for q, n in spaces:
            F = field_of_order(q)
            for codes in _pairing_positive(F):
                for free in (0, 1):
                    L = make_equation(F, codes, free)
                    assert classify(L).sidorenko
                    assert not exhaustive_sidorenko_search(L, n=n).found, (L.spec(), n)
                    assert not exhaustive_common_search(L, n=n).found, (L.spec(), n)
                    runs += 2
        assert runs > 0


def test_criterion_7_ccs_invariance():
    """7. k=3 monochromatic counts depend only on class sizes, q in 3,5,7 (< 30 s)"""
    with Timer(30.0):
        for q in (3, 5, 7):
            F = field_of_order(q)
            colorings = [TwoColoring.from_mask(F, 1, m) for m in range(1 << q)]
            sizes = [bin(m).count("1") for m in range(1 << q)]
            for codes in product(range(1, q), repeat=3):
                L = make_equation(F, list(codes))
                by_size: dict[int, int] = {}
                for chi, s in zip(colorings, sizes):
                    c = monochromatic_count(L, None, chi)
                    assert by_size.setdefault(s, c) == c, (codes, s)


def test_criterion_8_hilbert_embedding():
    """8. cube embedding over F_11 at t=3 reproduced and verified on all 14641 tuples; no pairing (< 10 s)"""
    with Timer(10.0):
        F = field_of_order(11)
        L = make_equation(F, [-6, 3, 1, 7, 2, -4, -2, -1])
        emb = find_cube_embedding(L, 3)
        # x1 -> {}, x2 -> {1}, x3 -> {2}, x4 -> {3}, x5 -> {1,2}, x6 -> {1,3}, x7 -> {2,3}, x8 -> {1,2,3}
        assert emb == [0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
        assert verify_embedding(L, 3, emb)
        assert canceling_pair_partition(L.coeffs) is None


def test_criterion_9_property_suites():
    """9. Parseval/round trip 1e-12, characters 1e-10, fiber constancy exact, certificates 1e-9"""
    rng = np.random.default_rng(9)
    for q, n in ((2, 4), (3, 3), (4, 2), (5, 2), (7, 2), (9, 1), (25, 2), (5, 4)):
        F = field_of_order(q)
        for _ in range(5):
            f = GroupFunction(F, n, rng.normal(size=q**n) + 1j * rng.normal(size=q**n))
            S = transform(f)
            energy = np.mean(np.abs(f.values) ** 2)
            assert abs(energy - np.sum(np.abs(S.values) ** 2)) <= 1e-12 * max(1.0, energy)
            assert np.max(np.abs(inverse(S).values - f.values)) <= 1e-12

    for q, n in ((2, 3), (3, 2), (4, 2), (5, 1), (8, 1), (9, 1), (5, 3)):
        F = field_of_order(q)
        V = vector_space(F, n)
        chi = np.array([[character(GroupVector(y, n, F), GroupVector(x, n, F)) for x in range(V.size)] for y in range(V.size)])
        assert np.max(np.abs(chi[:, V.add_table] - chi[:, :, None] * chi[:, None, :])) <= 1e-10
        sums = chi.sum(axis=1)
        assert abs(sums[0] - V.size) <= 1e-10 and np.max(np.abs(sums[1:])) <= 1e-10

    for q, n in ((2, 2), (3, 2), (5, 2), (4, 2), (7, 1)):
        F = field_of_order(q)
        L = make_equation(F, [1, 2 % q or 1, 1], 1)
        full = PointSet.full(F, n)
        fibers = [count_solutions_in_set(L if b == 0 else L.with_rhs("nonzero"), b, full) for b in range(q**n)]
        assert fibers == [q ** (n * (L.total_vars - 1))] * q**n

    for spec_ in (([1, 1, 1, 1], 5, 0, "common"), ([1, 1, 1], 7, 0, "sidorenko"), ([1, 2, 2], 3, 1, "common")):
        coeffs, q, free, kind = spec_
        assert verify_certificate(forge(make_equation(field_of_order(q), coeffs, free), kind))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
