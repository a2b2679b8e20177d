from __future__ import annotations

from itertools import product

import pytest

from linform.counting import PointSet, TwoColoring, common_holds_exact, sidorenko_holds_exact
from linform.equation import classify, make_equation
from linform.errors import BudgetExceeded
from linform.field import field_of_order
from linform.refuter import exhaustive_common_search, exhaustive_sidorenko_search, random_search

from conftest import oracle_count


def eq(coeffs, q, free=0, rhs="zero"):
    return make_equation(field_of_order(q), coeffs, free, rhs)


def oracle_min_sidorenko_slack(L, n):
    N = L.field.q**n
    best = None
    for mask in range(1 << N):
        mem = [i for i in range(N) if mask >> i & 1]
        slack = N * oracle_count(L, n, 0, mem) - len(mem) ** L.total_vars
        if best is None or slack < best[0]:
            best = (slack, mask)
    return best


def test_sidorenko_witness_for_three_term_progression():
    L = eq([1, -2, 1], 5)
    res = exhaustive_sidorenko_search(L, n=1)
    assert res.found
    A = PointSet.from_mask(L.field, 1, res.witness)
    assert not sidorenko_holds_exact(L, None, A)
    assert (res.slack, res.witness) == oracle_min_sidorenko_slack(L, 1)
    # the classic witness {1,2,4}: 5 * 5 = 25 < 27
    B = PointSet.from_indices(L.field, 1, [1, 2, 4])
    assert 5 * oracle_count(L, 1, 0, B.indices) == 25 < 27


@pytest.mark.parametrize("coeffs,q,free,n", [([1, 2, 2], 3, 0, 2), ([1, 1, 1], 4, 1, 1), ([1, 1], 5, 1, 1), ([1, 3, 1], 5, 0, 1)])
def test_sidorenko_minimum_matches_oracle(coeffs, q, free, n):
    L = eq(coeffs, q, free)
    res = exhaustive_sidorenko_search(L, n=n)
    assert (res.slack, res.mask) == oracle_min_sidorenko_slack(L, n)


def test_absent_for_canceling_pairs():
    res = exhaustive_sidorenko_search(eq([1, 4], 5), n=1)
    assert not res.found and res.slack >= 0
    assert "does not prove" in res.to_dict()["conclusion"]


def test_common_examples():
    assert not exhaustive_common_search(eq([1, 1, 1], 2), n=1).found
    res = exhaustive_common_search(eq([1, 1], 2, rhs="nonzero"), n=1)
    assert res.found and res.count == 0
    chi = TwoColoring.from_mask(field_of_order(2), 1, res.witness)
    assert not common_holds_exact(eq([1, 1], 2, rhs="nonzero"), 1, chi)


def test_common_search_finds_even_unpaired_witness():
    L = eq([1, 1, 1, 1], 3)
    res = exhaustive_common_search(L, n=2)
    assert res.found
    assert not common_holds_exact(L, None, TwoColoring.from_mask(L.field, 2, res.witness))


def test_search_limits(monkeypatch):
    with pytest.raises(BudgetExceeded):
        exhaustive_sidorenko_search(eq([1, 1], 5), n=2, max_points=16)
    monkeypatch.setenv("LINFORM_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        exhaustive_sidorenko_search(eq([1, 1, 1, 1], 2), n=4)


def test_random_search():
    L = eq([1, 3, 1], 5)
    res = random_search(L, n=2, trials=10_000, seed=0)
    if res is not None:
        assert not sidorenko_holds_exact(L, None, PointSet.from_mask(L.field, 2, res.mask))
    assert random_search(L, n=1, trials=0) is None
    assert random_search(eq([1, 4], 5), n=2, trials=300, seed=3) is None
    assert random_search(eq([1, 4], 5), n=2, trials=300, seed=3, kind="common") is None
    assert random_search(L, n=2, trials=50, seed=9) == random_search(L, n=2, trials=50, seed=9)


@pytest.mark.slow
def test_consistency_with_classification():
    """Positive classifications never meet a witness at small q^n."""
    for q, n_max in ((2, 4), (3, 2), (5, 1)):
        F = field_of_order(q)
        for k in range(1, 5):
            for coeffs in product(range(1, q), repeat=k):
                if list(coeffs) != sorted(coeffs):
                    continue
                for free in (0, 1):
                    L = make_equation(F, list(coeffs), free)
                    v = classify(L)
                    for n in range(1, n_max + 1):
                        if v.sidorenko:
                            assert not exhaustive_sidorenko_search(L, n=n).found
                        if v.common:
                            assert not exhaustive_common_search(L, n=n).found
