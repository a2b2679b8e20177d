"""The compiled kernels and the numpy fallback must agree exactly."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from linform import _fallback
from linform.counting import equation_tables
from linform.equation import make_equation
from linform.field import field_of_order

compiled = pytest.importorskip("linform._kernels")

CASES = [
    (2, 4, [1, 1, 1], 1, 0),
    (2, 3, [1, 1, 1], 0, 0),
    (3, 1, [1, 2], 1, 0),
    (5, 1, [1, 3, 1], 0, 0),
    (4, 2, [1, 2, 3], 0, 1),
    (3, 2, [2, 2, 1, 1], 1, 0),
    (7, 1, [1, 1, 1, 1, 2], 0, 3),
    (9, 1, [4], 0, 2),
]


def tables(q, n, coeffs, free, b):
    L = make_equation(field_of_order(q), coeffs, free, "zero" if b == 0 else "nonzero")
    return equation_tables(L, n, b)


@pytest.mark.parametrize("case", CASES)
def test_counts_agree(case):
    q, n = case[:2]
    scale, add, solve = tables(*case)
    rng = np.random.default_rng(q * n)
    for _ in range(5):
        member = (rng.random(q**n) < 0.6).astype(np.uint8)
        assert compiled.count_solutions(member, scale, add, solve) == _fallback.count_solutions(member, scale, add, solve)
        if member.sum() <= 7:
            assert compiled.count_solutions(member, scale, add, solve, True) == _fallback.count_solutions(
                member, scale, add, solve, True
            )


@pytest.mark.parametrize("case", CASES)
def test_lambda_sums_agree(case):
    q, n = case[:2]
    scale, add, solve = tables(*case)
    f = np.random.default_rng(1).normal(size=q**n) + 1j * np.random.default_rng(2).normal(size=q**n)
    assert abs(compiled.lambda_sum(f, scale, add, solve) - _fallback.lambda_sum(f, scale, add, solve)) <= 1e-9 * (
        1 + abs(_fallback.lambda_sum(f, scale, add, solve))
    )


@pytest.mark.parametrize("case", [c for c in CASES if c[0] ** c[1] <= 16])
def test_searches_agree(case):
    free = case[3]
    scale, add, solve = tables(*case)
    expected = _fallback.search_sidorenko(scale, add, solve, free)
    assert compiled.search_sidorenko_gray(scale, add, solve, free) == expected
    assert compiled.search_sidorenko_zeta(scale, add, solve, free) == expected
    expected = _fallback.search_common(scale, add, solve, free)
    assert compiled.search_common_gray(scale, add, solve, free) == expected
    assert compiled.search_common_zeta(scale, add, solve, free) == expected


def test_subset_counts_agree():
    for case in CASES:
        if case[0] ** case[1] <= 16:
            t = tables(*case)
            assert np.array_equal(compiled.subset_counts(*t), _fallback._subset_counts(*t))


def test_gray_sweep_beyond_table_limit():
    # 23 points: the dispatcher must fall back to the Gray-code sweep
    scale, add, solve = tables(23, 1, [1, 22], 0, 0)
    assert compiled.search_sidorenko(scale, add, solve, 0) == compiled.search_sidorenko_gray(scale, add, solve, 0)


def test_pure_env_selects_fallback():
    env = dict(os.environ, LINFORM_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "import linform; print(linform.BACKEND)"], env=env, capture_output=True, text=True, check=True
    )
    assert out.stdout.strip() == "numpy"
