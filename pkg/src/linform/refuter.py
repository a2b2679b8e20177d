"""Search for sets and colourings that violate the density or colouring bound.

A search that finds nothing says only that no witness exists at that n.  It
never establishes the property; that comes from :func:`linform.equation.classify`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import budget, kernels
from .counting import (
    PointSet,
    TwoColoring,
    count_solutions_in_set,
    equation_tables,
    monochromatic_count,
    resolve_rhs,
)
from .equation import LinearEquation
from .errors import BudgetExceeded

MAX_POINTS = 24
# Up to this many points the searches bin solution tuples into a 2^N table;
# beyond it the compiled Gray-code sweep is used.
ZETA_MAX_POINTS = 22
# Exhaustive sweeps may use this multiple of the enumeration budget.
SEARCH_BUDGET_FACTOR = 100


@dataclass(frozen=True)
class SearchResult:
    kind: str  # "sidorenko" | "common"
    n: int
    found: bool
    mask: int  # most violating (or least slack) object seen; the witness when found
    count: int  # solutions in the set, or monochromatic solutions
    threshold_lhs: int
    threshold_rhs: int
    method: str

    @property
    def slack(self) -> int:
        return self.threshold_lhs - self.threshold_rhs

    @property
    def witness(self) -> int | None:
        return self.mask if self.found else None

    def to_dict(self) -> dict:
        out = {"found": self.found, "kind": self.kind, "n": self.n, "method": self.method}
        if self.found:
            out["witness"] = f"{self.mask:#x}"
        else:
            out["extremal"] = f"{self.mask:#x}"
        out.update(
            count=self.count,
            threshold_lhs=self.threshold_lhs,
            threshold_rhs=self.threshold_rhs,
            slack=self.slack,
            conclusion=(
                f"violation at n={self.n}"
                if self.found
                else f"no witness at n={self.n}; this does not prove the property"
            ),
        )
        return out


def _sidorenko_result(L, b, A: PointSet, method: str) -> SearchResult:
    N = L.field.q**A.n
    cnt = count_solutions_in_set(L, b, A)
    lhs, rhs = N * cnt, A.size**L.total_vars
    return SearchResult("sidorenko", A.n, lhs < rhs, A.mask, cnt, lhs, rhs, method)


def _common_result(L, b, chi: TwoColoring, method: str) -> SearchResult:
    K = L.total_vars
    N = L.field.q**chi.n
    mono = monochromatic_count(L, b, chi)
    lhs, rhs = 2 ** (K - 1) * mono, N ** (K - 1)
    return SearchResult("common", chi.n, lhs < rhs, chi.mask, mono, lhs, rhs, method)


def _check_search(L: LinearEquation, n: int, max_points: int) -> int:
    N = L.field.q**n
    if N > max_points:
        raise BudgetExceeded(f"2^{N} subsets is beyond the exhaustive range (q^n <= {max_points})")
    if N <= ZETA_MAX_POINTS:
        work = N ** (L.k - 1) + N * (1 << N)
    else:
        work = (1 << N) * L.k * N ** max(L.k - 2, 0)
    if work > SEARCH_BUDGET_FACTOR * budget():
        raise BudgetExceeded(f"exhaustive search needs ~{work} steps")
    if (N + 1) ** (L.total_vars + 1) * 2**L.total_vars >= 2**62:
        raise BudgetExceeded("counts would overflow the 64-bit search kernel")
    return N


def exhaustive_sidorenko_search(
    L: LinearEquation, b=None, n: int = 1, max_points: int = MAX_POINTS
) -> SearchResult:
    """Minimise q^n * count(A) - |A|^K over every A, ties to the smallest mask."""
    _check_search(L, n, max_points)
    bi = resolve_rhs(L, n, b)
    scale, add, solve = equation_tables(L, n, bi)
    obj, mask, _ = kernels.search_sidorenko(scale, add, solve, L.free_count)
    result = _sidorenko_result(L, bi, PointSet.from_mask(L.field, n, mask), "exhaustive")
    if result.slack != obj:
        raise ArithmeticError(f"search kernel objective {obj} disagrees with exact recount {result.slack}")
    return result


def exhaustive_common_search(
    L: LinearEquation, b=None, n: int = 1, max_points: int = MAX_POINTS
) -> SearchResult:
    """Minimise 2^(K-1) * mono(chi) - q^(n(K-1)) over colourings.

    A colouring and its complement have equal counts, so only colourings with
    the last element in colour 0 are visited.
    """
    _check_search(L, n, max_points)
    bi = resolve_rhs(L, n, b)
    scale, add, solve = equation_tables(L, n, bi)
    obj, mask, _, _ = kernels.search_common(scale, add, solve, L.free_count)
    result = _common_result(L, bi, TwoColoring.from_mask(L.field, n, mask), "exhaustive")
    if result.slack != obj:
        raise ArithmeticError(f"search kernel objective {obj} disagrees with exact recount {result.slack}")
    return result


def random_search(
    L: LinearEquation, b=None, n: int = 1, trials: int = 1000, seed: int = 0, kind: str = "sidorenko"
) -> SearchResult | None:
    """Random subsets (even trials: density 1/2; odd trials: uniform random density).

    Returns the first violator, or None.  Deterministic given ``seed``.
    """
    if kind not in ("sidorenko", "common"):
        raise ValueError(f"unknown kind {kind!r}")
    bi = resolve_rhs(L, n, b)
    N = L.field.q**n
    if L.k * N * N > budget():
        raise BudgetExceeded(f"one count at q^n = {N} exceeds the budget")
    rng = np.random.default_rng(seed)
    for t in range(trials):
        density = 0.5 if t % 2 == 0 else rng.uniform()
        member = rng.random(N) < density
        if kind == "sidorenko":
            res = _sidorenko_result(L, bi, PointSet(L.field, n, member), f"random(seed={seed}, trial={t})")
        else:
            res = _common_result(L, bi, TwoColoring(L.field, n, member), f"random(seed={seed}, trial={t})")
        if res.found:
            return res
    return None
