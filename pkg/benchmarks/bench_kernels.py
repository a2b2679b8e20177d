"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends are imported directly, so no environment switch is needed.
Each row also checks that the two backends return the same result.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from linform import _fallback
from linform.counting import equation_tables
from linform.equation import make_equation
from linform.field import field_of_order

try:
    from linform import _kernels
except ImportError:  # extension not built
    _kernels = None


def best_time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    for q, n, coeffs in [(5, 2, [1, 3, 1]), (7, 2, [1, 2, 3, 4]), (3, 5, [1, 1, 2, 2, 1]), (5, 4, [1, 2, 3, 4, 1, 2]), (7, 3, [1, 2, 3, 4])]:
        L = make_equation(field_of_order(q), coeffs)
        tables = equation_tables(L, n, 0)
        N = q**n
        member = (rng.random(N) < 0.5).astype(np.uint8)
        f = rng.random(N).astype(np.complex128)
        label = f"q={q} n={n} k={len(coeffs)}"
        yield f"count    {label}", "count_solutions", (member, *tables)
        yield f"lambda   {label}", "lambda_sum", (f, *tables)
    for q, n, coeffs in [(2, 4, [1, 1, 1, 1]), (16, 1, [1, 1, 2, 2]), (19, 1, [1, 18, 2])]:
        L = make_equation(field_of_order(q), coeffs)
        tables = equation_tables(L, n, 0)
        label = f"q={q} n={n} k={len(coeffs)}"
        yield f"sid-srch {label}", "search_sidorenko", (*tables, 0)
        yield f"com-srch {label}", "search_common", (*tables, 0)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels is None:
        print("compiled kernels are not built; nothing to compare")
        return 1

    print(f"{'case':<30} {'cython ms':>10} {'numpy ms':>10} {'speedup':>8}  same")
    for label, name, fn_args in cases():
        tc, rc = best_time(lambda: getattr(_kernels, name)(*fn_args), args.repeat)
        tn, rn = best_time(lambda: getattr(_fallback, name)(*fn_args), args.repeat)
        same = abs(rc - rn) < 1e-6 * (1 + abs(rn)) if name == "lambda_sum" else rc == rn
        print(f"{label:<30} {1e3 * tc:>10.3f} {1e3 * tn:>10.3f} {tn / tc:>8.1f}  {same}")

    # the two compiled search strategies on one case
    L = make_equation(field_of_order(16), [1, 1, 2, 2])
    tables = equation_tables(L, 1, 0)
    tg, _ = best_time(lambda: _kernels.search_sidorenko_gray(*tables, 0), 1)
    tz, _ = best_time(lambda: _kernels.search_sidorenko_zeta(*tables, 0), args.repeat)
    print(f"\nsidorenko search q=16 k=4: gray-code {tg:.3f}s, subset-sum {tz:.4f}s")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
