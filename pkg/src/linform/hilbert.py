"""Hilbert cubes x + sum_{i in S} d_i and embeddings of cube systems into one equation.

Subsets S of {1..t} are bitmasks: bit i-1 set iff i in S.  Points are listed
in increasing mask order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .equation import LinearEquation
from .errors import ArityMismatch, NotApplicable, OutOfRange


@dataclass(frozen=True)
class CubeSystem:
    t: int

    @property
    def points(self) -> list[int]:
        return list(range(1 << self.t))

    @property
    def incidence(self) -> np.ndarray:
        """Row S, column i: whether i+1 is in S."""
        masks = np.arange(1 << self.t)
        return ((masks[:, None] >> np.arange(self.t)[None, :]) & 1).astype(bool)

    def relations(self) -> np.ndarray:
        """Integer matrix M with x M = 0 exactly on cube tuples.

        One column per S with |S| >= 2: x_S - sum_{i in S} x_{{i}} + (|S|-1) x_empty.
        """
        cols = []
        for S in range(1 << self.t):
            size = bin(S).count("1")
            if size < 2:
                continue
            col = np.zeros(1 << self.t, dtype=np.int64)
            col[S] += 1
            col[0] += size - 1
            for i in range(self.t):
                if S >> i & 1:
                    col[1 << i] -= 1
            cols.append(col)
        return np.stack(cols, axis=1) if cols else np.zeros((1 << self.t, 0), dtype=np.int64)

    def point_indices(self, x: int, diffs, add):
        """Indices of the 2^t cube points for base x and differences ``diffs`` (index arithmetic)."""
        pts = [x]
        for S in range(1, 1 << self.t):
            low = S & -S
            i = low.bit_length() - 1
            pts.append(int(add[pts[S ^ low], diffs[i]]))
        return pts


def cube_system(t: int) -> CubeSystem:
    if not 1 <= t <= 10:
        raise OutOfRange(f"cube dimension {t} outside 1..10")
    return CubeSystem(t)


def find_cube_embedding(L: LinearEquation, t: int) -> list[int] | None:
    """Lexicographically least assignment variable -> subset under which every
    dimension-t cube solves L = 0, or None.

    The conditions are: the coefficients sum to zero, and for each j the
    coefficients of variables whose subset contains j sum to zero.
    """
    if not L.homogeneous or L.free_count:
        raise NotApplicable("cube embedding needs a homogeneous equation without free variables")
    k = L.k
    if k != 1 << t:
        raise ArityMismatch(f"{k} variables but a dimension-{t} cube has {1 << t} points")
    F = L.field
    add, neg = F.add_table, F.neg_table
    codes = L.codes
    total = 0
    for a in codes:
        total = int(add[total, a])
    if total:
        return None

    full = 1 << t
    # remaining[j]: unassigned subsets containing j; partial[j]: sum of assigned coefficients on them
    remaining = [full // 2] * t
    partial = [0] * t
    used = [False] * full
    assign = [0] * k

    # prune once every subset containing j is used while partial[j] != 0
    def rec(v: int) -> bool:
        if v == k:
            return not any(partial)
        a = codes[v]
        for S in range(full):
            if used[S]:
                continue
            ok = True
            touched = []
            for j in range(t):
                if S >> j & 1:
                    partial[j] = int(add[partial[j], a])
                    remaining[j] -= 1
                    touched.append(j)
                    if remaining[j] == 0 and partial[j]:
                        ok = False
            if ok:
                used[S] = True
                assign[v] = S
                if rec(v + 1):
                    return True
                used[S] = False
            for j in touched:
                partial[j] = int(add[partial[j], neg[a]])
                remaining[j] += 1
        return False

    return list(assign) if rec(0) else None


def verify_embedding(L: LinearEquation, t: int, assignment: list[int]) -> bool:
    """Evaluate L on every cube (x, d_1..d_t) in F_q^(t+1)."""
    F = L.field
    add, mul = F.add_table, F.mul_table
    cube = cube_system(t)
    for x, *diffs in product(range(F.q), repeat=t + 1):
        pts = cube.point_indices(x, diffs, add)
        acc = 0
        for a, S in zip(L.codes, assignment):
            acc = int(add[acc, mul[a, pts[S]]])
        if acc:
            return False
    return True
