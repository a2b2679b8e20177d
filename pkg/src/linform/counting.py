"""Exact solution counts, monochromatic counts and brute-force Lambda values.

Counts are Python integers; densities are :class:`fractions.Fraction`.  The
kernels in :mod:`linform._backend` build a histogram of partial sums
a_1 x_1 + ... + a_{k-1} x_{k-1} and solve for the last variable, so the work
is about k q^(2n) rather than q^(n(k-1)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import perm
from pathlib import Path

import numpy as np

from ._backend import budget, kernels
from .equation import LinearEquation
from .errors import BudgetExceeded, FieldMismatch, ParseError, RhsMismatch
from .field import Field, GroupVector, format_field_spec, parse_field_spec, vector_space


@dataclass(frozen=True, eq=False)
class PointSet:
    field: Field
    n: int
    member: np.ndarray  # bool, length q^n

    @classmethod
    def from_indices(cls, field: Field, n: int, indices) -> "PointSet":
        mem = np.zeros(field.q**n, dtype=bool)
        mem[list(indices)] = True
        return cls(field, n, mem)

    @classmethod
    def from_mask(cls, field: Field, n: int, mask: int) -> "PointSet":
        N = field.q**n
        return cls(field, n, np.array([(mask >> i) & 1 for i in range(N)], dtype=bool))

    @classmethod
    def full(cls, field: Field, n: int) -> "PointSet":
        return cls(field, n, np.ones(field.q**n, dtype=bool))

    @property
    def size(self) -> int:
        return int(self.member.sum())

    @property
    def mask(self) -> int:
        return sum(1 << int(i) for i in np.flatnonzero(self.member))

    @property
    def indices(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.member)]

    def complement(self) -> "PointSet":
        return PointSet(self.field, self.n, ~self.member)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PointSet)
            and (self.field, self.n) == (other.field, other.n)
            and bool(np.array_equal(self.member, other.member))
        )


@dataclass(frozen=True, eq=False)
class TwoColoring:
    """Colour 1 where ``color`` is set."""

    field: Field
    n: int
    color: np.ndarray

    @classmethod
    def from_mask(cls, field: Field, n: int, mask: int) -> "TwoColoring":
        return cls(field, n, PointSet.from_mask(field, n, mask).member)

    @property
    def classes(self) -> tuple[PointSet, PointSet]:
        """(colour-0 set, colour-1 set)."""
        return PointSet(self.field, self.n, ~self.color), PointSet(self.field, self.n, self.color.copy())

    @property
    def mask(self) -> int:
        return PointSet(self.field, self.n, self.color).mask

    def complement(self) -> "TwoColoring":
        return TwoColoring(self.field, self.n, ~self.color)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwoColoring)
            and (self.field, self.n) == (other.field, other.n)
            and bool(np.array_equal(self.color, other.color))
        )


# -- tables ---------------------------------------------------------------------


def resolve_rhs(L: LinearEquation, n: int, b: GroupVector | int | None = None) -> int:
    """Index of the right-hand side in F_q^n; nonzero equations default to index 1."""
    if isinstance(b, GroupVector):
        if b.field != L.field:
            raise FieldMismatch("right-hand side over a different field")
        if b.n != n:
            raise RhsMismatch(f"right-hand side has length {b.n}, expected {n}")
        b = b.index
    if b is None:
        b = 0 if L.homogeneous else 1
    if not 0 <= b < L.field.q**n:
        raise RhsMismatch(f"right-hand side index {b} out of range")
    if L.homogeneous and b != 0:
        raise RhsMismatch("homogeneous equation with nonzero right-hand side")
    if not L.homogeneous and b == 0:
        raise RhsMismatch("inhomogeneous equation with zero right-hand side")
    return b


@lru_cache(maxsize=512)
def _tables(field: Field, codes: tuple[int, ...], n: int, b: int):
    V = vector_space(field, n)
    scale = np.stack([V.scale(a) for a in codes]).astype(np.int32)
    add = np.ascontiguousarray(V.add_table, dtype=np.int32)
    b_minus = add[b, V.neg]  # b - s for every s
    inv = field.inv_table
    solve = np.stack([V.scale(int(inv[a]))[b_minus] for a in codes]).astype(np.int32)
    for arr in (scale, solve):
        arr.setflags(write=False)
    return scale, add, solve


def equation_tables(L: LinearEquation, n: int, b: int):
    """(scale, add, solve) index tables consumed by the kernels."""
    N = L.field.q**n
    if N * N > 1 << 26:
        raise BudgetExceeded(f"q^n = {N} too large for the addition table")
    return _tables(L.field, L.codes, n, b)


def _check_budget(work: int) -> None:
    limit = budget()
    if work > limit:
        raise BudgetExceeded(f"{work} inner iterations exceed budget {limit}")


def _check_set(L: LinearEquation, A: PointSet) -> None:
    if A.field != L.field:
        raise FieldMismatch("set and equation over different fields")


# -- counting -----------------------------------------------------------------


def count_solutions_in_set(
    L: LinearEquation, b: GroupVector | int | None, A: PointSet, distinct: bool = False
) -> int:
    """Tuples in A^(k+l) with a_1 x_1 + ... + a_k x_k = b.

    Free variables range over A unconstrained.  With ``distinct`` every
    coordinate, free ones included, must differ.
    """
    _check_set(L, A)
    bi = resolve_rhs(L, A.n, b)
    N = L.field.q**A.n
    if distinct:
        _check_budget(N ** (L.k - 1))
    else:
        _check_budget(L.k * N * N)
        if N ** (L.k - 1) >= 1 << 62:
            raise BudgetExceeded("solution count could overflow 64-bit arithmetic")
    scale, add, solve = equation_tables(L, A.n, bi)
    member = np.ascontiguousarray(A.member, dtype=np.uint8)
    core = kernels.count_solutions(member, scale, add, solve, distinct)
    if distinct:
        return core * perm(max(A.size - L.k, 0), L.free_count)
    return core * A.size**L.free_count


def monochromatic_count(
    L: LinearEquation, b: GroupVector | int | None, chi: TwoColoring, distinct: bool = False
) -> int:
    c0, c1 = chi.classes
    return count_solutions_in_set(L, b, c0, distinct) + count_solutions_in_set(L, b, c1, distinct)


def solution_density(L: LinearEquation, b, A: PointSet) -> Fraction:
    """Lambda(1_A) as an exact fraction: count / q^(n(K-1))."""
    N = L.field.q**A.n
    return Fraction(count_solutions_in_set(L, b, A), N ** (L.total_vars - 1))


def lambda_bruteforce(L: LinearEquation, b, f) -> complex:
    """Average of f(x_1)...f(x_K) over solution tuples, by direct enumeration."""
    if f.field != L.field:
        raise FieldMismatch("function and equation over different fields")
    bi = resolve_rhs(L, f.n, b)
    N = L.field.q**f.n
    _check_budget(L.k * N * N)
    scale, add, solve = equation_tables(L, f.n, bi)
    vals = np.ascontiguousarray(f.values, dtype=np.complex128)
    total = kernels.lambda_sum(vals, scale, add, solve) / N ** (L.k - 1)
    if L.free_count:
        total *= complex(vals.mean()) ** L.free_count
    return complex(total)


def sidorenko_holds_exact(L: LinearEquation, b, A: PointSet) -> bool:
    """q^n * count >= |A|^(k+l), in integers."""
    N = L.field.q**A.n
    return N * count_solutions_in_set(L, b, A) >= A.size**L.total_vars


def common_holds_exact(L: LinearEquation, b, chi: TwoColoring) -> bool:
    """2^(K-1) * monochromatic count >= q^(n(K-1)), in integers."""
    K = L.total_vars
    N = L.field.q**chi.n
    return 2 ** (K - 1) * monochromatic_count(L, b, chi) >= N ** (K - 1)


# -- file format ----------------------------------------------------------------


def _parse_header(line: str) -> tuple[int, Field]:
    n = field_text = None
    for tok in line.split():
        if tok.startswith("n="):
            try:
                n = int(tok[2:])
            except ValueError:
                raise ParseError(f"bad dimension {tok!r}", line.find(tok)) from None
        elif tok.startswith("q="):
            field_text = tok[2:]
        else:
            raise ParseError(f"unexpected header token {tok!r}", line.find(tok))
    if n is None or field_text is None:
        raise ParseError("header must be 'n=<int> q=<field>'", 0)
    return n, parse_field_spec(field_text)


def header_line(field: Field, n: int) -> str:
    return f"n={n} q={format_field_spec(field).removeprefix('q=')}"


def parse_point_set(text: str) -> PointSet:
    """Header line, then a ``0x``-prefixed hex mask or whitespace-separated indices."""
    lines = text.strip().splitlines()
    if not lines:
        raise ParseError("empty set file", 0)
    n, F = _parse_header(lines[0])
    body = " ".join(lines[1:]).split()
    N = F.q**n
    if len(body) == 1 and body[0].lower().startswith("0x"):
        mask = int(body[0], 16)
        if mask >> N:
            raise ParseError("mask has bits beyond q^n", len(lines[0]) + 1)
        return PointSet.from_mask(F, n, mask)
    idx = []
    for tok in body:
        if not tok.isdigit() or int(tok) >= N:
            raise ParseError(f"bad index {tok!r}", len(lines[0]) + 1)
        idx.append(int(tok))
    return PointSet.from_indices(F, n, idx)


def load_point_set(path: str | Path) -> PointSet:
    return parse_point_set(Path(path).read_text())


def load_coloring(path: str | Path) -> TwoColoring:
    A = load_point_set(path)
    return TwoColoring(A.field, A.n, A.member)


def format_point_set(A: PointSet) -> str:
    return f"{header_line(A.field, A.n)}\n{A.mask:#x}\n"
