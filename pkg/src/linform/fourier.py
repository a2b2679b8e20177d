"""Fourier analysis on F_q^n and spectral evaluation of Lambda.

Normalisation: ``fhat(y) = E_x f(x) conj(gamma_y(x))`` and
``f(x) = sum_y fhat(y) gamma_y(x)``.  Both directions run as n passes of
the q x q single-coordinate character matrix over a (q,)*n tensor.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._backend import budget
from .counting import PointSet, header_line, resolve_rhs, _parse_header
from .equation import LinearEquation
from .errors import BudgetExceeded, FieldMismatch, NotRealRange, NumericalInconsistency, ParseError
from .field import Field, vector_space

REAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GroupFunction:
    field: Field
    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.field.q**self.n,):
            raise ValueError(f"expected {self.field.q**self.n} values, got {vals.shape}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("function values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def indicator(cls, A: PointSet) -> "GroupFunction":
        return cls(A.field, A.n, A.member.astype(np.complex128))

    @classmethod
    def constant(cls, field: Field, n: int, c: complex) -> "GroupFunction":
        return cls(field, n, np.full(field.q**n, c, dtype=np.complex128))

    def mean(self) -> complex:
        return complex(self.values.mean())

    def is_real(self, tol: float = 1e-12) -> bool:
        return bool(np.all(np.abs(self.values.imag) <= tol))

    def in_unit_range(self, tol: float = 1e-12) -> bool:
        re = self.values.real
        return self.is_real(tol) and bool(np.all((re >= -tol) & (re <= 1 + tol)))

    def complement(self) -> "GroupFunction":
        return GroupFunction(self.field, self.n, 1 - self.values)

    def translate(self, t: int) -> "GroupFunction":
        """x -> f(x + t)."""
        V = vector_space(self.field, self.n)
        return GroupFunction(self.field, self.n, self.values[V.add_table[:, t]])


@dataclass(frozen=True, eq=False)
class Spectrum:
    field: Field
    n: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.field.q**self.n,):
            raise ValueError(f"expected {self.field.q**self.n} values, got {vals.shape}")
        object.__setattr__(self, "values", vals)


def _apply_axes(values: np.ndarray, kernel: np.ndarray, q: int, n: int) -> np.ndarray:
    limit = budget()
    if n * q ** (n + 1) > limit:
        raise BudgetExceeded(f"transform of size {q}^{n} exceeds budget {limit}")
    arr = values.reshape((q,) * n)
    # contracting the last axis and prepending the result rotates the axes; n passes restore them
    for _ in range(n):
        arr = np.tensordot(kernel, arr, axes=([1], [n - 1]))
    return np.ascontiguousarray(arr).reshape(-1)


def transform(f: GroupFunction) -> Spectrum:
    V = vector_space(f.field, f.n)
    kernel = np.conj(V.axis_kernel) / f.field.q
    return Spectrum(f.field, f.n, _apply_axes(f.values, kernel, f.field.q, f.n))


def inverse(S: Spectrum) -> GroupFunction:
    V = vector_space(S.field, S.n)
    return GroupFunction(S.field, S.n, _apply_axes(S.values, V.axis_kernel, S.field.q, S.n))


def _twisted_sum(L: LinearEquation, F: np.ndarray, n: int, b: int, skip_zero: bool = False) -> complex:
    V = vector_space(L.field, n)
    prod = np.ones(V.size, dtype=np.complex128)
    for a in L.codes:
        prod = prod * F[V.scale(a)]
    if b:
        prod = prod * V.character_row(b)
    if skip_zero:
        prod[0] = 0
    return complex(prod.sum())


def lambda_spectral(L: LinearEquation, b, f: GroupFunction) -> complex:
    """(fhat(0))^l * sum_y fhat(a_1 y)...fhat(a_k y) gamma_y(b)."""
    if f.field != L.field:
        raise FieldMismatch("function and equation over different fields")
    bi = resolve_rhs(L, f.n, b)
    F = transform(f).values
    return F[0] ** L.free_count * _twisted_sum(L, F, f.n, bi)


def lambda_from_spectrum(L: LinearEquation, b, S: Spectrum) -> complex:
    bi = resolve_rhs(L, S.n, b)
    return S.values[0] ** L.free_count * _twisted_sum(L, S.values, S.n, bi)


def commonness_from_spectrum(L: LinearEquation, b, S: Spectrum) -> float:
    """Lambda(f) + Lambda(1 - f) from fhat, using (1-f)^(y) = -fhat(y) off zero."""
    bi = resolve_rhs(L, S.n, b)
    F = S.values
    mean = F[0]
    G = -F
    G[0] = 1 - mean
    k, ell = L.k, L.free_count
    value = mean**ell * _twisted_sum(L, F, S.n, bi) + (1 - mean) ** ell * _twisted_sum(L, G, S.n, bi)
    if abs(value.imag) > REAL_TOL:
        raise NumericalInconsistency(f"commonness functional has imaginary part {value.imag:.3e}")
    return float(value.real)


def commonness_functional(L: LinearEquation, b, f: GroupFunction) -> float:
    if f.field != L.field:
        raise FieldMismatch("function and equation over different fields")
    if not f.in_unit_range(REAL_TOL):
        raise NotRealRange("commonness functional needs a real function with values in [0, 1]")
    return commonness_from_spectrum(L, b, transform(f))


# -- file format ----------------------------------------------------------------


def _format_num(x: float) -> str:
    return f"{x:.17g}"


def parse_group_function(text: str) -> GroupFunction:
    """Header ``n=<int> q=<field>``, then q^n lines ``index,re[,im]``."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty function file", 0)
    n, F = _parse_header(lines[0])
    N = F.q**n
    vals = np.full(N, np.nan, dtype=np.complex128)
    offset = len(lines[0]) + 1
    for ln in lines[1:]:
        parts = [p.strip() for p in ln.split(",")]
        try:
            if len(parts) not in (2, 3):
                raise ValueError
            idx = int(parts[0])
            re = float(parts[1])
            im = float(parts[2]) if len(parts) == 3 else 0.0
        except ValueError:
            raise ParseError(f"bad line {ln!r}", offset) from None
        if not 0 <= idx < N or not np.isnan(vals[idx].real):
            raise ParseError(f"index {idx} out of range or repeated", offset)
        vals[idx] = complex(re, im)
        offset += len(ln) + 1
    if np.isnan(vals.real).any():
        raise ParseError(f"expected {N} values", offset)
    return GroupFunction(F, n, vals)


def format_group_function(f: GroupFunction | Spectrum) -> str:
    out = [header_line(f.field, f.n)]
    for i, v in enumerate(f.values):
        out.append(f"{i},{_format_num(v.real)},{_format_num(v.imag)}")
    return "\n".join(out) + "\n"


def load_group_function(path: str | Path) -> GroupFunction:
    return parse_group_function(Path(path).read_text())
