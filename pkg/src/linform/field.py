"""Finite fields GF(p^m), vectors over them, the trace map and additive characters.

Elements are integer codes: the polynomial ``c_0 + c_1 a + ... + c_{m-1} a^{m-1}``
is stored as ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.  A vector in ``F_q^n`` is
likewise packed little-endian in base ``q``.  All arithmetic goes through
precomputed tables, built once per field and cached.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DivisionByZero,
    FieldMismatch,
    LengthMismatch,
    NoDefaultModulus,
    NotPrime,
    ParseError,
    Reducible,
)

# Conway polynomials, little-endian coefficient lists c_0..c_m.
CONWAY_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 2): (2, 4, 1),
    (7, 2): (3, 6, 1),
}

# Largest q for which full q x q tables are built.
MAX_TABLE_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(num: list[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of ``num`` by the monic ``den`` over F_p (little-endian lists)."""
    num = [c % p for c in num]
    dd = len(den) - 1
    for top in range(len(num) - 1, dd - 1, -1):
        c = num[top]
        if c:
            shift = top - dd
            for i, dc in enumerate(den):
                num[shift + i] = (num[shift + i] - c * dc) % p
    return num[:dd]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for low in range(p**d):
            den = [(low // p**i) % p for i in range(d)] + [1]
            if not any(_poly_mod(list(modulus), den, p)):
                return False
    return True


@dataclass(frozen=True)
class Field:
    """The finite field F_q with q = p^m, in a polynomial basis.

    Construct through :func:`field_create`, which validates ``p`` and the modulus.
    """

    p: int
    m: int = 1
    modulus: tuple[int, ...] = (0, 1)

    @property
    def q(self) -> int:
        return self.p**self.m

    def __repr__(self) -> str:
        return f"Field({format_field_spec(self)})"

    # -- tables ---------------------------------------------------------------

    @cached_property
    def digits(self) -> np.ndarray:
        """Base-p digit matrix, shape (q, m)."""
        codes = np.arange(self.q)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return self.p ** np.arange(self.m)

    @cached_property
    def add_table(self) -> np.ndarray:
        d = self.digits
        s = (d[:, None, :] + d[None, :, :]) % self.p
        return (s @ self._weights).astype(np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return ((-self.digits) % self.p) @ self._weights

    @cached_property
    def mul_table(self) -> np.ndarray:
        p, m, d = self.p, self.m, self.digits
        if m == 1:
            c = np.arange(p)
            return (c[:, None] * c[None, :]) % p
        prod = np.zeros((self.q, self.q, 2 * m - 1), dtype=np.int64)
        for i in range(m):
            for j in range(m):
                prod[:, :, i + j] += d[:, None, i] * d[None, :, j]
        prod %= p
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[:, :, top].copy()
            for i in range(m + 1):
                prod[:, :, top - m + i] -= c * self.modulus[i]
            prod %= p
        return prod[:, :, :m] @ self._weights

    @cached_property
    def inv_table(self) -> np.ndarray:
        inv = np.zeros(self.q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        return inv

    @cached_property
    def trace_table(self) -> np.ndarray:
        """tr(a) = a + a^p + ... + a^(p^(m-1)), as an integer in [0, p)."""
        mul, add = self.mul_table, self.add_table
        codes = np.arange(self.q)
        power = codes.copy()
        total = codes.copy()
        for _ in range(self.m - 1):
            # a^(p^(i+1)) = (a^(p^i))^p
            nxt = power.copy()
            for _ in range(self.p - 1):
                nxt = mul[nxt, power]
            power = nxt
            total = add[total, power]
        return total

    @cached_property
    def roots_of_unity(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.p) / self.p)

    # -- convenience ----------------------------------------------------------

    def __call__(self, value: int) -> "FieldElement":
        return self.element(value)

    def element(self, value: int) -> "FieldElement":
        """Element from an integer literal.

        Codes in [0, q) are taken as-is.  Negative literals become the additive
        inverse of the code ``-value``; on prime fields every integer is reduced
        mod p.
        """
        if self.m == 1:
            return FieldElement(value % self.p, self)
        if 0 <= value < self.q:
            return FieldElement(value, self)
        if -self.q < value < 0:
            return FieldElement(int(self.neg_table[-value]), self)
        raise ValueError(f"integer literal {value} is not an element code of GF({self.q})")

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(c, self) for c in range(self.q)]

    def nonzero_elements(self) -> list["FieldElement"]:
        return [FieldElement(c, self) for c in range(1, self.q)]


def field_create(p: int, m: int = 1, modulus: Sequence[int] | None = None) -> Field:
    """Build GF(p^m); ``modulus`` is a little-endian monic coefficient list."""
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    p, m = int(p), int(m)
    if m == 1:
        return Field(p, 1, (0, 1))
    if modulus is None:
        if (p, m) not in CONWAY_POLYNOMIALS:
            raise NoDefaultModulus(f"no built-in modulus for q = {p**m}")
        modulus = CONWAY_POLYNOMIALS[p, m]
    mod = tuple(int(c) % p for c in modulus)
    if len(mod) != m + 1 or mod[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {m}")
    if p**m > MAX_TABLE_ORDER:
        raise ValueError(f"q = {p**m} exceeds the supported table size")
    if not is_irreducible(mod, p):
        raise Reducible(f"{_format_poly(mod)} is reducible over F_{p}")
    return Field(p, m, mod)


def field_of_order(q: int) -> Field:
    """GF(q) with its default modulus."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1 or q < 2:
        raise NotPrime(f"{q} is not a prime power")
    return field_create(p, m)


@dataclass(frozen=True)
class FieldElement:
    code: int
    field: Field = dc_field(repr=False)

    def _check(self, other: "FieldElement") -> "FieldElement":
        if isinstance(other, int):
            return self.field.element(other)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(int(self.field.add_table[self.code, other.code]), self.field)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(int(self.field.neg_table[self.code]), self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(int(self.field.mul_table[self.code, other.code]), self.field)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.code == 0:
            raise DivisionByZero(f"0 has no inverse in GF({self.field.q})")
        return FieldElement(int(self.field.inv_table[self.code]), self.field)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        return self.code

    def __index__(self) -> int:
        return self.code


def arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    """Dispatch one of ``add``, ``mul``, ``neg``, ``inv``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown operation {op!r}")


def trace(a: FieldElement) -> int:
    return int(a.field.trace_table[a.code])


@dataclass(frozen=True)
class GroupVector:
    """A vector of F_q^n, identified with its little-endian base-q index."""

    index: int
    n: int
    field: Field = dc_field(repr=False)

    @classmethod
    def from_coords(cls, coords: Sequence[FieldElement | int], field: Field) -> "GroupVector":
        idx = 0
        for j, c in enumerate(coords):
            if isinstance(c, FieldElement):
                if c.field != field:
                    raise FieldMismatch("coordinate from a different field")
                c = c.code
            idx += int(c) * field.q**j
        return cls(idx, len(coords), field)

    @classmethod
    def zero(cls, n: int, field: Field) -> "GroupVector":
        return cls(0, n, field)

    @property
    def coords(self) -> list[FieldElement]:
        q = self.field.q
        return [FieldElement((self.index // q**j) % q, self.field) for j in range(self.n)]

    def __add__(self, other: "GroupVector") -> "GroupVector":
        _check_pair(self, other)
        return GroupVector.from_coords([a + b for a, b in zip(self.coords, other.coords)], self.field)

    def scaled(self, a: FieldElement | int) -> "GroupVector":
        a = a if isinstance(a, FieldElement) else self.field.element(a)
        return GroupVector.from_coords([a * c for c in self.coords], self.field)


def _check_pair(x: GroupVector, y: GroupVector) -> None:
    if x.field != y.field:
        raise FieldMismatch("vectors over different fields")
    if x.n != y.n:
        raise LengthMismatch(f"lengths {x.n} and {y.n}")


def character(y: GroupVector, x: GroupVector) -> complex:
    """gamma_y(x) = exp(2 pi i tr(<x, y>) / p), plain dot product."""
    _check_pair(x, y)
    F = y.field
    dot = F.zero
    for a, b in zip(y.coords, x.coords):
        dot = dot + a * b
    return complex(F.roots_of_unity[F.trace_table[dot.code]])


class VectorSpace:
    """Index-level tables for F_q^n, shared by the counting and Fourier code."""

    def __init__(self, field: Field, n: int):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.field = field
        self.n = n
        self.q = field.q
        self.size = field.q**n
        codes = np.arange(self.size)
        self.digits = np.stack([(codes // self.q**j) % self.q for j in range(n)], axis=1)
        self.weights = self.q ** np.arange(n)

    def _pack(self, digits: np.ndarray) -> np.ndarray:
        return (digits @ self.weights).astype(np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        N = self.size
        out = np.zeros((N, N), dtype=np.int32)
        fa = self.field.add_table
        for j in range(self.n):
            d = self.digits[:, j]
            out += (fa[d[:, None], d[None, :]] * self.q**j).astype(np.int32)
        return out

    @cached_property
    def neg(self) -> np.ndarray:
        return self._pack(self.field.neg_table[self.digits])

    @lru_cache(maxsize=None)
    def scale(self, a: int) -> np.ndarray:
        """Index map x -> a*x for the scalar with code ``a``."""
        return self._pack(self.field.mul_table[a][self.digits])

    def add(self, x: int | np.ndarray, y: int | np.ndarray):
        return self.add_table[x, y]

    @lru_cache(maxsize=None)
    def character_row(self, b: int) -> np.ndarray:
        """gamma_y(b) for every dual label y."""
        F = self.field
        bd = self.digits[b]
        dot = np.zeros(self.size, dtype=np.int64)
        for j in range(self.n):
            dot = F.add_table[dot, F.mul_table[self.digits[:, j], bd[j]]]
        return F.roots_of_unity[F.trace_table[dot]]

    @cached_property
    def axis_kernel(self) -> np.ndarray:
        """q x q matrix gamma_y(x) on a single coordinate."""
        F = self.field
        return F.roots_of_unity[F.trace_table[F.mul_table]]


@lru_cache(maxsize=64)
def vector_space(field: Field, n: int) -> VectorSpace:
    return VectorSpace(field, n)


# -- text formats ---------------------------------------------------------------

_POLY_TERM = re.compile(r"^(\d*)\*?(?:x(?:\^(\d+))?)?$")


def _parse_poly(text: str, p: int) -> list[int]:
    coeffs: dict[int, int] = {}
    for term in text.replace(" ", "").split("+"):
        mt = _POLY_TERM.match(term)
        if not term or not mt:
            raise ParseError(f"bad polynomial term {term!r}", text.find(term))
        num, exp = mt.group(1), mt.group(2)
        has_x = "x" in term
        c = int(num) if num else 1
        e = int(exp) if exp else (1 if has_x else 0)
        coeffs[e] = (coeffs.get(e, 0) + c) % p
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def _format_poly(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def parse_field_spec(spec: str) -> Field:
    """Parse ``"q=5"``, ``"9"`` or ``"p=2,m=2,modulus=1+x+x^2"``."""
    s = spec.strip()
    if s.startswith("q="):
        s = s[2:]
    if s.isdigit():
        return field_of_order(int(s))
    parts: dict[str, str] = {}
    pos = 0
    for chunk in s.split(","):
        if "=" not in chunk:
            raise ParseError(f"expected key=value, got {chunk!r}", pos)
        key, val = chunk.split("=", 1)
        key = key.strip()
        if key not in ("p", "m", "modulus") or key in parts:
            raise ParseError(f"unexpected key {key!r}", pos)
        parts[key] = val.strip()
        pos += len(chunk) + 1
    if "p" not in parts:
        raise ParseError("field spec needs p", 0)
    try:
        p = int(parts["p"])
        m = int(parts.get("m", "1"))
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None
    modulus = _parse_poly(parts["modulus"], p) if "modulus" in parts else None
    return field_create(p, m, modulus)


def format_field_spec(F: Field) -> str:
    if F.m == 1:
        return f"q={F.p}"
    return f"p={F.p},m={F.m},modulus={_format_poly(F.modulus)}"
