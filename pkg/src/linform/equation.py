"""Linear equations a_1 x_1 + ... + a_k x_k (+ free variables) = b and their classification."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import AllZero, ParseError, WrongRhsMode
from .field import Field, FieldElement, format_field_spec, parse_field_spec


class RhsMode(str, enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"


@dataclass(frozen=True)
class LinearEquation:
    field: Field
    coeffs: tuple[FieldElement, ...]
    free_count: int = 0
    rhs_mode: RhsMode = RhsMode.ZERO

    def __post_init__(self):
        if not self.coeffs:
            raise AllZero("an equation needs at least one nonzero coefficient")
        if any(c.code == 0 for c in self.coeffs):
            raise ValueError("coefficients must be nonzero; use normalize() to absorb zeros")
        if self.free_count < 0:
            raise ValueError("free_count must be non-negative")

    @property
    def k(self) -> int:
        return len(self.coeffs)

    @property
    def total_vars(self) -> int:
        return self.k + self.free_count

    @property
    def codes(self) -> tuple[int, ...]:
        return tuple(c.code for c in self.coeffs)

    @property
    def homogeneous(self) -> bool:
        return self.rhs_mode is RhsMode.ZERO

    def with_free(self, free_count: int) -> "LinearEquation":
        return LinearEquation(self.field, self.coeffs, free_count, self.rhs_mode)

    def with_rhs(self, rhs_mode: RhsMode | str) -> "LinearEquation":
        return LinearEquation(self.field, self.coeffs, self.free_count, RhsMode(rhs_mode))

    def spec(self) -> str:
        """Canonical text form, re-parseable by :func:`parse_equation_spec`."""
        lits = ",".join(str(c) for c in self.codes)
        return f"L={lits}; q={format_field_spec(self.field).removeprefix('q=')}; free={self.free_count}; b={self.rhs_mode.value}"


def make_equation(
    field: Field,
    coeffs: Sequence[int | FieldElement],
    free: int = 0,
    rhs_mode: RhsMode | str = RhsMode.ZERO,
) -> LinearEquation:
    """Convenience constructor from integer literals; zeros become free variables."""
    elems = [c if isinstance(c, FieldElement) else field.element(c) for c in coeffs]
    eq = normalize(elems, rhs_mode)
    return eq.with_free(eq.free_count + free)


def normalize(raw_coeffs: Sequence[FieldElement], rhs_mode: RhsMode | str = RhsMode.ZERO) -> LinearEquation:
    """Drop zero coefficients, counting them as free variables."""
    if not raw_coeffs:
        raise ValueError("no coefficients given")
    nonzero = tuple(c for c in raw_coeffs if c.code != 0)
    if not nonzero:
        raise AllZero("every coefficient is zero")
    return LinearEquation(raw_coeffs[0].field, nonzero, len(raw_coeffs) - len(nonzero), RhsMode(rhs_mode))


def canceling_pair_partition(coeffs: Sequence[FieldElement]) -> list[tuple[int, int]] | None:
    """Partition of the indices into pairs with a_i + a_j = 0, or None.

    Pairs are emitted smallest unused index first, each matched to the smallest
    unused partner.
    """
    if not coeffs:
        return []
    F = coeffs[0].field
    neg = F.neg_table
    tally = Counter(c.code for c in coeffs)
    for v, c in tally.items():
        w = int(neg[v])
        if w == v:
            if c % 2:
                return None
        elif tally.get(w, 0) != c:
            return None
    used = [False] * len(coeffs)
    pairs = []
    for i, a in enumerate(coeffs):
        if used[i]:
            continue
        target = int(neg[a.code])
        j = next(j for j in range(i + 1, len(coeffs)) if not used[j] and coeffs[j].code == target)
        used[i] = used[j] = True
        pairs.append((i, j))
    return pairs


@dataclass(frozen=True)
class Verdict:
    """Classification of an equation.

    ``basis`` names the case of the classification that decided it:
    ``canceling-pairs`` (pairing exists, any number of free variables),
    ``even-unpaired``, ``odd``, ``free-variables`` (no pairing and at least one
    free variable) and ``inhomogeneous``.
    """

    sidorenko: bool
    common: bool
    basis: str
    pairing: tuple[tuple[int, int], ...] | None = None
    degenerate: bool = False

    def to_dict(self) -> dict:
        out = {"sidorenko": self.sidorenko, "common": self.common, "basis": self.basis, "degenerate": self.degenerate}
        if self.pairing is not None:
            out["pairing"] = [list(p) for p in self.pairing]
        return out


def classify(L: LinearEquation) -> Verdict:
    if not L.homogeneous:
        raise WrongRhsMode("classify() takes a homogeneous equation; use classify_inhomogeneous()")
    degenerate = L.k == 1
    pairing = canceling_pair_partition(L.coeffs)
    if pairing is not None:
        return Verdict(True, True, "canceling-pairs", tuple(pairing), degenerate)
    if L.free_count >= 1:
        return Verdict(False, False, "free-variables", None, degenerate)
    if L.k % 2 == 0:
        return Verdict(False, False, "even-unpaired", None, degenerate)
    return Verdict(False, True, "odd", None, degenerate)


def classify_inhomogeneous(L: LinearEquation) -> Verdict:
    if L.homogeneous:
        raise WrongRhsMode("classify_inhomogeneous() takes an equation with nonzero right-hand side")
    common = L.k % 2 == 1 and L.free_count == 0
    return Verdict(False, common, "inhomogeneous", None, L.k == 1)


def classify_any(L: LinearEquation) -> Verdict:
    return classify(L) if L.homogeneous else classify_inhomogeneous(L)


def is_translation_invariant(L: LinearEquation) -> bool:
    total = L.field.zero
    for c in L.coeffs:
        total = total + c
    return total.code == 0


def parse_equation_spec(s: str) -> LinearEquation:
    """Parse ``"L=1,-2,1; q=5[; free=0][; b=zero|nonzero]"``."""
    fields: dict[str, tuple[str, int]] = {}
    pos = 0
    for chunk in s.split(";"):
        stripped = chunk.strip()
        offset = pos + (len(chunk) - len(chunk.lstrip()))
        pos += len(chunk) + 1
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(f"expected key=value, got {stripped!r}", offset)
        key, val = stripped.split("=", 1)
        key = key.strip()
        if key not in ("L", "q", "free", "b"):
            raise ParseError(f"unknown key {key!r}", offset)
        if key in fields:
            raise ParseError(f"duplicate key {key!r}", offset)
        fields[key] = (val.strip(), offset + len(key) + 1)
    for req in ("L", "q"):
        if req not in fields:
            raise ParseError(f"missing required key {req!r}", len(s))
    qtext, qpos = fields["q"]
    try:
        F = parse_field_spec(qtext)
    except ParseError as exc:
        raise ParseError(str(exc), qpos) from None
    ltext, lpos = fields["L"]
    lits = []
    for part in ltext.split(","):
        try:
            lits.append(int(part.strip()))
        except ValueError:
            raise ParseError(f"bad coefficient {part.strip()!r}", lpos + ltext.find(part)) from None
    free = 0
    if "free" in fields:
        ftext, fpos = fields["free"]
        if not ftext.isdigit():
            raise ParseError(f"bad free-variable count {ftext!r}", fpos)
        free = int(ftext)
    mode = RhsMode.ZERO
    if "b" in fields:
        btext, bpos = fields["b"]
        if btext not in ("zero", "nonzero"):
            raise ParseError(f"b must be zero or nonzero, got {btext!r}", bpos)
        mode = RhsMode(btext)
    try:
        elems = [F.element(v) for v in lits]
    except ValueError as exc:
        raise ParseError(str(exc), lpos) from None
    return make_equation(F, elems, free, mode)
