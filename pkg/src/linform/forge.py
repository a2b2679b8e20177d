"""Explicit counterexample functions on F_q (n = 1) with re-checkable certificates.

Every certificate stores the full witness table.  :func:`verify_certificate`
re-evaluates the violated functional along the spectral path and along the
brute-force enumeration path, independently.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .counting import PointSet, lambda_bruteforce, solution_density
from .equation import LinearEquation, RhsMode, canceling_pair_partition, parse_equation_spec
from .errors import CSearchFailed, ExhaustedTries, NotApplicable
from .field import vector_space
from .fourier import (
    GroupFunction,
    Spectrum,
    commonness_functional,
    inverse,
    lambda_spectral,
)

log = logging.getLogger(__name__)

# Rejection-sampling target: value < threshold - MARGIN_FLOOR.
MARGIN_FLOOR = 1e-6
# Agreement required between stored and recomputed values.
VERIFY_TOL = 1e-9
# Deterministic constructions must clear this margin.
CERT_FLOOR = 1e-9
RANGE_TOL = 1e-12
C_HALVINGS = 20


@dataclass
class Certificate:
    equation: LinearEquation
    rhs: int
    witness: GroupFunction
    functional_kind: str  # "sidorenko" | "common"
    value: float
    threshold: float
    margin: float
    parameters: dict = dc_field(default_factory=dict)
    alternate: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "equation": self.equation.spec(),
            "rhs": self.rhs,
            "n": self.witness.n,
            "functional_kind": self.functional_kind,
            "value": self.value,
            "threshold": self.threshold,
            "margin": self.margin,
            "parameters": self.parameters,
            "witness": [[float(v.real), float(v.imag)] for v in self.witness.values],
        }
        if self.alternate is not None:
            out["alternate"] = self.alternate
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        L = parse_equation_spec(d["equation"])
        vals = np.array([complex(re, im) for re, im in d["witness"]])
        return cls(
            equation=L,
            rhs=int(d["rhs"]),
            witness=GroupFunction(L.field, int(d["n"]), vals),
            functional_kind=d["functional_kind"],
            value=float(d["value"]),
            threshold=float(d["threshold"]),
            margin=float(d["margin"]),
            parameters=dict(d.get("parameters", {})),
            alternate=d.get("alternate"),
        )

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


# -- functional evaluation --------------------------------------------------------


def _real(z: complex, what: str) -> float:
    if abs(z.imag) > VERIFY_TOL:
        raise ValueError(f"{what} has imaginary part {z.imag:.3e}")
    return float(z.real)


def evaluate(L: LinearEquation, b: int, f: GroupFunction, kind: str, path: str = "spectral") -> float:
    """The functional a certificate of ``kind`` bounds, by ``path`` spectral or brute."""
    lam = lambda_spectral if path == "spectral" else lambda_bruteforce
    if kind == "sidorenko":
        return _real(lam(L, b, f), "Lambda")
    if kind == "common":
        if path == "spectral":
            return commonness_functional(L, b, f)
        return _real(lam(L, b, f) + lam(L, b, f.complement()), "Lambda(f) + Lambda(1-f)")
    raise ValueError(f"unknown functional kind {kind!r}")


def threshold_for(L: LinearEquation, f: GroupFunction, kind: str) -> float:
    K = L.total_vars
    if kind == "sidorenko":
        return float(f.mean().real) ** K
    return 2.0 ** (1 - K)


def _certify(L, b, f, kind, parameters, floor=CERT_FLOOR, alternate=None) -> Certificate | None:
    value = evaluate(L, b, f, kind)
    threshold = threshold_for(L, f, kind)
    margin = threshold - value
    if margin <= floor:
        return None
    return Certificate(L, b, f, kind, value, threshold, margin, parameters, alternate)


def _witness_from_spectrum(L: LinearEquation, fhat: np.ndarray) -> GroupFunction:
    f = inverse(Spectrum(L.field, 1, fhat))
    vals = f.values
    if np.abs(vals.imag).max() > RANGE_TOL:
        raise ArithmeticError("constructed witness is not real")
    re = vals.real
    if re.min() < -RANGE_TOL or re.max() > 1 + RANGE_TOL:
        raise ArithmeticError("constructed witness leaves [0, 1]")
    return GroupFunction(L.field, 1, np.clip(re, 0.0, 1.0))


def _require_homogeneous(L: LinearEquation) -> None:
    if not L.homogeneous:
        raise NotApplicable("construction needs a homogeneous equation")


# -- random Fourier coefficients for even k ---------------------------------------


def _xi_layout(q: int, neg: np.ndarray):
    """Representatives r of the pairs {r, -r}, r != 0, used for odd q."""
    return np.array([r for r in range(1, q) if r < neg[r]], dtype=np.int64)


def sample_xi(L: LinearEquation, rng: np.random.Generator, count: int) -> np.ndarray:
    """``count`` rows of xi_r, r = 0..q-1 (column 0 unused, set to 1).

    Odd q: uniform unit complex numbers with xi_{-r} = conj(xi_r).
    Even q: independent uniform signs.
    """
    F = L.field
    q = F.q
    xi = np.ones((count, q), dtype=np.complex128)
    if q % 2:
        neg = F.neg_table
        reps = _xi_layout(q, neg)
        theta = rng.uniform(0.0, 2 * np.pi, size=(count, len(reps)))
        xi[:, reps] = np.exp(1j * theta)
        xi[:, neg[reps]] = np.exp(-1j * theta)
    else:
        xi[:, 1:] = 2.0 * rng.integers(0, 2, size=(count, q - 1)) - 1.0
    return xi


def _batch_commonness(L: LinearEquation, fhat: np.ndarray) -> np.ndarray:
    """Commonness functional for a batch of spectra with fhat(0) = 1/2, b = 0."""
    V = vector_space(L.field, 1)
    g = -fhat
    g[:, 0] = 1 - fhat[:, 0]
    pf = np.ones_like(fhat)
    pg = np.ones_like(fhat)
    for a in L.codes:
        idx = V.scale(a)
        pf = pf * fhat[:, idx]
        pg = pg * g[:, idx]
    mean = fhat[:, 0]
    ell = L.free_count
    return (mean**ell * pf.sum(axis=1) + (1 - mean) ** ell * pg.sum(axis=1)).real


def sample_commonness_values(L: LinearEquation, samples: int, seed: int = 0) -> np.ndarray:
    """Commonness functional at ``samples`` random spectra fhat(0)=1/2, fhat(r)=xi_r/(2q)."""
    rng = np.random.default_rng(seed)
    q = L.field.q
    fhat = sample_xi(L, rng, samples) / (2 * q)
    fhat[:, 0] = 0.5
    return _batch_commonness(L, fhat)


def _stretch(L: LinearEquation, fhat: np.ndarray) -> np.ndarray:
    """Largest factor s >= 1 keeping 1/2 + s * (nonzero-frequency part) inside [0, 1]."""
    kernel = vector_space(L.field, 1).axis_kernel  # symmetric: kernel[y, x] = gamma_y(x)
    g = fhat[:, 1:] @ kernel[1:, :]
    peak = np.abs(g.real).max(axis=1)
    return np.where(peak > 0, 0.5 / np.maximum(peak, 1e-300), 1.0)


def forge_uncommon_even(
    L: LinearEquation, seed: int = 0, max_tries: int = 10_000, stretch: bool = True, batch: int = 512
) -> Certificate:
    """Rejection-sample random Fourier coefficients until the commonness functional
    drops below 2^(1-K) - MARGIN_FLOOR.

    With ``stretch`` each sample's nonzero frequencies are scaled up as far as
    [0, 1] allows; the sign of the correction term is unchanged, only its size.
    """
    _require_homogeneous(L)
    if L.k % 2:
        raise NotApplicable("k is odd")
    if canceling_pair_partition(L.coeffs) is not None:
        raise NotApplicable("coefficients split into canceling pairs")
    q = L.field.q
    rng = np.random.default_rng(seed)
    target = 2.0 ** (1 - L.total_vars) - MARGIN_FLOOR
    done = 0
    while done < max_tries:
        m = min(batch, max_tries - done)
        xi = sample_xi(L, rng, m)
        fhat = xi / (2 * q)
        fhat[:, 0] = 0.5
        amp = _stretch(L, fhat) if stretch else np.ones(m)
        fhat[:, 1:] *= amp[:, None]
        values = _batch_commonness(L, fhat)
        for i in np.flatnonzero(values < target):
            f = _witness_from_spectrum(L, fhat[i])
            params = {
                "seed": seed,
                "try": done + int(i) + 1,
                "amplitude": float(amp[i]),
                "xi": [[float(z.real), float(z.imag)] for z in xi[i, 1:]],
            }
            cert = _certify(L, 0, f, "common", params, floor=MARGIN_FLOOR)
            if cert is not None:
                return cert
        done += m
    raise ExhaustedTries(f"no violating sample in {max_tries} tries (seed {seed})")


# -- deterministic constructions -------------------------------------------------


def forge_nonsidorenko_odd(L: LinearEquation) -> Certificate:
    """fhat(0) = 1/2, fhat(r) = -1/(2q) otherwise; also reports the set F_q minus {0}."""
    _require_homogeneous(L)
    if L.k % 2 == 0 or L.free_count:
        raise NotApplicable("needs k odd and no free variables")
    F = L.field
    q = F.q
    fhat = np.full(q, -1 / (2 * q), dtype=np.complex128)
    fhat[0] = 0.5
    f = _witness_from_spectrum(L, fhat)
    A = PointSet.from_indices(F, 1, range(1, q))
    lam = solution_density(L, 0, A)
    bound = Fraction(q - 1, q) ** L.k
    alternate = {
        "set": A.indices,
        "lambda": str(lam),
        "threshold": str(bound),
        "violated": lam < bound,
    }
    cert = _certify(L, 0, f, "sidorenko", {"beta": 1 / (2 * q)}, alternate=alternate)
    if cert is None:
        raise ArithmeticError("odd-k witness failed to violate; this should not happen")
    return cert


def _freevar_witness(L: LinearEquation, c: float, beta: float) -> GroupFunction:
    q = L.field.q
    vals = np.full(q, 0.5 + c + beta)
    vals[0] = 0.5 + c - (q - 1) * beta
    if vals.min() < 0 or vals.max() > 1:
        raise CSearchFailed(f"c = {c} pushes the witness outside [0, 1]")
    return GroupFunction(L.field, 1, vals)


def _c_search(L: LinearEquation, b: int, c: float | None, beta: float) -> Certificate:
    q = L.field.q
    c0 = 1 / (100 * q) if c is None else float(c)
    cur = c0
    for attempt in range(C_HALVINGS + 1):
        f = _freevar_witness(L, cur, beta)
        cert = _certify(L, b, f, "common", {"c": cur, "beta": beta, "halvings": attempt})
        if cert is not None:
            return cert
        if cur == 0:
            break
        cur /= 2
    raise CSearchFailed(f"no violation for c in [{cur}, {c0}]")


def forge_freevar_odd(L: LinearEquation, c: float | None = None) -> Certificate:
    """f(0) = 1/2 + c - (q-1) beta, f(x) = 1/2 + c + beta elsewhere, beta = 1/(2q)."""
    _require_homogeneous(L)
    if L.k % 2 == 0 or L.free_count == 0:
        raise NotApplicable("needs k odd and at least one free variable")
    return _c_search(L, 0, c, 1 / (2 * L.field.q))


def forge_inhom(L: LinearEquation, c: float | None = None) -> Certificate:
    """Witness that L = b (b = 1) is not inhomogeneous-common."""
    if L.homogeneous:
        raise NotApplicable("needs a nonzero right-hand side")
    q = L.field.q
    if L.k % 2 == 0:
        fhat = np.full(q, 1 / (2 * q), dtype=np.complex128)
        fhat[0] = 0.5
        f = _witness_from_spectrum(L, fhat)
        cert = _certify(L, 1, f, "common", {"fhat_nonzero": 1 / (2 * q)})
        if cert is None:
            raise ArithmeticError("even-k inhomogeneous witness failed to violate")
        return cert
    if L.free_count == 0:
        raise NotApplicable("k odd without free variables is inhomogeneous-common")
    return _c_search(L, 1, c, -1 / (2 * q))


def forge_inhom_nonsidorenko(L: LinearEquation) -> Certificate:
    """The indicator of {0}: L = b has no solution inside it."""
    if L.homogeneous:
        raise NotApplicable("needs a nonzero right-hand side")
    f = GroupFunction.indicator(PointSet.from_indices(L.field, 1, [0]))
    cert = _certify(L, 1, f, "sidorenko", {"set": [0]})
    if cert is None:
        raise ArithmeticError("indicator of {0} failed to violate")
    return cert


def sidorenko_from_common(cert: Certificate) -> Certificate:
    """If Lambda(f) + Lambda(1-f) < 2^(1-K), one of f, 1-f breaks the density bound."""
    if cert.functional_kind != "common":
        raise ValueError("expected a commonness certificate")
    best = None
    for g, which in ((cert.witness, "f"), (cert.witness.complement(), "1-f")):
        params = dict(cert.parameters, derived_from=which)
        c = _certify(cert.equation, cert.rhs, g, "sidorenko", params)
        if c is not None and (best is None or c.margin > best.margin):
            best = c
    if best is None:
        raise ArithmeticError("neither f nor 1-f violates the density bound")
    return best


def forge(L: LinearEquation, kind: str, seed: int = 0, c: float | None = None, max_tries: int = 10_000) -> Certificate:
    """Pick the construction that refutes ``kind`` for ``L``."""
    if kind not in ("sidorenko", "common"):
        raise ValueError(f"unknown kind {kind!r}")
    paired = canceling_pair_partition(L.coeffs) is not None
    if L.rhs_mode is RhsMode.NONZERO:
        if kind == "sidorenko":
            return forge_inhom_nonsidorenko(L)
        return forge_inhom(L, c)
    if paired:
        raise NotApplicable("coefficients split into canceling pairs: Sidorenko and common")
    if L.k % 2 == 1 and L.free_count == 0:
        if kind == "common":
            raise NotApplicable("k odd without free variables: common")
        return forge_nonsidorenko_odd(L)
    if L.k % 2 == 1:
        common = forge_freevar_odd(L, c)
    else:
        common = forge_uncommon_even(L, seed=seed, max_tries=max_tries)
    return common if kind == "common" else sidorenko_from_common(common)


# -- verification ---------------------------------------------------------------


def certificate_problems(cert: Certificate) -> list[str]:
    problems = []
    f = cert.witness
    L = cert.equation
    if not f.in_unit_range(RANGE_TOL):
        problems.append("witness is not real-valued in [0, 1]")
        return problems
    try:
        spectral = evaluate(L, cert.rhs, f, cert.functional_kind, "spectral")
        brute = evaluate(L, cert.rhs, f, cert.functional_kind, "brute")
    except Exception as exc:  # a malformed certificate is a failed check, not a crash
        return [f"evaluation failed: {exc}"]
    if abs(spectral - cert.value) > VERIFY_TOL:
        problems.append(f"spectral value {spectral!r} != stored {cert.value!r}")
    if abs(brute - cert.value) > VERIFY_TOL:
        problems.append(f"brute-force value {brute!r} != stored {cert.value!r}")
    threshold = threshold_for(L, f, cert.functional_kind)
    if abs(threshold - cert.threshold) > RANGE_TOL:
        problems.append(f"threshold {cert.threshold!r} != recomputed {threshold!r}")
    if abs(cert.margin - (cert.threshold - cert.value)) > RANGE_TOL:
        problems.append("margin is not threshold - value")
    if not threshold - max(spectral, brute) > 0:
        problems.append("no violation: recomputed value is not below the threshold")
    if not cert.margin > 0:
        problems.append("non-positive margin")
    return problems


def verify_certificate(cert: Certificate) -> bool:
    problems = certificate_problems(cert)
    for p in problems:
        log.warning("certificate rejected: %s", p)
    return not problems
