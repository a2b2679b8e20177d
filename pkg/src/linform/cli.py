"""Command-line entry point.

Exit status: 0 when the property holds or no witness turned up, 1 when a
violation was found or the classification is negative, 2 on any error.
Errors go to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .counting import (
    common_holds_exact,
    count_solutions_in_set,
    lambda_bruteforce,
    load_coloring,
    load_point_set,
    monochromatic_count,
    resolve_rhs,
    solution_density,
)
from .equation import canceling_pair_partition, classify_any, parse_equation_spec
from .errors import LinformError, NotApplicable, NumericalInconsistency
from .forge import certificate_problems, forge
from .fourier import (
    REAL_TOL,
    Spectrum,
    inverse,
    lambda_spectral,
    load_group_function,
    transform,
)
from .hilbert import find_cube_embedding, verify_embedding
from .refuter import exhaustive_common_search, exhaustive_sidorenko_search, random_search

SUBCOMMANDS = ("classify", "count", "lambda", "fourier", "forge", "refute", "hilbert")
KINDS = ("sidorenko", "common")
SIG_DIGITS = 12
NOISE = 1e-13


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandRequest:
    subcommand: str
    equation: str | None = None
    n: int | None = None
    set_file: str | None = None
    fn_file: str | None = None
    coloring: bool = False
    mode: str = "both"
    inverse: bool = False
    kind: str | None = None
    seed: int = 0
    c: float | None = None
    trials: int | None = None
    max_tries: int = 10_000
    t: int | None = None
    out: str | None = None
    format: str = "json"
    threads: int = 1

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if self.mode not in ("spectral", "brute", "both"):
            raise UsageError(f"unknown mode {self.mode!r}")
        if self.format not in ("json", "table"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.kind is not None and self.kind not in KINDS:
            raise UsageError(f"unknown kind {self.kind!r}")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "CommandRequest":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise UsageError(f"unknown request keys: {', '.join(unknown)}")
        return cls(**d)


# -- output ---------------------------------------------------------------------


def _clean(obj):
    """JSON-ready copy with floats cut to SIG_DIGITS significant digits."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        # rounding noise below the printed precision would otherwise show up as e-18 parts
        floor = NOISE * max(1.0, abs(obj))
        re = obj.real if abs(obj.real) > floor else 0.0
        im = obj.imag if abs(obj.imag) > floor else 0.0
        return [_clean(re), _clean(im)]
    if isinstance(obj, (float, np.floating)):
        x = float(f"{float(obj):.{SIG_DIGITS}g}")
        return 0.0 if x == 0 else x
    return obj


def render_json(report: dict) -> str:
    return json.dumps(_clean(report), indent=2)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, obj


def render_table(report: dict) -> str:
    rows = list(_flatten(_clean(report)))
    width = max(len(k) for k, _ in rows)
    out = []
    for k, v in rows:
        text = json.dumps(v) if isinstance(v, (list, bool)) or v is None else str(v)
        out.append(f"{k.ljust(width)}  {text}")
    return "\n".join(out)


# -- subcommands ------------------------------------------------------------------


def _need(req: CommandRequest, *names: str) -> None:
    for name in names:
        if getattr(req, name) is None:
            flag = "equation" if name == "equation" else "--" + name.replace("_file", "").replace("_", "-")
            raise UsageError(f"{req.subcommand} requires {flag}")


def _classify(req):
    L = parse_equation_spec(req.equation)
    v = classify_any(L)
    result = {"equation": L.spec(), "verdict": v.to_dict()}
    return (0 if v.sidorenko and v.common else 1), result


def _count(req):
    _need(req, "set_file")
    L = parse_equation_spec(req.equation)
    K = L.total_vars
    if req.coloring:
        chi = load_coloring(req.set_file)
        N = L.field.q**chi.n
        mono = monochromatic_count(L, None, chi)
        holds = common_holds_exact(L, None, chi)
        result = {
            "n": chi.n,
            "coloring": f"{chi.mask:#x}",
            "count": mono,
            "threshold_lhs": 2 ** (K - 1) * mono,
            "threshold_rhs": N ** (K - 1),
        }
    else:
        A = load_point_set(req.set_file)
        N = L.field.q**A.n
        cnt = count_solutions_in_set(L, None, A)
        holds = N * cnt >= A.size**K
        result = {
            "n": A.n,
            "set": f"{A.mask:#x}",
            "size": A.size,
            "count": cnt,
            "density": solution_density(L, None, A),
            "threshold_lhs": N * cnt,
            "threshold_rhs": A.size**K,
        }
    result["slack"] = result["threshold_lhs"] - result["threshold_rhs"]
    result["holds"] = holds
    return (0 if holds else 1), result


def _lambda(req):
    _need(req, "fn_file")
    L = parse_equation_spec(req.equation)
    f = load_group_function(req.fn_file)
    b = resolve_rhs(L, f.n, None)
    result = {"n": f.n, "rhs": b}
    if req.mode in ("spectral", "both"):
        result["spectral"] = lambda_spectral(L, b, f)
    if req.mode in ("brute", "both"):
        result["brute"] = lambda_bruteforce(L, b, f)
    if req.mode == "both":
        diff = abs(result["spectral"] - result["brute"])
        result["difference"] = diff
        if diff > REAL_TOL:
            raise NumericalInconsistency(f"spectral and brute-force values differ by {diff:.3e}")
    return 0, result


def _fourier(req):
    _need(req, "fn_file")
    if req.equation is not None:
        raise UsageError("fourier takes no equation")
    f = load_group_function(req.fn_file)
    if req.inverse:
        out = inverse(Spectrum(f.field, f.n, f.values)).values
    else:
        out = transform(f).values
    result = {"n": f.n, "direction": "inverse" if req.inverse else "forward", "values": [complex(v) for v in out]}
    return 0, result


def _forge(req):
    _need(req, "kind")
    L = parse_equation_spec(req.equation)
    try:
        cert = forge(L, req.kind, seed=req.seed, c=req.c, max_tries=req.max_tries)
    except NotApplicable as exc:
        return 0, {"equation": L.spec(), "kind": req.kind, "certificate": None, "reason": str(exc)}
    problems = certificate_problems(cert)
    if problems:
        raise NumericalInconsistency("; ".join(problems))
    if req.out:
        Path(req.out).write_text(cert.to_json() + "\n")
    result = {"equation": L.spec(), "kind": req.kind, "verified": True, "certificate": cert.to_dict()}
    return 1, result


def _refute(req):
    _need(req, "kind", "n")
    L = parse_equation_spec(req.equation)
    if req.trials is not None:
        res = random_search(L, None, req.n, req.trials, req.seed, req.kind)
        if res is None:
            return 0, {
                "found": False,
                "kind": req.kind,
                "n": req.n,
                "method": f"random(seed={req.seed}, trials={req.trials})",
                "conclusion": f"no witness among {req.trials} random trials; this does not prove the property",
            }
    elif req.kind == "sidorenko":
        res = exhaustive_sidorenko_search(L, None, req.n)
    else:
        res = exhaustive_common_search(L, None, req.n)
    return (1 if res.found else 0), res.to_dict()


def _hilbert(req):
    _need(req, "t")
    L = parse_equation_spec(req.equation)
    emb = find_cube_embedding(L, req.t)
    pairing = canceling_pair_partition(L.coeffs)
    result = {
        "equation": L.spec(),
        "t": req.t,
        "embedding": emb,
        "verified": verify_embedding(L, req.t, emb) if emb is not None else None,
        "pairing": pairing,
    }
    return (0 if emb is not None else 1), result


_HANDLERS = {
    "classify": _classify,
    "count": _count,
    "lambda": _lambda,
    "fourier": _fourier,
    "forge": _forge,
    "refute": _refute,
    "hilbert": _hilbert,
}


def run(req: CommandRequest) -> tuple[int, dict]:
    """Execute one request; returns (exit code, report).  Errors propagate."""
    if req.subcommand != "fourier":
        _need(req, "equation")
    code, result = _HANDLERS[req.subcommand](req)
    return code, {"request": req.to_dict(), "result": result, "exit_code": code}


# -- argument parsing ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--threads", type=int, default=1, help="worker cap (the kernels are single-threaded)")

    parser = _Parser(prog="linform", description="Sidorenko and common linear equations over F_q.")
    parser.add_argument("--version", action="version", version=f"linform {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, help_text, equation=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if equation:
            p.add_argument("equation", help='e.g. "L=1,-2,1; q=5[; free=1][; b=nonzero]"')
        return p

    add("classify", "decide both properties from the coefficients")

    p = add("count", "exact solution count in a set or colouring")
    p.add_argument("--set", dest="set_file", required=True, metavar="FILE")
    p.add_argument("--coloring", action="store_true", help="treat FILE as a 2-colouring")

    p = add("lambda", "solution density of a function")
    p.add_argument("--fn", dest="fn_file", required=True, metavar="FILE")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--spectral", dest="mode", action="store_const", const="spectral")
    mode.add_argument("--brute", dest="mode", action="store_const", const="brute")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(mode="both")

    p = add("fourier", "Fourier transform of a function file", equation=False)
    p.add_argument("--fn", dest="fn_file", required=True, metavar="FILE")
    p.add_argument("--inverse", action="store_true")

    p = add("forge", "build a verified counterexample function")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--max-tries", type=int, default=10_000)
    p.add_argument("--out", metavar="FILE", help="write the full-precision certificate here")

    p = add("refute", "search subsets or colourings of F_q^n for a violation")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--random", dest="trials", type=int, default=None, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)

    p = add("hilbert", "embed the cube system of dimension t into the equation")
    p.add_argument("--t", type=int, required=True)
    return parser


def request_from_args(argv: list[str] | None = None) -> CommandRequest:
    ns = vars(build_parser().parse_args(argv))
    return CommandRequest.from_dict({k: v for k, v in ns.items() if v is not None or k == "equation"})


def _error_report(exc: BaseException, argv) -> dict:
    return {"error": type(exc).__name__, "message": str(exc), "argv": list(argv)}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    fmt = "json"
    try:
        req = request_from_args(argv)
        fmt = req.format
        code, report = run(req)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (LinformError, UsageError, ValueError, ArithmeticError, OSError) as exc:
        report = _error_report(exc, argv)
        if getattr(exc, "position", None) is not None:
            report["position"] = exc.position
        print(render_json(report), file=sys.stderr)
        return 2
    print(render_json(report) if fmt == "json" else render_table(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
