"""Command-line front end.

Usage::

    selfsim params --kind 1 --p 3 --q 1 --alpha 0 --beta 0
    selfsim coeffs --kind 1 --p 3 --q 1 --N 12 > coeffs.json
    selfsim verify --coeffs-file coeffs.json
    selfsim eval --kind 1 --p 3 --q 1 --x0 0.5 --x1 1 --nx 3 --y0 1 --y1 2 --ny 2
    selfsim independence --kind 1 --p 3 --q 1 --alpha 2
    selfsim pfq --kind 1 --p 3 --q 1 --i 0 --z 1

Rationals are read as ``"n/d"`` or decimal strings and converted exactly, and
written to JSON as ``"n/d"`` strings.  Exit codes: 0 success, 1 verification
failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import FamilyError, InvalidSpecError, PoleInDenominatorParam, SelfSimError
from .hypergeom import DEFAULT_TOL, build_pfq, convergence_class, eval_pfq, reduce_params
from .kernels import to_fraction
from .residual import residual_numeric, residual_series
from .series import (
    DEFAULT_N,
    SeriesSolution,
    build_solution,
    eval_solution,
    monomial_expansion,
    with_coefficient,
)
from .similarity import (
    EquationSpec,
    derive_params,
    independence_check,
    printed_b,
)

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Grid:
    x0: float
    x1: float
    nx: int
    y0: float
    y1: float
    ny: int

    def __post_init__(self):
        if min(self.x0, self.x1, self.y0, self.y1) <= 0:
            raise UsageError("grid bounds must be strictly positive")
        if self.nx < 1 or self.ny < 1:
            raise UsageError("nx and ny must be >= 1")

    @staticmethod
    def _axis(lo: float, hi: float, n: int) -> List[float]:
        if n == 1:
            return [lo]
        step = (hi - lo) / (n - 1)
        return [lo + k * step for k in range(n - 1)] + [hi]

    def nodes(self):
        # y-major: x varies fastest
        for y in self._axis(self.y0, self.y1, self.ny):
            for x in self._axis(self.x0, self.x1, self.nx):
                yield x, y


def _rational(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _q(x: Fraction) -> str:
    return str(x)


def _dec(x: Fraction) -> str:
    return repr(float(x))


def _spec_json(spec: EquationSpec) -> dict:
    return {
        "kind": int(spec.kind),
        "p": spec.p,
        "q": spec.q,
        "alpha": _q(spec.alpha),
        "beta": _q(spec.beta),
    }


def _spec_from_json(d: dict) -> EquationSpec:
    return EquationSpec(
        int(d["kind"]), int(d["p"]), int(d["q"]),
        Fraction(d["alpha"]), Fraction(d["beta"]),
    )


def _spec_from_args(args) -> EquationSpec:
    missing = [name for name in ("kind", "p", "q") if getattr(args, name) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m for m in missing))
    return EquationSpec(args.kind, args.p, args.q, args.alpha, args.beta)


def _emit_json(doc, out):
    json.dump(doc, out, indent=2, sort_keys=False)
    out.write("\n")


def _indices(spec: EquationSpec, i: Optional[int]) -> List[int]:
    if i is None:
        return list(range(spec.p))
    if not 0 <= i < spec.p:
        raise UsageError(f"--i must lie in 0..{spec.p - 1}")
    return [i]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_params(args, out) -> int:
    spec = _spec_from_args(args)
    params = derive_params(spec)
    pb = printed_b(spec)
    doc = {
        "spec": _spec_json(spec),
        "a": _q(params.a),
        "b": _q(params.b),
        "c": _q(params.c),
        "gammas": [_q(g) for g in params.gammas],
        "K": _q(params.scaleK),
        "decimal": {
            "a": _dec(params.a),
            "b": _dec(params.b),
            "c": _dec(params.c),
            "gammas": [_dec(g) for g in params.gammas],
            "K": _dec(params.scaleK),
        },
        "b_printed_in_paper": None if pb is None else _q(pb),
        "b_printed_in_paper_differs": pb != params.b,
    }
    _emit_json(doc, out)
    return EXIT_OK


def _solution_json(sol: SeriesSolution) -> dict:
    return {
        "i": sol.i,
        "coeffs": [_q(c) for c in sol.coeffs],
        "terms": [t.to_json() for t in monomial_expansion(sol)],
    }


def cmd_coeffs(args, out) -> int:
    spec = _spec_from_args(args)
    params = derive_params(spec)
    sols = [build_solution(spec, i, args.N, params) for i in _indices(spec, args.i)]
    doc = {
        "spec": _spec_json(spec),
        "N": args.N,
        "params": {"a": _q(params.a), "b": _q(params.b), "c": _q(params.c), "K": _q(params.scaleK)},
        "solutions": [_solution_json(s) for s in sols],
    }
    _emit_json(doc, out)
    return EXIT_OK


def _load_solutions(path: str):
    with (sys.stdin if path == "-" else open(path)) as fh:
        doc = json.load(fh)
    spec = _spec_from_json(doc["spec"])
    params = derive_params(spec)
    sols = [
        SeriesSolution(spec=spec, params=params, i=int(s["i"]),
                       coeffs=tuple(Fraction(c) for c in s["coeffs"]))
        for s in doc["solutions"]
    ]
    return spec, sols


def cmd_verify(args, out) -> int:
    if args.coeffs_file:
        spec, sols = _load_solutions(args.coeffs_file)
    else:
        spec = _spec_from_args(args)
        params = derive_params(spec)
        sols = [build_solution(spec, i, args.N, params) for i in _indices(spec, args.i)]
    if args.inject_fault:
        target = sols[0]
        n = min(1, target.N)
        sols[0] = with_coefficient(target, n, target.coeffs[n] + 1)

    reports = []
    all_ok = True
    first_bad = None
    for sol in sols:
        rep = residual_series(sol)
        entry = {"i": sol.i, "N": sol.N, **rep.to_json()}
        if args.numeric:
            pts = [(x, y) for x in (0.5, 0.75, 1.0) for y in (1.0, 2.0)]
            entry["numeric_residual"] = residual_numeric(sol, pts, h=args.h, source="series")
        reports.append(entry)
        if not rep.ok:
            all_ok = False
            if first_bad is None:
                first_bad = (sol.i, rep.first_failure)
    doc = {"spec": _spec_json(spec), "ok": all_ok, "reports": reports}
    _emit_json(doc, out)
    if not all_ok:
        i, failure = first_bad
        where = "trailing term mismatch" if failure is None else f"slot n={failure[0]} coef={failure[1]}"
        print(f"verification failed for i={i}: {where}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_eval(args, out) -> int:
    spec = _spec_from_args(args)
    grid = Grid(args.x0, args.x1, args.nx, args.y0, args.y1, args.ny)
    params = derive_params(spec)
    indices = _indices(spec, args.i)
    sols = {i: build_solution(spec, i, 0, params) for i in indices}

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "y"] + [f"u{i}" for i in indices])
    for x, y in grid.nodes():
        row = [repr(x), repr(y)]
        for i in indices:
            try:
                row.append(repr(float(eval_solution(sols[i], x, y, tol=args.tol))))
            except (SelfSimError, ValueError, ArithmeticError) as exc:
                print(f"warning: u{i}({x}, {y}) failed: {exc}", file=sys.stderr)
                row.append("nan")
        writer.writerow(row)
    out.write(buf.getvalue())
    return EXIT_OK


def cmd_independence(args, out) -> int:
    spec = _spec_from_args(args)
    b = args.b if args.b is not None else derive_params(spec).b
    rep = independence_check(spec, b)
    doc = {
        "spec": _spec_json(spec),
        "b": _q(b),
        "ok": rep.ok,
        "alpha_integral_violation": rep.alpha_integral_violation,
        "violating_pairs": [list(p) for p in rep.violating_pairs],
    }
    _emit_json(doc, out)
    return EXIT_OK if rep.ok else EXIT_VERIFY_FAILED


def _pfq_json(h) -> dict:
    return {
        "num_params": [_q(x) for x in h.num_params],
        "den_params": [_q(x) for x in h.den_params],
        "K": _q(h.scaleK),
        "factorial": h.factorial,
        "order": list(h.order),
        "reduced": h.reduced,
    }


def cmd_pfq(args, out) -> int:
    spec = _spec_from_args(args)
    params = derive_params(spec)
    entries = []
    for i in _indices(spec, args.i):
        h = build_pfq(spec, params, i)
        r = reduce_params(h)
        convergence_class(r)
        entry = {
            "i": i,
            "full": _pfq_json(h),
            "reduced": _pfq_json(r),
            "cancelled": [_q(x) for x in r.cancelled],
        }
        if args.z is not None:
            res = eval_pfq(r, args.z, tol=args.tol)
            entry["z"] = _q(args.z)
            entry["value"] = repr(float(res.value))
            entry["terms_used"] = res.terms_used
            entry["bound_on_tail"] = repr(float(res.bound_on_tail))
        entries.append(entry)
    _emit_json({"spec": _spec_json(spec), "functions": entries}, out)
    return EXIT_OK


COMMANDS = {
    "params": cmd_params,
    "coeffs": cmd_coeffs,
    "eval": cmd_eval,
    "verify": cmd_verify,
    "independence": cmd_independence,
    "pfq": cmd_pfq,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="selfsim",
        description="Hypergeometric self-similar solutions of degenerate high-order equations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def spec_args(p, required=True):
        p.add_argument("--kind", type=int, choices=(1, 2, 3, 4), required=required)
        p.add_argument("--p", type=int, required=required)
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--alpha", type=_rational, default=Fraction(0))
        p.add_argument("--beta", type=_rational, default=Fraction(0))
        p.add_argument("--format", dest="output_format", choices=("json", "csv"), default=None)

    p = sub.add_parser("params", help="similarity parameters a, b, c, gammas, K")
    spec_args(p)

    p = sub.add_parser("coeffs", help="exact series coefficients")
    spec_args(p)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--N", type=int, default=DEFAULT_N)

    p = sub.add_parser("eval", help="evaluate solutions on a grid (CSV)")
    spec_args(p)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    for name, default in (("x0", 0.5), ("x1", 1.0), ("y0", 0.5), ("y1", 1.0)):
        p.add_argument(f"--{name}", type=float, default=default)
    p.add_argument("--nx", type=int, default=2)
    p.add_argument("--ny", type=int, default=2)

    p = sub.add_parser("verify", help="exact residual verification")
    spec_args(p, required=False)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--N", type=int, default=12)
    p.add_argument("--coeffs-file", default=None, help="JSON written by 'coeffs' ('-' for stdin)")
    p.add_argument("--numeric", action="store_true", help="add a finite-difference check")
    p.add_argument("--h", type=float, default=1e-3)
    p.add_argument("--inject-fault", action="store_true", help="corrupt c_1 of the first solution")

    p = sub.add_parser("independence", help="sufficient independence conditions")
    spec_args(p)
    p.add_argument("--b", type=_rational, default=None, help="override the derived b")

    p = sub.add_parser("pfq", help="hypergeometric parameter lists and values")
    spec_args(p)
    p.add_argument("--i", type=int, default=None)
    p.add_argument("--z", type=_rational, default=None)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.output_format
    if fmt is not None and fmt != ("csv" if args.command == "eval" else "json"):
        print(f"error: '{args.command}' only writes {'csv' if args.command == 'eval' else 'json'}",
              file=sys.stderr)
        return EXIT_INVALID
    try:
        return COMMANDS[args.command](args, out)
    except (InvalidSpecError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (FamilyError, PoleInDenominatorParam, SelfSimError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
