"""Command-line front end.

Exit codes: 0 success, 1 an inequality or identity was violated, 2 usage or
parse error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import warnings
from dataclasses import replace
from typing import Any, Optional, Sequence

from cosimpson.bounds import (
    check_theorem,
    hadamard_check,
    simpson1d_bound,
    simpson1d_deviation,
)
from cosimpson.composite import certify, make_grid, refine, tightness_scan, DEFAULT_MAX_CELLS, empirical_sup
from cosimpson.cubature import defect, verify_lemma
from cosimpson.domain import ContractError, DomainError, Function2D, NumericError, Rectangle, Tolerances
from cosimpson.expr import KinkWarning, ParseError, function_from_text

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

REPORT_KEYS = ("command", "inputs", "values", "bound", "observed", "satisfied", "oracle_error", "evals", "warnings")


class UsageError(Exception):
    pass


class _Counter:
    def __init__(self):
        self.n = 0


def _counted(f: Function2D, counter: _Counter) -> Function2D:
    ev, mixed = f.eval, f.mixed

    def eval_(x, y):
        counter.n += 1
        return ev(x, y)

    def mixed_(x, y):
        counter.n += 1
        return mixed(x, y)

    return replace(f, eval=eval_, mixed=mixed_ if mixed is not None else None)


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _rect(values: Sequence[float]) -> Rectangle:
    try:
        return Rectangle(*values)
    except DomainError as exc:
        raise UsageError(f"invalid --rect: {exc}") from exc


def _grid_spec(text: str) -> tuple[int, int]:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError as exc:
        raise UsageError(f"--grid must look like MxN, got {text!r}") from exc


def _tol(args) -> Tolerances:
    oracle = args.tol
    residual = max(args.residual_tol, oracle)
    try:
        return Tolerances(oracle, residual)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def _means_and_totals(area: float, **means: float) -> dict[str, float]:
    out = {}
    for key, val in means.items():
        out[f"{key}_mean"] = val
        out[f"{key}_total"] = val * area
    return out


def _report(command, inputs, values, bound=None, observed=None, satisfied=None, oracle_error=None,
            evals=0, warns=()) -> dict:
    return {
        "command": command,
        "inputs": inputs,
        "values": values,
        "bound": bound,
        "observed": observed,
        "satisfied": satisfied,
        "oracle_error": oracle_error,
        "evals": evals,
        "warnings": list(warns),
    }


def _cmd_bound(args, f, rect, tol):
    mode = f"theorem{args.theorem}"
    sup_source = None
    sup = args.sup
    if mode == "theorem4" and sup is None:
        sup = empirical_sup(f, rect)
        sup_source = "empirical"
    rep = check_theorem(f, rect, tol, mode, sup=sup, corners=args.corners)
    values = {
        "mode": mode,
        "sup_mixed": sup if mode == "theorem4" else None,
        "sup_source": sup_source or rep.sup_source,
        "slack_mean": rep.slack,
        **_means_and_totals(rect.area, bound=rep.bound, observed=rep.observed),
    }
    return dict(bound=rep.bound, observed=rep.observed, satisfied=rep.satisfied,
                oracle_error=rep.oracle_error, values=values), (EXIT_OK if rep.satisfied else EXIT_VIOLATED)


def _cmd_defect(args, f, rect, tol):
    rep = defect(f, rect, tol)
    values = _means_and_totals(rect.area, q=rep.q_value, a=rep.a_value, i=rep.i_value, defect=rep.defect)
    return dict(observed=abs(rep.defect), oracle_error=rep.oracle_error, values=values), EXIT_OK


def _cmd_verify(args, f, rect, tol):
    rep = verify_lemma(f, rect, tol)
    values = _means_and_totals(rect.area, q=rep.q_value, a=rep.a_value, i=rep.i_value,
                               defect=rep.defect, remainder=rep.remainder)
    values["residual"] = rep.residual
    values["residual_tol"] = tol.residual_tol
    values["passed"] = rep.passed
    return dict(bound=tol.residual_tol, observed=rep.residual, satisfied=rep.passed,
                oracle_error=rep.oracle_error, values=values), (EXIT_OK if rep.passed else EXIT_VIOLATED)


def _cmd_integrate(args, f, rect, tol):
    m, n = _grid_spec(args.grid)
    mode = f"theorem{args.theorem}"
    try:
        grid = make_grid(rect, m, n)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    cert = certify(f, grid, tol, mode, sup=args.sup)
    target_met = None
    history = None
    if args.target is not None:
        if args.adaptive:
            res = refine(f, cert, args.target, args.max_cells)
            cert, target_met, history = res.certificate, res.target_met, list(res.history)
        else:
            target_met = cert.half_width <= args.target
    area = rect.area
    values = {
        "mode": mode,
        "sup_source": cert.sup_source,
        "estimate_total": cert.estimate,
        "half_width_total": cert.half_width,
        "estimate_mean": cert.estimate / area,
        "half_width_mean": cert.half_width / area,
        "lower_total": cert.lower,
        "upper_total": cert.upper,
        "cells": len(cert.per_cell),
        "target_met": target_met,
        "half_width_history": history,
        "per_cell": [
            {"cell": list(c.cell.as_tuple()), "estimate": c.estimate, "bound": c.bound,
             "oracle_error": c.oracle_error}
            for c in cert.per_cell
        ],
    }
    oracle_error = math.fsum(c.oracle_error for c in cert.per_cell)
    return dict(bound=cert.half_width, oracle_error=oracle_error, values=values), EXIT_OK


def _cmd_hadamard(args, f, rect, tol):
    rep = hadamard_check(f, rect, tol)
    values = {
        "midpoint": rep.midpoint,
        "mean": rep.mean,
        "corner_average": rep.corner_average,
        "left_holds": rep.left_holds,
        "right_holds": rep.right_holds,
        "integral_total": rep.mean * rect.area,
    }
    return dict(bound=rep.corner_average, observed=rep.mean, satisfied=rep.holds,
                oracle_error=rep.oracle_error, values=values), (EXIT_OK if rep.holds else EXIT_VIOLATED)


def _cmd_tightness(args, f, rect, tol):
    try:
        sizes = [int(s) for s in args.grids.split(",") if s.strip()]
    except ValueError as exc:
        raise UsageError(f"--grids must be comma-separated integers, got {args.grids!r}") from exc
    if not sizes or min(sizes) < 1:
        raise UsageError("--grids needs positive grid sizes")
    rows = tightness_scan(f, rect, sizes, tol, sup=args.sup)
    violated = any(r.violation for r in rows)
    values = {
        "sup_source": "user" if args.sup is not None else "empirical",
        "rows": [{"n": r.n, "ratio": r.ratio, "max_defect_mean": r.max_defect, "violation": r.violation}
                 for r in rows],
    }
    worst = max(r.ratio for r in rows)
    return dict(bound=1.0, observed=worst, satisfied=not violated and worst <= 1.0,
                values=values), (EXIT_VIOLATED if violated or worst > 1.0 else EXIT_OK)


def _cmd_simpson1d(args, f, rect, tol):
    a, b = args.a, args.b
    if not a < b:
        raise UsageError(f"need --a < --b, got {a} and {b}")
    bound = simpson1d_bound(args.m4, a, b)
    observed, err = simpson1d_deviation(lambda x: f.eval(x, 0.0), a, b, tol.oracle_tol)
    satisfied = observed <= bound + err
    values = {"a": a, "b": b, "m4": args.m4, "mode": "simpson1d"}
    return dict(bound=bound, observed=observed, satisfied=satisfied, oracle_error=err,
                values=values), (EXIT_OK if satisfied else EXIT_VIOLATED)


COMMANDS = {
    "bound": _cmd_bound,
    "defect": _cmd_defect,
    "verify-lemma": _cmd_verify,
    "integrate": _cmd_integrate,
    "hadamard": _cmd_hadamard,
    "tightness": _cmd_tightness,
    "simpson1d": _cmd_simpson1d,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cosimpson", description="Certified Simpson cubature on rectangles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fn_required=True):
        p.add_argument("--fn", required=fn_required, help="expression in x and y, e.g. 'exp(x+y)'")
        p.add_argument("--rect", nargs=4, type=float, metavar=("A", "B", "C", "D"), required=True)
        p.add_argument("--tol", type=float, default=1e-10, help="oracle tolerance (mean scale)")
        p.add_argument("--residual-tol", type=float, default=1e-8)
        p.add_argument("--format", choices=("human", "json"), default="human")

    p = sub.add_parser("bound", help="check the theorem-3 or theorem-4 defect bound")
    common(p)
    p.add_argument("--theorem", type=int, choices=(3, 4), required=True)
    p.add_argument("--sup", type=float)
    p.add_argument("--corners", nargs=4, type=float, metavar=("Q_AC", "Q_AD", "Q_BC", "Q_BD"))

    p = sub.add_parser("defect", help="Q, A, I and the defect Q - A + I")
    common(p)

    p = sub.add_parser("verify-lemma", help="compare the defect with the kernel remainder")
    common(p)

    p = sub.add_parser("integrate", help="certified composite integral")
    common(p)
    p.add_argument("--grid", default="1x1")
    p.add_argument("--theorem", type=int, choices=(3, 4), default=4)
    p.add_argument("--sup", type=float)
    p.add_argument("--target", type=float)
    p.add_argument("--adaptive", action="store_true")
    p.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)

    p = sub.add_parser("hadamard", help="midpoint <= mean <= corner average")
    common(p)

    p = sub.add_parser("tightness", help="defect / bound ratios on refining grids")
    common(p, fn_required=False)
    p.add_argument("--grids", default="1,2,4,8")
    p.add_argument("--sup", type=float)
    p.add_argument("--seed", type=int, help="draw exp(alpha x + beta y) at random when --fn is omitted")

    p = sub.add_parser("simpson1d", help="one-dimensional Simpson bound")
    p.add_argument("--fn-x", required=True, help="expression in x")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--m4", type=float, required=True, help="sup |f''''| on [a, b]")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--residual-tol", type=float, default=1e-8)
    p.add_argument("--format", choices=("human", "json"), default="human")
    return parser


def random_family_member(seed: Optional[int]) -> str:
    rng = random.Random(seed)
    alpha = rng.uniform(0.1, 2.0)
    beta = rng.uniform(0.1, 2.0)
    return f"exp({alpha!r}*x+{beta!r}*y)"


def _emit_human(report: dict, out) -> None:
    for key in REPORT_KEYS:
        val = report[key]
        if isinstance(val, dict):
            out.write(f"{key}:\n")
            for k, v in val.items():
                if k == "per_cell" or k == "rows":
                    out.write(f"  {k}:\n")
                    for item in v:
                        out.write(f"    {item}\n")
                else:
                    out.write(f"  {k}: {v}\n")
        else:
            out.write(f"{key}: {val}\n")


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE

    if args.command == "simpson1d":
        fn_text = args.fn_x
        rect = None
    else:
        fn_text = args.fn
        if fn_text is None:
            fn_text = random_family_member(args.seed)
    inputs: dict[str, Any] = {"fn": fn_text}

    try:
        if args.command != "simpson1d":
            rect = _rect(args.rect)
            inputs["rect"] = list(rect.as_tuple())
        tol = _tol(args)
        inputs["oracle_tol"] = tol.oracle_tol
        inputs["residual_tol"] = tol.residual_tol
        for name in ("theorem", "sup", "corners", "grid", "target", "adaptive", "grids", "seed", "a", "b", "m4"):
            if name in vars(args) and getattr(args, name) is not None:
                inputs[name] = getattr(args, name)
        f = function_from_text(fn_text)
        counter = _Counter()
        f = _counted(f, counter)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", KinkWarning)
            fields, code = COMMANDS[args.command](args, f, rect, tol)
        warns = sorted({str(w.message) for w in caught if issubclass(w.category, KinkWarning)})
    except ParseError as exc:
        stderr.write(f"error: {exc}\n{exc.caret()}\n")
        return EXIT_USAGE
    except (UsageError, ContractError) as exc:
        stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (NumericError, DomainError, ZeroDivisionError, OverflowError) as exc:
        stderr.write(f"numeric failure: {exc}\n")
        return EXIT_NUMERIC

    report = _report(args.command, inputs, evals=counter.n, warns=warns, **fields)
    report = _jsonable(report)
    if args.format == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        _emit_human(report, stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
