"""Reference integration and finite-difference cross-checks.

The integrator is a fixed-order Gauss-Legendre panel rule with recursive
bisection. It shares nothing with the Simpson functionals it is used to
check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from cosimpson.domain import DomainError, Function2D, NumericError, Rectangle

GL_ORDER = 10
MAX_DEPTH = 50

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)
_NODES = tuple(float(v) for v in _NODES)
_WEIGHTS = tuple(float(v) for v in _WEIGHTS)
EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class QuadResult:
    value: float
    err: float
    evals: int


def _panel(g: Callable[[float], float], lo: float, hi: float) -> tuple[float, float]:
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    terms = []
    for node, weight in zip(_NODES, _WEIGHTS):
        v = g(mid + half * node)
        if not math.isfinite(v):
            raise NumericError(f"integrand is not finite at {mid + half * node!r}", where=mid + half * node)
        terms.append(weight * v)
    return half * math.fsum(terms), half * math.fsum(abs(v) for v in terms)


def integrate_1d(
    g: Callable[[float], float],
    a: float,
    b: float,
    tol: float,
    max_depth: int = MAX_DEPTH,
) -> QuadResult:
    """Integrate g over [a, b] to absolute tolerance ``tol``.

    Each panel is compared with the sum of its two halves; a panel of length
    L is accepted when the discrepancy is at most tol * L / (b - a), or when
    it is already at the level of rounding in the panel sum. Otherwise both
    halves are refined. ``err`` is the accumulated discrepancy plus a
    rounding allowance of 2 eps times the integral of |g| per panel.
    """
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    total = b - a
    evals = GL_ORDER
    whole, whole_abs = _panel(g, a, b)
    pieces: list[float] = []
    errs: list[float] = []
    # depth-first, left to right, so summation order is deterministic
    stack = [(a, b, whole, whole_abs, 0)]
    while stack:
        lo, hi, est, est_abs, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        left, left_abs = _panel(g, lo, mid)
        right, right_abs = _panel(g, mid, hi)
        evals += 2 * GL_ORDER
        refined = left + right
        diff = abs(refined - est)
        allowed = tol * (hi - lo) / total
        if diff <= allowed or diff <= 8 * EPS * (left_abs + right_abs):
            pieces.append(refined)
            errs.append(diff + 2 * EPS * (left_abs + right_abs))
            continue
        if depth + 1 > max_depth:
            raise NumericError(
                f"integrate_1d did not converge on [{lo!r}, {hi!r}] within depth {max_depth}",
                where=(lo, hi),
            )
        stack.append((mid, hi, right, right_abs, depth + 1))
        stack.append((lo, mid, left, left_abs, depth + 1))
    return QuadResult(math.fsum(pieces), math.fsum(errs), evals)


def integrate_2d(
    g: Callable[[float, float], float],
    rect: Rectangle,
    tol: float,
    max_depth: int = MAX_DEPTH,
) -> QuadResult:
    """Iterated integral of g over ``rect`` to absolute tolerance ``tol``.

    Half the budget goes to the outer integral; each inner integral is
    resolved to tol / (2 (b - a)) so inner errors integrate to at most tol/2.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    inner_tol = tol / (2.0 * rect.width)
    inner_err = 0.0
    inner_evals = 0

    def inner(x: float) -> float:
        nonlocal inner_err, inner_evals
        res = integrate_1d(lambda y: g(x, y), rect.c, rect.d, inner_tol, max_depth)
        inner_err = max(inner_err, res.err)
        inner_evals += res.evals
        return res.value

    outer = integrate_1d(inner, rect.a, rect.b, 0.5 * tol, max_depth)
    return QuadResult(outer.value, outer.err + rect.width * inner_err, inner_evals)


def mixed_partial_fd(f: Function2D | Callable[[float, float], float], x: float, y: float, h: float = 1e-4) -> float:
    """Central-difference estimate of d^2 f / dx dy at (x, y)."""
    if not h > 0:
        raise DomainError(f"h must be positive, got {h}")
    ev = f.eval if isinstance(f, Function2D) else f
    vals = (ev(x + h, y + h), ev(x + h, y - h), ev(x - h, y + h), ev(x - h, y - h))
    if not all(math.isfinite(v) for v in vals):
        raise NumericError(f"non-finite stencil value near ({x!r}, {y!r})", where=(x, y))
    return (vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * h * h)
