"""One evaluator, two carriers: plain floats and hyper-duals.

A syntax tree is compiled once into nested closures over a carrier
backend, so the value path and the derivative path cannot drift apart.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Union

from cosimpson.domain import DomainError, Function2D, Rectangle
from cosimpson.expr import hyperdual as hd
from cosimpson.expr.hyperdual import HyperDual
from cosimpson.expr.parser import BinOp, Call, Const, Neg, Node, Num, Var, parse

INTEGER_SNAP = 1e-9

_CONSTANTS = {"pi": math.pi, "e": math.e}


class ExprDomainError(DomainError):
    """Evaluation left the domain of a sub-expression."""

    def __init__(self, message: str, span: tuple[int, int]):
        super().__init__(f"{message} (at characters {span[0]}-{span[1]})")
        self.span = span


class KinkWarning(UserWarning):
    """abs() was differentiated exactly at its kink."""


def _near_integer(w: float) -> int | None:
    n = round(w)
    if abs(w - n) <= INTEGER_SNAP:
        return int(n)
    return None


def _ipow(u, n: int, one):
    """u ** n by square-and-multiply; the same operation order in every carrier."""
    result = one
    base = u
    k = abs(n)
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    if n < 0:
        result = one / result
    return result


def _real_pow(u: float, w: float, span) -> float:
    n = _near_integer(w)
    if n is not None:
        if n < 0 and u == 0.0:
            raise ExprDomainError("zero raised to a negative power", span)
        return _ipow(u, n, 1.0)
    if u <= 0.0:
        raise ExprDomainError(f"non-integer power {w!r} of non-positive base {u!r}", span)
    return math.pow(u, w)


class _RealBackend:
    @staticmethod
    def lift(v: float) -> float:
        return v

    @staticmethod
    def value(u: float) -> float:
        return u

    @staticmethod
    def seeds(x: float, y: float):
        return float(x), float(y)

    @staticmethod
    def div(u: float, w: float, span) -> float:
        if w == 0.0:
            raise ExprDomainError("division by zero", span)
        return u / w

    @staticmethod
    def pow(u: float, w: float, span) -> float:
        return _real_pow(u, w, span)

    funcs: dict[str, Callable[[float], float]] = {
        "sin": math.sin,
        "cos": math.cos,
        "exp": math.exp,
        "ln": math.log,
        "sqrt": math.sqrt,
        "abs": abs,
    }


class _HyperDualBackend:
    @staticmethod
    def lift(v: float) -> HyperDual:
        return HyperDual(v)

    @staticmethod
    def value(u: HyperDual) -> float:
        return u.v

    @staticmethod
    def seeds(x: float, y: float):
        return HyperDual(float(x), 1.0, 0.0, 0.0), HyperDual(float(y), 0.0, 1.0, 0.0)

    @staticmethod
    def div(u: HyperDual, w: HyperDual, span) -> HyperDual:
        if w.v == 0.0:
            raise ExprDomainError("division by zero", span)
        return u / w

    @staticmethod
    def pow(u: HyperDual, w: HyperDual, span) -> HyperDual:
        n = _near_integer(w.v)
        if n is not None and w.is_constant:
            if n < 0 and u.v == 0.0:
                raise ExprDomainError("zero raised to a negative power", span)
            return _ipow(u, n, HyperDual(1.0))
        value = _real_pow(u.v, w.v, span)
        if u.v <= 0.0:
            raise ExprDomainError("variable exponent needs a positive base", span)
        return hd.general_pow(u, w, value)

    funcs: dict[str, Callable[[HyperDual], HyperDual]] = {
        "sin": hd.sin,
        "cos": hd.cos,
        "exp": hd.exp,
        "ln": hd.ln,
        "sqrt": hd.sqrt,
        "abs": hd.fabs,
    }


REAL = _RealBackend()
HYPERDUAL = _HyperDualBackend()

Compiled = Callable[[object, object], object]


def _compile(node: Node, B) -> Compiled:
    if isinstance(node, Num):
        c = B.lift(node.value)
        return lambda x, y: c
    if isinstance(node, Var):
        if node.name == "x":
            return lambda x, y: x
        return lambda x, y: y
    if isinstance(node, Const):
        c = B.lift(_CONSTANTS[node.name])
        return lambda x, y: c
    if isinstance(node, Neg):
        inner = _compile(node.operand, B)
        return lambda x, y: -inner(x, y)
    if isinstance(node, BinOp):
        left = _compile(node.left, B)
        right = _compile(node.right, B)
        span = node.span
        if node.op == "+":
            return lambda x, y: left(x, y) + right(x, y)
        if node.op == "-":
            return lambda x, y: left(x, y) - right(x, y)
        if node.op == "*":
            return lambda x, y: left(x, y) * right(x, y)
        if node.op == "/":
            return lambda x, y: B.div(left(x, y), right(x, y), span)
        return lambda x, y: B.pow(left(x, y), right(x, y), span)
    return _compile_call(node, B)


def _compile_call(node: Call, B) -> Compiled:
    arg = _compile(node.arg, B)
    fn = B.funcs[node.func]
    span = node.span
    value = B.value
    name = node.func

    def call(x, y):
        u = arg(x, y)
        v = value(u)
        if name == "ln" and v <= 0.0:
            raise ExprDomainError(f"ln of non-positive value {v!r}", span)
        if name == "sqrt" and v < 0.0:
            raise ExprDomainError(f"sqrt of negative value {v!r}", span)
        if name == "abs" and v == 0.0 and B is HYPERDUAL:
            warnings.warn(f"abs differentiated at its kink (characters {span[0]}-{span[1]})",
                          KinkWarning, stacklevel=2)
        try:
            return fn(u)
        except (OverflowError, ValueError) as exc:
            raise ExprDomainError(f"{name} failed: {exc}", span) from exc

    return call


def _guarded(compiled: Compiled, B, root_span):
    def run(x: float, y: float):
        sx, sy = B.seeds(x, y)
        try:
            return compiled(sx, sy)
        except OverflowError as exc:
            raise ExprDomainError(f"overflow: {exc}", root_span) from exc

    return run


def compile_real(ast: Node) -> Callable[[float, float], float]:
    return _guarded(_compile(ast, REAL), REAL, ast.span)


def compile_hyperdual(ast: Node) -> Callable[[float, float], HyperDual]:
    return _guarded(_compile(ast, HYPERDUAL), HYPERDUAL, ast.span)


def eval_real(ast: Node, x: float, y: float) -> float:
    return compile_real(ast)(x, y)


def eval_hyperdual(ast: Node, x: float, y: float) -> HyperDual:
    """(f, f_x, f_y, f_xy) at (x, y) by second-order forward propagation."""
    return compile_hyperdual(ast)(x, y)


def function_from_text(text: str, sup_mixed=None) -> Function2D:
    """Parse ``text`` and wrap it as a Function2D with an exact mixed partial."""
    ast = parse(text)
    real = compile_real(ast)
    dual = compile_hyperdual(ast)
    return Function2D(eval=real, mixed=lambda x, y: dual(x, y).dxy, sup_mixed=sup_mixed, label=text)


@dataclass(frozen=True)
class ConvexityReport:
    violation: bool
    axis: str | None = None
    fixed: float | None = None
    triple: tuple[float, float, float] | None = None
    gap: float = 0.0

    def __str__(self) -> str:
        if not self.violation:
            return "no violation found"
        return (f"midpoint convexity fails along {self.axis} at fixed value {self.fixed!r}: "
                f"points {self.triple}, excess {self.gap:.3g}")


def convexity_probe(ast: Union[Node, str], rect: Rectangle, samples: int = 9) -> ConvexityReport:
    """Advisory midpoint-convexity test of the partial mappings on a lattice.

    For each of ``samples`` fixed values of one coordinate, checks
    f(mid) <= (f(left) + f(right)) / 2 on ``samples`` symmetric triples along
    the other coordinate. Returns the first counterexample found.
    """
    if samples < 3:
        raise DomainError(f"samples must be >= 3, got {samples}")
    if isinstance(ast, str):
        ast = parse(ast)
    f = compile_real(ast)
    lattice = 2 * samples + 1

    def grid(lo, hi, k):
        return [lo + (hi - lo) * i / (k - 1) for i in range(k)]

    fixed_x = grid(rect.a, rect.b, samples)
    fixed_y = grid(rect.c, rect.d, samples)
    xs = grid(rect.a, rect.b, lattice)
    ys = grid(rect.c, rect.d, lattice)
    # centre index i, half-width h: widest symmetric triple around each centre
    triples = []
    for k in range(samples):
        i = 1 + (k * (lattice - 3)) // max(samples - 1, 1)
        h = min(i, lattice - 1 - i)
        triples.append((i - h, i, i + h))

    for axis, fixed_vals, pts, ev in (
        ("x", fixed_y, xs, lambda u, fixed: f(u, fixed)),
        ("y", fixed_x, ys, lambda u, fixed: f(fixed, u)),
    ):
        for fixed in fixed_vals:
            for lo, mid, hi in triples:
                fl, fm, fh = ev(pts[lo], fixed), ev(pts[mid], fixed), ev(pts[hi], fixed)
                gap = fm - 0.5 * (fl + fh)
                scale = max(abs(fl), abs(fm), abs(fh), 1.0)
                if gap > 1e-12 * scale:
                    return ConvexityReport(True, axis, fixed, (pts[lo], pts[mid], pts[hi]), gap)
    return ConvexityReport(False)
