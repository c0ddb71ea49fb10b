"""Rectangles, function contracts and tolerances shared by every module."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Union


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """A numerical procedure failed (non-finite value, non-convergence)."""

    def __init__(self, message: str, *, where: object = None):
        super().__init__(message)
        self.where = where


class ContractError(TypeError):
    """Required derivative data is missing from a Function2D."""


@dataclass(frozen=True)
class Rectangle:
    """The closed box [a, b] x [c, d] with a < b and c < d."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, float(getattr(self, name)))
        vals = (self.a, self.b, self.c, self.d)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError(f"rectangle bounds must be finite, got {vals}")
        if not self.a < self.b:
            raise DomainError(f"need a < b, got a={self.a}, b={self.b}")
        if not self.c < self.d:
            raise DomainError(f"need c < d, got c={self.c}, d={self.d}")

    @property
    def width(self) -> float:
        return self.b - self.a

    @property
    def height(self) -> float:
        return self.d - self.c

    @property
    def area(self) -> float:
        return (self.b - self.a) * (self.d - self.c)

    @property
    def mid_x(self) -> float:
        return 0.5 * (self.a + self.b)

    @property
    def mid_y(self) -> float:
        return 0.5 * (self.c + self.d)

    def corners(self) -> tuple[tuple[float, float], ...]:
        """Corners in the order (a,c), (a,d), (b,c), (b,d)."""
        return ((self.a, self.c), (self.a, self.d), (self.b, self.c), (self.b, self.d))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


SupSource = Union[float, Callable[[Rectangle], float]]


@dataclass(frozen=True)
class Function2D:
    """Behavioral contract for f(x, y).

    ``eval`` and ``mixed`` must be pure. ``mixed`` returns the mixed partial
    d^2 f / dx dy. ``sup_mixed`` is a user-asserted upper bound for
    |d^2 f / dx dy|: either one number valid on the whole domain of use, or a
    callable giving a bound for any sub-rectangle.
    """

    eval: Callable[[float, float], float]
    mixed: Optional[Callable[[float, float], float]] = None
    sup_mixed: Optional[SupSource] = None
    label: str = ""

    def __call__(self, x: float, y: float) -> float:
        return self.eval(x, y)

    def require_mixed(self) -> Callable[[float, float], float]:
        if self.mixed is None:
            raise ContractError(f"function {self.label or self.eval!r} has no mixed-partial evaluator")
        return self.mixed

    def sup_on(self, rect: Rectangle) -> Optional[float]:
        if self.sup_mixed is None:
            return None
        if callable(self.sup_mixed):
            return float(self.sup_mixed(rect))
        return float(self.sup_mixed)


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerance for reference integrals and the identity-check threshold."""

    oracle_tol: float = 1e-10
    residual_tol: float = 1e-8

    def __post_init__(self):
        if not (self.oracle_tol > 0 and self.residual_tol > 0):
            raise DomainError("tolerances must be strictly positive")
        if self.residual_tol < self.oracle_tol:
            raise DomainError("residual_tol must be >= oracle_tol")


def map_t_to_x(rect: Rectangle, t: float) -> float:
    """Send t in [0, 1] to t*a + (1-t)*b, so t=0 is b and t=1 is a."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1], got {t}")
    return t * rect.a + (1.0 - t) * rect.b


def map_s_to_y(rect: Rectangle, s: float) -> float:
    if not 0.0 <= s <= 1.0:
        raise DomainError(f"s must lie in [0, 1], got {s}")
    return s * rect.c + (1.0 - s) * rect.d
