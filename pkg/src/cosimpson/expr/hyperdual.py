"""Hyper-dual numbers carrying (f, f_x, f_y, f_xy)."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class HyperDual:
    v: float
    dx: float = 0.0
    dy: float = 0.0
    dxy: float = 0.0

    @classmethod
    def constant(cls, value: float) -> "HyperDual":
        return cls(float(value))

    @property
    def is_constant(self) -> bool:
        return self.dx == 0.0 and self.dy == 0.0 and self.dxy == 0.0

    def __add__(self, other: "HyperDual") -> "HyperDual":
        return HyperDual(self.v + other.v, self.dx + other.dx, self.dy + other.dy, self.dxy + other.dxy)

    def __sub__(self, other: "HyperDual") -> "HyperDual":
        return HyperDual(self.v - other.v, self.dx - other.dx, self.dy - other.dy, self.dxy - other.dxy)

    def __neg__(self) -> "HyperDual":
        return HyperDual(-self.v, -self.dx, -self.dy, -self.dxy)

    def __mul__(self, other: "HyperDual") -> "HyperDual":
        return HyperDual(
            self.v * other.v,
            self.v * other.dx + self.dx * other.v,
            self.v * other.dy + self.dy * other.v,
            self.v * other.dxy + self.dx * other.dy + self.dy * other.dx + self.dxy * other.v,
        )

    def __truediv__(self, other: "HyperDual") -> "HyperDual":
        if other.v == 0.0:
            raise ZeroDivisionError("hyper-dual division by a zero value")
        return self * other.reciprocal()

    def reciprocal(self) -> "HyperDual":
        inv = 1.0 / self.v
        return self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def chain(self, g: float, g1: float, g2: float) -> "HyperDual":
        """Apply a scalar function with value g, first derivative g1, second g2."""
        return HyperDual(
            g,
            g1 * self.dx,
            g1 * self.dy,
            g1 * self.dxy + g2 * self.dx * self.dy,
        )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.v, self.dx, self.dy, self.dxy)


def exp(u: HyperDual) -> HyperDual:
    g = math.exp(u.v)
    return u.chain(g, g, g)


def sin(u: HyperDual) -> HyperDual:
    s, c = math.sin(u.v), math.cos(u.v)
    return u.chain(s, c, -s)


def cos(u: HyperDual) -> HyperDual:
    s, c = math.sin(u.v), math.cos(u.v)
    return u.chain(c, -s, -c)


def ln(u: HyperDual) -> HyperDual:
    return u.chain(math.log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v))


def sqrt(u: HyperDual) -> HyperDual:
    r = math.sqrt(u.v)
    if r == 0.0:
        if u.dx == 0.0 and u.dy == 0.0 and u.dxy == 0.0:
            return HyperDual(0.0)
        raise ValueError("sqrt is not differentiable at 0")
    return u.chain(r, 0.5 / r, -0.25 / (r * u.v))


def fabs(u: HyperDual) -> HyperDual:
    # sign(0) = 0 at the kink
    sign = (u.v > 0) - (u.v < 0)
    return u.chain(abs(u.v), float(sign), 0.0)


def general_pow(u: HyperDual, w: HyperDual, value: float) -> HyperDual:
    """u ** w for u > 0 with ``value`` supplied by the real evaluator.

    z = u^w, z_x = z (w_x L + w u_x / u) with L = ln u, and z_xy follows by
    differentiating once more in y.
    """
    L = math.log(u.v)
    inv = 1.0 / u.v
    gx = w.dx * L + w.v * u.dx * inv
    gy = w.dy * L + w.v * u.dy * inv
    gxy = (w.dxy * L + w.dx * u.dy * inv + w.dy * u.dx * inv
           + w.v * (u.dxy * inv - u.dx * u.dy * inv * inv))
    return HyperDual(value, value * gx, value * gy, value * (gx * gy + gxy))
