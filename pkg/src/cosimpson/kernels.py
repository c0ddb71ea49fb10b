"""The piecewise-linear remainder kernel and its exact moments.

The same kernel is used on both axes:

    k(t) = t - 1/6   for t in [0, 1/2]
    k(t) = t - 5/6   for t in (1/2, 1]
"""

from __future__ import annotations

from fractions import Fraction

from cosimpson.domain import DomainError

# Exact rational values; floats are derived once.
L1 = Fraction(5, 36)
DOUBLE_L1 = L1 * L1
WEIGHTED_MOMENT = Fraction(5, 72)


def kernel(t: float) -> float:
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"kernel argument must lie in [0, 1], got {t}")
    if t <= 0.5:
        return t - 1.0 / 6.0
    return t - 5.0 / 6.0


def kernel_l1() -> float:
    """Integral of |k| over [0, 1], equal to 5/36."""
    return float(L1)


def kernel_double_l1() -> float:
    """Integral of |k(t) k(s)| over the unit square, equal to 25/1296."""
    return float(DOUBLE_L1)


def kernel_weighted_moment() -> float:
    """Integral of |k(t)| * t over [0, 1], equal to 5/72.

    By the symmetry |k(t)| = |k(1-t)| this is also the integral of
    |k(t)| * (1 - t).
    """
    return float(WEIGHTED_MOMENT)
