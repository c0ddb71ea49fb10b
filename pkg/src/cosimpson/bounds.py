"""A-priori bounds for the Simpson defect and the Hermite-Hadamard chain."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from cosimpson.cubature import defect, i_functional
from cosimpson.domain import ContractError, DomainError, Function2D, Rectangle, Tolerances
from cosimpson.kernels import DOUBLE_L1, WEIGHTED_MOMENT
from cosimpson.oracle import EPS, integrate_1d

# (5/72)^2 per corner, summed over four corners
CORNER_CONSTANT = float(WEIGHTED_MOMENT * WEIGHTED_MOMENT)
SUP_CONSTANT = float(DOUBLE_L1)
SIMPSON_1D_CONSTANT = float(Fraction(1, 2880))

MODES = ("theorem3", "theorem4")


@dataclass(frozen=True)
class BoundReport:
    bound: float
    observed: float
    satisfied: bool
    slack: float
    mode: str
    oracle_error: float = 0.0
    sup_source: Optional[str] = None


@dataclass(frozen=True)
class HadamardReport:
    midpoint: float
    mean: float
    corner_average: float
    left_holds: bool
    right_holds: bool
    oracle_error: float

    @property
    def holds(self) -> bool:
        return self.left_holds and self.right_holds


def _check_magnitude(name: str, value: float) -> None:
    if not math.isfinite(value) or value < 0:
        raise DomainError(f"{name} must be finite and non-negative, got {value!r}")


def theorem3_bound(corners: Sequence[float], rect: Rectangle) -> float:
    """Bound on |D| from |f_xy| at the corners (a,c), (a,d), (b,c), (b,d).

    Valid when |f_xy| is convex in each variable separately:
    25 (b-a)(d-c) / 5184 times the sum of the four corner magnitudes.
    """
    if len(corners) != 4:
        raise DomainError(f"expected four corner magnitudes, got {len(corners)}")
    for q in corners:
        _check_magnitude("corner magnitude", q)
    return CORNER_CONSTANT * rect.area * math.fsum(corners)


def theorem4_bound(sup_mixed: float, rect: Rectangle) -> float:
    _check_magnitude("sup_mixed", sup_mixed)
    return SUP_CONSTANT * rect.area * sup_mixed


def simpson1d_bound(m4: float, a: float, b: float) -> float:
    """m4 (b-a)^4 / 2880, bounding the 1D Simpson mean minus the true mean."""
    _check_magnitude("m4", m4)
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    return SIMPSON_1D_CONSTANT * m4 * (b - a) ** 4


def simpson1d_deviation(g, a: float, b: float, tol: float = 1e-12) -> tuple[float, float]:
    """|Simpson mean - true mean| of g on [a, b] with the oracle error of the mean."""
    if not a < b:
        raise DomainError(f"need a < b, got a={a}, b={b}")
    ga, gm, gb = g(a), g(0.5 * (a + b)), g(b)
    simpson = (ga + 4.0 * gm + gb) / 6.0
    res = integrate_1d(g, a, b, tol * (b - a))
    mean = res.value / (b - a)
    rounding = 4 * EPS * ((abs(ga) + 4.0 * abs(gm) + abs(gb)) / 6.0 + abs(mean))
    return abs(simpson - mean), res.err / (b - a) + rounding


def hadamard_check(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> HadamardReport:
    """Evaluate midpoint <= mean <= corner average for a co-ordinated convex f."""
    mid = f.eval(rect.mid_x, rect.mid_y)
    mean, err = i_functional(f, rect, tol)
    corner_avg = math.fsum(f.eval(x, y) for x, y in rect.corners()) / 4.0
    return HadamardReport(
        midpoint=mid,
        mean=mean,
        corner_average=corner_avg,
        left_holds=mid <= mean + err,
        right_holds=mean <= corner_avg + err,
        oracle_error=err,
    )


def corner_magnitudes(f: Function2D, rect: Rectangle) -> tuple[float, float, float, float]:
    mixed = f.require_mixed()
    return tuple(abs(mixed(x, y)) for x, y in rect.corners())


def check_theorem(
    f: Function2D,
    rect: Rectangle,
    tol: Tolerances = Tolerances(),
    mode: str = "theorem4",
    *,
    sup: Optional[float] = None,
    corners: Optional[Sequence[float]] = None,
) -> BoundReport:
    """Compare |D| with the bound of the requested mode.

    theorem3 uses ``corners`` if given, else |f.mixed| at the corners.
    theorem4 uses ``sup`` if given, else ``f.sup_mixed``.
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    sup_source = None
    if mode == "theorem3":
        if corners is None:
            corners = corner_magnitudes(f, rect)
        bound = theorem3_bound(corners, rect)
    else:
        if sup is None:
            sup = f.sup_on(rect)
            if sup is None:
                raise ContractError("theorem4 needs sup |f_xy|: pass sup= or set Function2D.sup_mixed")
        sup_source = "user"
        bound = theorem4_bound(sup, rect)
    rep = defect(f, rect, tol)
    observed = abs(rep.defect)
    return BoundReport(
        bound=bound,
        observed=observed,
        satisfied=observed <= bound + rep.oracle_error,
        slack=bound - observed,
        mode=mode,
        oracle_error=rep.oracle_error,
        sup_source=sup_source,
    )
