"""Simpson functionals on a rectangle and the kernel remainder identity.

All values use the mean convention: every functional is an average over
the rectangle, so the defect

    D = Q - A + I

compares quantities of the same scale. Here Q is the nine-node tensor
Simpson mean, A the Simpson-weighted average of six line integrals, and I
the mean of f. For smooth f the defect equals

    area * integral over [0,1]^2 of k(t) k(s) f_xy(x(t), y(s)) dt ds

with x(t) = t a + (1-t) b and y(s) = s c + (1-s) d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from cosimpson.domain import Function2D, NumericError, Rectangle, Tolerances, map_s_to_y, map_t_to_x
from cosimpson.oracle import integrate_1d, integrate_2d


@dataclass(frozen=True)
class NodeSet:
    points: tuple[tuple[float, float], ...]
    weights: tuple[float, ...]


def simpson_nodes(rect: Rectangle) -> NodeSet:
    """Nine-point tensor Simpson nodes: corners 1/36, edge midpoints 1/9, centre 4/9."""
    xs = (rect.a, rect.mid_x, rect.b)
    ys = (rect.c, rect.mid_y, rect.d)
    w1 = (1.0, 4.0, 1.0)
    points = []
    weights = []
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            points.append((x, y))
            weights.append(w1[i] * w1[j] / 36.0)
    return NodeSet(tuple(points), tuple(weights))


@dataclass(frozen=True)
class DefectReport:
    q_value: float
    a_value: float
    i_value: float
    defect: float
    remainder: Optional[float] = None
    residual: Optional[float] = None
    oracle_error: float = 0.0
    passed: Optional[bool] = None


def q_functional(f: Function2D, rect: Rectangle) -> float:
    nodes = simpson_nodes(rect)
    vals = []
    for (x, y), w in zip(nodes.points, nodes.weights):
        v = f.eval(x, y)
        if not math.isfinite(v):
            raise NumericError(f"f is not finite at node ({x!r}, {y!r})", where=(x, y))
        vals.append(w * v)
    return math.fsum(vals)


def a_functional(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> tuple[float, float]:
    """Mixed term A and its propagated quadrature error."""
    c, my, d = rect.c, rect.mid_y, rect.d
    a, mx, b = rect.a, rect.mid_x, rect.b
    # each half of A carries half the error budget; the 1/(6L) prefactor rescales it
    horiz = integrate_1d(lambda x: f.eval(x, c) + 4.0 * f.eval(x, my) + f.eval(x, d),
                         a, b, 3.0 * rect.width * tol.oracle_tol)
    vert = integrate_1d(lambda y: f.eval(a, y) + 4.0 * f.eval(mx, y) + f.eval(b, y),
                        c, d, 3.0 * rect.height * tol.oracle_tol)
    value = horiz.value / (6.0 * rect.width) + vert.value / (6.0 * rect.height)
    err = horiz.err / (6.0 * rect.width) + vert.err / (6.0 * rect.height)
    return value, err


def i_functional(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> tuple[float, float]:
    res = integrate_2d(f.eval, rect, tol.oracle_tol * rect.area)
    return res.value / rect.area, res.err / rect.area


def defect(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> DefectReport:
    q = q_functional(f, rect)
    a_val, a_err = a_functional(f, rect, tol)
    i_val, i_err = i_functional(f, rect, tol)
    return DefectReport(
        q_value=q,
        a_value=a_val,
        i_value=i_val,
        defect=q - a_val + i_val,
        oracle_error=a_err + i_err,
    )


_BRANCH_OFFSETS = ((0.0, 0.5, 1.0 / 6.0), (0.5, 1.0, 5.0 / 6.0))


def remainder_rhs(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> tuple[float, float]:
    """Kernel-weighted integral of the mixed partial, scaled by the area.

    Integrated separately on the four panels where the kernel product is
    smooth, so the jump at 1/2 is never straddled by a quadrature panel.
    """
    mixed = f.require_mixed()
    area = rect.area
    panel_tol = tol.oracle_tol / (4.0 * area)
    values = []
    errs = []
    for t_lo, t_hi, t_off in _BRANCH_OFFSETS:
        for s_lo, s_hi, s_off in _BRANCH_OFFSETS:
            def integrand(t, s, t_off=t_off, s_off=s_off):
                return (t - t_off) * (s - s_off) * mixed(map_t_to_x(rect, t), map_s_to_y(rect, s))

            res = integrate_2d(integrand, Rectangle(t_lo, t_hi, s_lo, s_hi), panel_tol)
            values.append(res.value)
            errs.append(res.err)
    return area * math.fsum(values), area * math.fsum(errs)


def verify_lemma(f: Function2D, rect: Rectangle, tol: Tolerances = Tolerances()) -> DefectReport:
    """Check D = remainder numerically; pass iff the residual is within tolerance."""
    rep = defect(f, rect, tol)
    rem, rem_err = remainder_rhs(f, rect, tol)
    residual = abs(rep.defect - rem)
    oracle_error = rep.oracle_error + rem_err
    return DefectReport(
        q_value=rep.q_value,
        a_value=rep.a_value,
        i_value=rep.i_value,
        defect=rep.defect,
        remainder=rem,
        residual=residual,
        oracle_error=oracle_error,
        passed=residual <= tol.residual_tol + oracle_error,
    )
