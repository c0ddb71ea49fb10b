import math
import random

import pytest
from hypothesis import given, strategies as st

from cosimpson import (
    ContractError,
    DomainError,
    Function2D,
    Rectangle,
    check_theorem,
    hadamard_check,
    simpson1d_bound,
    theorem3_bound,
    theorem4_bound,
)
from cosimpson.bounds import simpson1d_deviation

from corpus import EXP_SUM, XY

UNIT = Rectangle(0, 1, 0, 1)
E = math.e
SIMPSON_GAP_EXP = (1 + 4 * math.sqrt(E) + E) / 6 - (E - 1)


def test_theorem3_examples():
    assert theorem3_bound((0, 0, 0, 0), UNIT) == 0.0
    # |4xy| at the corners of the unit square
    assert theorem3_bound((0, 0, 0, 4), UNIT) == pytest.approx(100 / 5184, abs=1e-16)
    assert theorem3_bound((1, 1, 1, 1), UNIT) == pytest.approx(25 / 1296, abs=1e-16)


def test_theorem3_matches_two_stage_constant():
    # 25 area / 72 times the corner sum / 72
    corners = (0.3, 1.2, 2.5, 0.7)
    rect = Rectangle(0, 1.5, -1, 2)
    assert theorem3_bound(corners, rect) == pytest.approx(25 * rect.area / 72 * sum(corners) / 72, rel=1e-15)


def test_theorem4_examples():
    assert theorem4_bound(1, UNIT) == pytest.approx(25 / 1296, abs=1e-16)
    assert theorem4_bound(0, Rectangle(-3, 7, 1, 2)) == 0.0
    assert theorem4_bound(2, Rectangle(0, 2, 0, 1)) == pytest.approx(25 / 324, abs=1e-16)


@pytest.mark.parametrize("bad", [-1.0, math.inf, math.nan])
def test_bounds_reject_bad_inputs(bad):
    with pytest.raises(DomainError):
        theorem4_bound(bad, UNIT)
    with pytest.raises(DomainError):
        theorem3_bound((0, 0, bad, 0), UNIT)


def test_simpson1d_examples():
    assert simpson1d_bound(0, 0, 1) == 0.0
    assert simpson1d_bound(1, 0, 1) == pytest.approx(1 / 2880, abs=1e-18)
    bound = simpson1d_bound(E, 0, 1)
    assert bound == pytest.approx(9.4381e-4, rel=1e-4)
    observed, _ = simpson1d_deviation(math.exp, 0, 1)
    assert observed == pytest.approx(SIMPSON_GAP_EXP, abs=1e-12)
    assert observed <= bound
    with pytest.raises(DomainError):
        simpson1d_bound(1, 1, 1)


@pytest.mark.parametrize("g, m4", [
    (math.exp, lambda a, b: math.exp(b)),
    (math.sin, lambda a, b: max(abs(math.sin(t)) for t in (a, b, *(
        [math.pi / 2] if a <= math.pi / 2 <= b else [])))),
    (lambda x: x ** 4, lambda a, b: 24.0),
])
def test_simpson1d_bound_holds_on_random_subintervals(g, m4):
    rng = random.Random(5)
    for _ in range(20):
        a = rng.uniform(0, 1.9)
        b = rng.uniform(a + 0.05, 2.0)
        observed, err = simpson1d_deviation(g, a, b)
        assert observed <= simpson1d_bound(m4(a, b), a, b) + err


@given(k=st.floats(0.01, 100), s=st.floats(0.1, 10), q=st.floats(0, 10))
def test_homogeneity_and_area_scaling(k, s, q):
    base = Rectangle(0, 1, 0, 1)
    scaled = Rectangle(0, s, 0, 1)
    assert theorem4_bound(k * q, base) == pytest.approx(k * theorem4_bound(q, base), rel=1e-12, abs=1e-300)
    assert theorem4_bound(q, scaled) == pytest.approx(s * theorem4_bound(q, base), rel=1e-12, abs=1e-300)
    corners = (q, 2 * q, 0.5 * q, q)
    assert theorem3_bound([k * c for c in corners], base) == pytest.approx(
        k * theorem3_bound(corners, base), rel=1e-12, abs=1e-300)
    assert theorem3_bound(corners, scaled) == pytest.approx(s * theorem3_bound(corners, base), rel=1e-12,
                                                            abs=1e-300)


def test_hadamard_examples():
    rep = hadamard_check(Function2D(lambda x, y: x * x + y * y), UNIT)
    assert (rep.midpoint, rep.corner_average) == (0.5, 1.0)
    assert rep.mean == pytest.approx(2 / 3, abs=1e-12)
    assert rep.holds
    rep = hadamard_check(XY.function(), UNIT)
    assert rep.holds
    assert rep.midpoint == pytest.approx(0.25, abs=1e-15)
    assert rep.mean == pytest.approx(0.25, abs=1e-10)
    assert rep.corner_average == pytest.approx(0.25, abs=1e-15)
    rep = hadamard_check(Function2D(lambda x, y: 3.5), Rectangle(-2, 1, 4, 9))
    assert rep.midpoint == rep.corner_average == 3.5
    assert rep.mean == pytest.approx(3.5, abs=1e-12)


def test_hadamard_detects_concave():
    rep = hadamard_check(Function2D(lambda x, y: -(x * x) - y * y), UNIT)
    assert not rep.left_holds and not rep.right_holds


def test_check_theorem_examples():
    rep = check_theorem(EXP_SUM.function(), UNIT, mode="theorem4", sup=E * E)
    assert rep.observed == pytest.approx(3.3562e-7, rel=1e-4)
    assert rep.bound == pytest.approx(0.142536, abs=1e-6)
    assert rep.satisfied
    rep = check_theorem(XY.function(), UNIT, mode="theorem3", corners=(1, 1, 1, 1))
    assert rep.bound == pytest.approx(25 / 5184 * 4)
    assert rep.observed <= 1e-12 and rep.satisfied
    one = Function2D(lambda x, y: 1.0, lambda x, y: 0.0, 0.0)
    for mode in ("theorem3", "theorem4"):
        rep = check_theorem(one, UNIT, mode=mode)
        assert rep.bound == 0.0 and rep.observed <= 1e-15 and rep.satisfied


def test_check_theorem_missing_data():
    with pytest.raises(ContractError):
        check_theorem(Function2D(lambda x, y: x), UNIT, mode="theorem4")
    with pytest.raises(ContractError):
        check_theorem(Function2D(lambda x, y: x), UNIT, mode="theorem3")
    with pytest.raises(DomainError):
        check_theorem(XY.function(), UNIT, mode="theorem5")


def test_check_theorem_can_be_violated():
    # a wrong sup must be caught rather than hidden
    rep = check_theorem(EXP_SUM.function(), UNIT, mode="theorem4", sup=1e-9)
    assert not rep.satisfied and rep.slack < 0
