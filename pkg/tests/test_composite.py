import math

import pytest

from cosimpson import DomainError, Function2D, Rectangle, certify, make_grid, refine, tightness_scan
from cosimpson.composite import empirical_sup
from cosimpson.cubature import i_functional

from corpus import EXP_SUM, X2Y2, XY

UNIT = Rectangle(0, 1, 0, 1)
E = math.e
ONE = Function2D(lambda x, y: 1.0, lambda x, y: 0.0)


def test_make_grid_examples():
    g = make_grid(UNIT, 1, 1)
    assert g.cells == (UNIT,)
    g = make_grid(Rectangle(0, 2, 0, 1), 2, 1)
    assert g.cells == (Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1))
    g = make_grid(UNIT, 2, 2)
    assert len(g.cells) == 4 and all(c.area == 0.25 for c in g.cells)
    with pytest.raises(DomainError):
        make_grid(UNIT, 0, 1)


@pytest.mark.parametrize("m, n", [(3, 7), (5, 2), (1, 9)])
def test_tiling_exactness(m, n):
    rect = Rectangle(-0.3, 1.9, 0.1, 0.8)
    g = make_grid(rect, m, n)
    assert len(g.cells) == m * n
    assert math.fsum(c.area for c in g.cells) == pytest.approx(rect.area, rel=4e-16)
    xs = sorted({c.a for c in g.cells} | {c.b for c in g.cells})
    assert xs[0] == rect.a and xs[-1] == rect.b and len(xs) == m + 1
    f = EXP_SUM.function()
    total = math.fsum(c.area * i_functional(f, c)[0] for c in g.cells)
    assert total == pytest.approx(rect.area * i_functional(f, rect)[0], abs=1e-9)


def test_certify_examples():
    cert = certify(XY.function(), make_grid(UNIT, 1, 1), sup=1.0)
    assert cert.estimate == pytest.approx(0.25, abs=1e-12)
    assert cert.half_width == pytest.approx(25 / 1296, abs=1e-9)
    assert cert.contains(0.25)
    assert cert.sup_source == "user"

    cert = certify(ONE, make_grid(Rectangle(0, 3, 0, 2), 2, 3))
    assert cert.estimate == pytest.approx(6.0, abs=1e-12)
    assert cert.half_width <= 1e-9
    assert cert.sup_source == "empirical"

    cert = certify(EXP_SUM.function(), make_grid(UNIT, 2, 2))
    assert cert.sup_source == "user"
    assert cert.contains((E - 1) ** 2)


@pytest.mark.parametrize("case", [XY, X2Y2, EXP_SUM], ids=lambda c: c.text)
@pytest.mark.parametrize("mode", ["theorem3", "theorem4"])
def test_enclosure_soundness(case, mode):
    for k in (1, 2, 3, 4):
        cert = certify(case.function(), make_grid(UNIT, k, k), mode=mode)
        assert cert.contains(case.integral(UNIT)), (k, cert.estimate, cert.half_width)


def test_empirical_sup_is_labelled():
    f = Function2D(EXP_SUM.f, EXP_SUM.fxy)
    cert = certify(f, make_grid(UNIT, 2, 2))
    assert cert.sup_source == "empirical"
    assert empirical_sup(f, UNIT) == pytest.approx(E * E)


def test_refine_examples():
    cert = certify(ONE, make_grid(UNIT, 1, 1))
    res = refine(ONE, cert, 1e-3)
    assert res.target_met and len(res.certificate.per_cell) == 1

    cert = certify(XY.function(), make_grid(UNIT, 1, 1), sup=1.0)
    res = refine(XY.function(), cert, 0.01)
    assert res.target_met
    assert len(res.certificate.per_cell) == 2
    assert res.certificate.half_width == pytest.approx(2 * 0.5 * (25 / 1296 * 0.5), rel=1e-9)

    f = EXP_SUM.function()
    cert = certify(f, make_grid(UNIT, 1, 1))
    res = refine(f, cert, 1e-6, max_cells=16)
    assert not res.target_met
    assert len(res.certificate.per_cell) == 16
    assert all(b <= a for a, b in zip(res.history, res.history[1:]))
    assert res.certificate.contains((E - 1) ** 2)


def test_refine_bisects_longer_side_and_worst_cell():
    f = EXP_SUM.function()
    cert = certify(f, make_grid(Rectangle(0, 2, 0, 1), 1, 1))
    res = refine(f, cert, 1e-12, max_cells=2)
    cells = [c.cell for c in res.certificate.per_cell]
    assert cells == [Rectangle(0, 1, 0, 1), Rectangle(1, 2, 0, 1)]
    res = refine(f, res.certificate, 1e-12, max_cells=3)
    # the right cell has the larger sup, so it is split next
    assert [c.cell for c in res.certificate.per_cell][0] == Rectangle(0, 1, 0, 1)


def test_tightness_examples():
    rows = tightness_scan(EXP_SUM.function(), UNIT, [1])
    assert rows[0].ratio == pytest.approx(2.355e-6, rel=1e-3)
    rows = tightness_scan(XY.function(), UNIT, [1, 2, 4])
    assert all(r.ratio <= 1e-10 for r in rows)
    rows = tightness_scan(EXP_SUM.function(), UNIT, [1, 2, 4, 8])
    ratios = [r.ratio for r in rows]
    assert all(b < a for a, b in zip(ratios, ratios[1:])), ratios
    assert all(0 <= r <= 1 for r in ratios)


def test_tightness_reports_violation():
    f = Function2D(EXP_SUM.f, EXP_SUM.fxy, sup_mixed=0.0)
    rows = tightness_scan(f, UNIT, [1])
    assert rows[0].violation and rows[0].ratio == math.inf
