"""Composite certificates over rectangular grids.

Rearranging the defect identity gives, on every cell,

    integral of f over the cell = area * (A - Q) + area * D,

and |D| is bounded by the single-rectangle bounds. Summing over a tiling
gives an integral estimate with a certified half-width. Note the extra area
factor: D is a mean-scale quantity, so a cell's contribution to the
integral error is area * bound(D), which shrinks like area^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from cosimpson.bounds import corner_magnitudes, theorem3_bound, theorem4_bound, MODES
from cosimpson.cubature import a_functional, defect, q_functional
from cosimpson.domain import ContractError, DomainError, Function2D, Rectangle, SupSource, Tolerances

EMPIRICAL_LATTICE = 33
DEFAULT_MAX_CELLS = 4096


@dataclass(frozen=True)
class Grid:
    rect: Rectangle
    m: int
    n: int
    cells: tuple[Rectangle, ...]


def _edges(lo: float, hi: float, k: int) -> list[float]:
    pts = [lo + (hi - lo) * i / k for i in range(k)]
    pts.append(hi)
    return pts


def make_grid(rect: Rectangle, m: int, n: int) -> Grid:
    """Uniform m x n tiling; cells ordered x-major (all y-cells of column 0 first)."""
    if m < 1 or n < 1:
        raise DomainError(f"grid sizes must be >= 1, got {m}x{n}")
    xs = _edges(rect.a, rect.b, m)
    ys = _edges(rect.c, rect.d, n)
    cells = tuple(Rectangle(xs[i], xs[i + 1], ys[j], ys[j + 1]) for i in range(m) for j in range(n))
    return Grid(rect, m, n, cells)


@dataclass(frozen=True)
class CellResult:
    cell: Rectangle
    estimate: float
    bound: float
    oracle_error: float


@dataclass(frozen=True)
class Certificate:
    estimate: float
    half_width: float
    mode: str
    sup_source: Optional[str]
    per_cell: tuple[CellResult, ...]
    tol: Tolerances = field(default=Tolerances(), repr=False, compare=False)
    sup: Optional[SupSource] = field(default=None, repr=False, compare=False)

    @property
    def lower(self) -> float:
        return self.estimate - self.half_width

    @property
    def upper(self) -> float:
        return self.estimate + self.half_width

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def mean_estimate(self) -> float:
        area = math.fsum(c.cell.area for c in self.per_cell)
        return self.estimate / area


def empirical_sup(f: Function2D, cell: Rectangle, lattice: int = EMPIRICAL_LATTICE) -> float:
    """Largest |f_xy| on a lattice x lattice grid of the cell; not a rigorous bound."""
    mixed = f.require_mixed()
    xs = _edges(cell.a, cell.b, lattice - 1)
    ys = _edges(cell.c, cell.d, lattice - 1)
    return max(abs(mixed(x, y)) for x in xs for y in ys)


def _resolve_sup(f: Function2D, cell: Rectangle, sup: Optional[SupSource]) -> tuple[float, str]:
    if sup is not None:
        return (float(sup(cell)) if callable(sup) else float(sup)), "user"
    user = f.sup_on(cell)
    if user is not None:
        return user, "user"
    if f.mixed is None:
        raise ContractError("theorem4 needs a sup of |f_xy| or a mixed-partial evaluator")
    return empirical_sup(f, cell), "empirical"


def _cell_result(f: Function2D, cell: Rectangle, tol: Tolerances, mode: str, sup) -> tuple[CellResult, str | None]:
    q = q_functional(f, cell)
    a_val, a_err = a_functional(f, cell, tol)
    area = cell.area
    source = None
    if mode == "theorem3":
        bound = theorem3_bound(corner_magnitudes(f, cell), cell)
    else:
        sup_val, source = _resolve_sup(f, cell, sup)
        bound = theorem4_bound(sup_val, cell)
    return CellResult(cell, area * (a_val - q), area * bound, area * a_err), source


def _assemble(results: Sequence[CellResult], sources, mode, tol, sup) -> Certificate:
    if mode == "theorem3":
        source = None
    else:
        source = "empirical" if "empirical" in sources else "user"
    half = math.fsum(r.bound for r in results) + math.fsum(r.oracle_error for r in results)
    return Certificate(
        estimate=math.fsum(r.estimate for r in results),
        half_width=half,
        mode=mode,
        sup_source=source,
        per_cell=tuple(results),
        tol=tol,
        sup=sup,
    )


def certify(
    f: Function2D,
    grid: Grid,
    tol: Tolerances = Tolerances(),
    mode: str = "theorem4",
    sup: Optional[SupSource] = None,
) -> Certificate:
    """Integral enclosure of f over grid.rect.

    theorem4 takes the per-cell sup of |f_xy| from ``sup`` (a number valid on
    the whole rectangle, or a callable of the cell), else from
    ``f.sup_mixed``, else from lattice sampling, in which case the
    certificate is labelled ``sup_source='empirical'``.
    """
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")
    results = []
    sources = []
    for cell in grid.cells:
        res, src = _cell_result(f, cell, tol, mode, sup)
        results.append(res)
        sources.append(src)
    return _assemble(results, sources, mode, tol, sup)


@dataclass(frozen=True)
class RefineResult:
    certificate: Certificate
    target_met: bool
    history: tuple[float, ...]


def _bisect(cell: Rectangle) -> tuple[Rectangle, Rectangle]:
    if cell.width >= cell.height:
        mid = cell.mid_x
        return Rectangle(cell.a, mid, cell.c, cell.d), Rectangle(mid, cell.b, cell.c, cell.d)
    mid = cell.mid_y
    return Rectangle(cell.a, cell.b, cell.c, mid), Rectangle(cell.a, cell.b, mid, cell.d)


def refine(
    f: Function2D,
    certificate: Certificate,
    target_half_width: float,
    max_cells: int = DEFAULT_MAX_CELLS,
) -> RefineResult:
    """Bisect the worst cell until the half-width meets the target.

    The worst cell is the one with the largest bound (lowest index on ties);
    it is split across its longer side (x on ties) and its two halves take
    its place in the cell list. Stops at ``max_cells`` and reports the
    target as not met instead of failing.
    """
    if not target_half_width > 0:
        raise DomainError(f"target must be positive, got {target_half_width}")
    cert = certificate
    mode, tol, sup = cert.mode, cert.tol, cert.sup
    results = list(cert.per_cell)
    sources = [cert.sup_source] * len(results)
    history = [cert.half_width]
    while cert.half_width > target_half_width and len(results) < max_cells:
        worst = max(range(len(results)), key=lambda k: (results[k].bound, -k))
        left, right = _bisect(results[worst].cell)
        new = [_cell_result(f, c, tol, mode, sup) for c in (left, right)]
        results[worst:worst + 1] = [r for r, _ in new]
        sources[worst:worst + 1] = [s for _, s in new]
        cert = _assemble(results, sources, mode, tol, sup)
        history.append(cert.half_width)
    return RefineResult(cert, cert.half_width <= target_half_width, tuple(history))


@dataclass(frozen=True)
class TightnessRow:
    n: int
    ratio: float
    max_defect: float
    violation: bool = False


def tightness_scan(
    f: Function2D,
    rect: Rectangle,
    grid_sizes: Sequence[int],
    tol: Tolerances = Tolerances(),
    sup: Optional[SupSource] = None,
) -> list[TightnessRow]:
    """For each n, the largest per-cell ratio |D_cell| / sup-bound_cell on an n x n grid.

    A cell whose bound is zero but whose defect exceeds its oracle error is a
    hypothesis violation: the row gets ratio inf and ``violation=True``.
    """
    rows = []
    for n in grid_sizes:
        grid = make_grid(rect, n, n)
        worst = 0.0
        max_def = 0.0
        violation = False
        for cell in grid.cells:
            rep = defect(f, cell, tol)
            d = abs(rep.defect)
            max_def = max(max_def, d)
            sup_val, _ = _resolve_sup(f, cell, sup)
            bound = theorem4_bound(sup_val, cell)
            if bound == 0.0:
                if d > rep.oracle_error:
                    violation = True
                continue
            worst = max(worst, d / bound)
        rows.append(TightnessRow(n, math.inf if violation else worst, max_def, violation))
    return rows
