"""Certified Simpson-type cubature on rectangles.

Two-dimensional Simpson functionals, the kernel remainder identity, a-priori
defect bounds for co-ordinated convex and bounded mixed partials, composite
certificates, and a small expression language with exact mixed partials.
"""

from cosimpson.domain import (
    ContractError,
    DomainError,
    Function2D,
    NumericError,
    Rectangle,
    Tolerances,
    map_s_to_y,
    map_t_to_x,
)
from cosimpson.kernels import kernel, kernel_double_l1, kernel_l1, kernel_weighted_moment
from cosimpson.cubature import (
    DefectReport,
    a_functional,
    defect,
    i_functional,
    q_functional,
    remainder_rhs,
    verify_lemma,
)
from cosimpson.bounds import (
    BoundReport,
    HadamardReport,
    check_theorem,
    hadamard_check,
    simpson1d_bound,
    theorem3_bound,
    theorem4_bound,
)
from cosimpson.composite import Certificate, Grid, certify, make_grid, refine, tightness_scan
from cosimpson.expr import function_from_text, parse

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "Certificate",
    "ContractError",
    "DefectReport",
    "DomainError",
    "Function2D",
    "Grid",
    "HadamardReport",
    "NumericError",
    "Rectangle",
    "Tolerances",
    "a_functional",
    "certify",
    "check_theorem",
    "defect",
    "function_from_text",
    "hadamard_check",
    "i_functional",
    "kernel",
    "kernel_double_l1",
    "kernel_l1",
    "kernel_weighted_moment",
    "make_grid",
    "map_s_to_y",
    "map_t_to_x",
    "parse",
    "q_functional",
    "refine",
    "remainder_rhs",
    "simpson1d_bound",
    "theorem3_bound",
    "theorem4_bound",
    "tightness_scan",
    "verify_lemma",
]
