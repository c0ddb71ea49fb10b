"""Expression language over x and y with real and hyper-dual evaluation."""

from cosimpson.expr.evaluate import (
    ConvexityReport,
    ExprDomainError,
    KinkWarning,
    compile_hyperdual,
    compile_real,
    convexity_probe,
    eval_hyperdual,
    eval_real,
    function_from_text,
)
from cosimpson.expr.hyperdual import HyperDual
from cosimpson.expr.parser import ParseError, parse, to_text

__all__ = [
    "ConvexityReport",
    "ExprDomainError",
    "HyperDual",
    "KinkWarning",
    "ParseError",
    "compile_hyperdual",
    "compile_real",
    "convexity_probe",
    "eval_hyperdual",
    "eval_real",
    "function_from_text",
    "parse",
    "to_text",
]
