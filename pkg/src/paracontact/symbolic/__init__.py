"""Exact scalar algebra: parse, differentiate, normalize and zero-test."""

from .derivation import DerivationSpec, UndeclaredSymbolError, derivative_along, differentiate
from .expr import ONE, ZERO, Expr, as_expr
from .numeric import (MissingAssignmentError, ZeroTest, evaluate_numeric, is_zero,
                      surrogate_value)
from .parser import ExprSyntaxError, parse_expr
from .printer import to_string

__all__ = [
    "DerivationSpec", "Expr", "ExprSyntaxError", "MissingAssignmentError", "ONE",
    "UndeclaredSymbolError", "ZERO", "ZeroTest", "as_expr", "derivative_along",
    "differentiate", "evaluate_numeric", "is_zero", "parse_expr", "surrogate_value",
    "to_string",
]
